// aperim: command-line front end. Every subcommand reads JSON inputs and
// writes one JSON document to stdout (or --out).
//
// Exit codes: 0 success, 1 fuzz campaign with violations, 2 usage, input or
// evaluation errors.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "../io/json_io.hpp"

namespace {

using aperim::io::json;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kUsage = 2;

struct Globals {
  std::uint64_t seed = 42;
  double tolerance = 1e-7;
  int wulff_resolution = 512;
  std::string out;
};

void emit(const Globals& g, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw aperim::Error(aperim::ErrorCode::InvalidArgument, "cannot write " + g.out);
  f << text;
}

void write_file(const fs::path& path, const json& doc) {
  std::ofstream f(path);
  if (!f) throw aperim::Error(aperim::ErrorCode::InvalidArgument, "cannot write " + path.string());
  f << doc.dump(2) << "\n";
}

aperim::BoundOptions bound_options(const Globals& g) {
  aperim::BoundOptions o;
  o.wulff_resolution = g.wulff_resolution;
  o.seed = g.seed;
  return o;
}

aperim::DecompositionSpec read_decomposition(const std::string& path, int dim) {
  if (path.empty()) return aperim::DecompositionSpec::default_spec();
  return aperim::io::decomposition_from_json(aperim::io::read_file(path), dim);
}

struct PairInputs {
  std::string inner, outer, gauge, decomposition;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace aperim;

  CLI::App app{"Anisotropic perimeters of convex polytopes and quantitative monotonicity bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for random draws")->capture_default_str();
  app.add_option("--tolerance", g.tolerance, "Allowed negative margin in fuzz campaigns")->capture_default_str();
  app.add_option("--wulff-resolution", g.wulff_resolution, "Boundary samples for curved Wulff shapes")
      ->check(CLI::Range(3, 1 << 20))
      ->capture_default_str();
  app.add_option("--out", g.out, "Write the JSON result to this path instead of stdout");

  std::string body_path, gauge_path;
  auto* perimeter_cmd = app.add_subcommand("perimeter", "Phi-perimeter of a polytope with per-facet contributions");
  perimeter_cmd->add_option("--body", body_path, "Polytope JSON")->required();
  perimeter_cmd->add_option("--gauge", gauge_path, "Gauge JSON")->required();

  PairInputs pair;
  auto* hausdorff_cmd = app.add_subcommand("hausdorff", "Hausdorff distance of nested polytopes with witnesses");
  hausdorff_cmd->add_option("--inner", pair.inner, "Inner polytope JSON")->required();
  hausdorff_cmd->add_option("--outer", pair.outer, "Outer polytope JSON")->required();

  std::string formula = "theorem";
  auto* bound_cmd = app.add_subcommand("bound", "Lower bound on the perimeter deficit of a nested pair");
  bound_cmd->add_option("--inner", pair.inner, "Inner polytope JSON")->required();
  bound_cmd->add_option("--outer", pair.outer, "Outer polytope JSON")->required();
  bound_cmd->add_option("--gauge", pair.gauge, "Gauge JSON (theorem formula)");
  bound_cmd->add_option("--decomposition", pair.decomposition, "Decomposition JSON (theorem formula)");
  bound_cmd->add_option("--formula", formula, "Formula to evaluate")
      ->check(CLI::IsMember({"theorem", "corollary", "planar", "r3", "all"}))
      ->capture_default_str();

  auto* compare_cmd = app.add_subcommand("compare", "All bound formulas on the same witnesses, with consistency");
  compare_cmd->add_option("--inner", pair.inner, "Inner polytope JSON")->required();
  compare_cmd->add_option("--outer", pair.outer, "Outer polytope JSON")->required();
  compare_cmd->add_option("--gauge", pair.gauge, "Gauge JSON (default euclidean)");
  compare_cmd->add_option("--decomposition", pair.decomposition, "Decomposition JSON");

  std::vector<double> nu;
  std::string base_path;
  double height = 1.0;
  auto* cone_cmd = app.add_subcommand("cone-lemma", "Lateral integral of a cone against the Wulff bound");
  cone_cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  cone_cmd->add_option("--nu", nu, "Unit direction (n numbers)")->required();
  cone_cmd->add_option("--base", base_path, "Base polytope JSON in the frame of nu (dimension n-1)")->required();
  cone_cmd->add_option("--h", height, "Apex depth")->capture_default_str();
  cone_cmd->add_option("--gauge", gauge_path, "Gauge JSON on R^n")->required();
  cone_cmd->add_option("--decomposition", pair.decomposition, "Decomposition JSON");

  std::optional<int> resolution;
  double depth = 1.0;
  std::string dir = ".";
  auto* sharp_cmd = app.add_subcommand("sharp-pair", "Prism over a Wulff shape and its union with a cone; writes A.json and B.json");
  sharp_cmd->add_option("--nu", nu, "Unit direction (n numbers)")->required();
  sharp_cmd->add_option("--gauge", gauge_path, "Gauge JSON on R^(n-1) whose Wulff shape is the cross-section")->required();
  sharp_cmd->add_option("--resolution", resolution, "Boundary samples for a curved Wulff shape (default --wulff-resolution)");
  sharp_cmd->add_option("--depth", depth, "Cone depth")->capture_default_str();
  sharp_cmd->add_option("--dir", dir, "Directory for A.json and B.json")->capture_default_str();

  int kmax = 16;
  auto* approx_cmd = app.add_subcommand("approx", "Grid-cube polytope approximation and its convergence certificates");
  approx_cmd->add_option("--body", body_path, "Polytope JSON")->required();
  approx_cmd->add_option("--kmax", kmax, "Largest grid refinement")->check(CLI::Range(1, 4096))->capture_default_str();

  int dim = 3;
  long long cases = 1000;
  std::string config_path;
  bool timing = false;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Random nested pairs checked against every inequality");
  auto* dim_opt = fuzz_cmd->add_option("--dim", dim, "Dimension")->check(CLI::Range(2, 6));
  auto* cases_opt = fuzz_cmd->add_option("--cases", cases, "Number of cases")->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--config", config_path, "FuzzConfig JSON; command-line flags take precedence");
  fuzz_cmd->add_flag("--timing", timing, "Include wall-clock timing (makes the report run-dependent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*perimeter_cmd) {
      const ConvexPolytope p = io::polytope_from_json(io::read_file(body_path));
      const Gauge phi = io::gauge_from_json(io::read_file(gauge_path), p.dim());
      emit(g, io::to_json(phi_perimeter(p, phi)));
    } else if (*hausdorff_cmd) {
      const ConvexPolytope a = io::polytope_from_json(io::read_file(pair.inner));
      const ConvexPolytope b = io::polytope_from_json(io::read_file(pair.outer));
      const HausdorffWitness w = hausdorff_nested(a, b);
      emit(g, {{"h", w.h}, {"a", io::to_json(w.a)}, {"b", io::to_json(w.b)}});
    } else if (*bound_cmd || *compare_cmd) {
      const ConvexPolytope a = io::polytope_from_json(io::read_file(pair.inner));
      const ConvexPolytope b = io::polytope_from_json(io::read_file(pair.outer));
      const int n = a.dim();
      const bool needs_gauge = *bound_cmd && (formula == "theorem" || formula == "all");
      if (needs_gauge && pair.gauge.empty())
        throw Error(ErrorCode::InvalidArgument, "--gauge is required for the theorem formula");
      const Gauge phi = pair.gauge.empty() ? Gauge::euclidean(n) : io::gauge_from_json(io::read_file(pair.gauge), n);
      const DecompositionSpec spec = read_decomposition(pair.decomposition, n);
      const BoundOptions options = bound_options(g);
      if (*compare_cmd) {
        emit(g, io::to_json(compare_bounds(a, b, phi, spec, options)));
      } else if (formula == "theorem") {
        emit(g, io::to_json(theorem_bound(a, b, phi, spec, options)));
      } else if (formula == "corollary") {
        emit(g, io::to_json(corollary_bound(a, b)));
      } else if (formula == "planar") {
        emit(g, io::to_json(planar_bound(a, b)));
      } else if (formula == "r3") {
        emit(g, io::to_json(r3_bound(a, b)));
      } else {
        const CutGeometry cut = cut_geometry(a, b);
        const double pa = a.boundary_measure(), pb = b.boundary_measure();
        json doc = {{"theorem", io::to_json(theorem_bound(a, b, phi, spec, options))},
                    {"corollary", io::to_json(corollary_bound(cut, pa, pb))}};
        doc["planar"] = n == 2 ? io::to_json(planar_bound(cut, pa, pb)) : json(nullptr);
        doc["r3"] = n == 3 ? io::to_json(r3_bound(cut, pa, pb)) : json(nullptr);
        emit(g, doc);
      }
    } else if (*cone_cmd) {
      const Vector direction = io::vector_from_json(json(nu));
      const int n = static_cast<int>(direction.size());
      EmbeddedPolytope base;
      base.frame = Frame::householder(direction / direction.norm());
      base.body = io::polytope_from_json(io::read_file(base_path));
      if (base.body->dim() != n - 1)
        throw Error(ErrorCode::DimensionMismatch, "base must have dimension " + std::to_string(n - 1));
      base.support = base.body->vertices();
      const Gauge phi = io::gauge_from_json(io::read_file(gauge_path), n);
      const DecompositionSpec spec = read_decomposition(pair.decomposition, n);
      emit(g, io::to_json(cone_lemma_check(base.frame.normal(), base, height, phi, spec)));
    } else if (*sharp_cmd) {
      Vector direction = io::vector_from_json(json(nu));
      direction /= direction.norm();
      const int n = static_cast<int>(direction.size());
      const Gauge phi = io::gauge_from_json(io::read_file(gauge_path), n - 1);
      const WulffShape w = wulff_shape(phi, direction, resolution.value_or(g.wulff_resolution));
      const SharpPair sp = sharp_pair(direction, w, depth);
      fs::create_directories(dir);
      const fs::path a_path = fs::path(dir) / "A.json";
      const fs::path b_path = fs::path(dir) / "B.json";
      write_file(a_path, io::to_json(sp.inner));
      write_file(b_path, io::to_json(sp.outer));
      emit(g, {{"inner", a_path.string()},
               {"outer", b_path.string()},
               {"wulff", io::to_json(w)},
               {"depth", depth}});
    } else if (*approx_cmd) {
      const ConvexPolytope e = io::polytope_from_json(io::read_file(body_path));
      emit(g, io::to_json(convergence_suite(e, kmax)));
    } else if (*fuzz_cmd) {
      FuzzConfig cfg;
      cfg.dim = dim;
      cfg.cases = cases;
      cfg.seed = g.seed;
      cfg.tolerance = g.tolerance;
      if (!config_path.empty()) {
        cfg = io::fuzz_config_from_json(io::read_file(config_path), cfg);
        if (*dim_opt) cfg.dim = dim;
        if (*cases_opt) cfg.cases = cases;
        if (app.count("--seed")) cfg.seed = g.seed;
        if (app.count("--tolerance")) cfg.tolerance = g.tolerance;
      }
      cfg.record_timing = timing;
      const CampaignReport rep = run_campaign(cfg);
      emit(g, io::to_json(rep));
      return rep.passed() ? kOk : kViolations;
    }
  } catch (const Error& e) {
    std::cerr << "aperim: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "aperim: invalid JSON input: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "aperim: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
