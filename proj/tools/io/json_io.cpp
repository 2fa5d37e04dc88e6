#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace aperim::io {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

json optional_number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    bad(path.string() + ": malformed JSON: " + e.what());
  }
}

Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("expected a non-empty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], "coordinate");
  return v;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

ConvexPolytope polytope_from_json(const json& j) {
  const json& verts = field(j, "vertices");
  if (!verts.is_array() || verts.empty()) bad("\"vertices\" must be a non-empty array");
  PointList pts;
  for (const json& v : verts) pts.push_back(vector_from_json(v));
  const int dim = j.contains("dim") ? static_cast<int>(number(j["dim"], "dim")) : static_cast<int>(pts[0].size());
  for (const Vector& p : pts)
    if (p.size() != dim) throw Error(ErrorCode::DimensionMismatch, "vertex dimension differs from \"dim\"");
  return convex_hull(pts, dim);
}

json to_json(const ConvexPolytope& p) {
  json verts = json::array();
  for (const Vector& v : p.vertices()) verts.push_back(to_json(v));
  return {{"dim", p.dim()}, {"vertices", verts}};
}

Hyperplane hyperplane_from_json(const json& j) {
  const Vector n = vector_from_json(field(j, "normal"));
  const double len = n.norm();
  if (!(len > 0.0)) bad("hyperplane normal is zero");
  return {n / len, number(field(j, "offset"), "offset") / len};
}

json to_json(const Hyperplane& h) { return {{"normal", to_json(h.normal)}, {"offset", h.offset}}; }

Gauge gauge_from_json(const json& j, int dim) {
  const json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) bad("gauge \"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (j.contains("dim") && static_cast<int>(number(j["dim"], "dim")) != dim)
    throw Error(ErrorCode::DimensionMismatch, "gauge dimension " + j["dim"].dump() + ", expected " + std::to_string(dim));
  if (kind == "euclidean") return Gauge::euclidean(dim);
  if (kind == "scaled") return Gauge::scaled(dim, number(field(j, "lambda"), "lambda"));
  if (kind == "lp") {
    const json& p = field(j, "p");
    if (p.is_string() && (p == "inf" || p == "infinity")) return Gauge::lp(dim, INFINITY);
    return Gauge::lp(dim, number(p, "p"));
  }
  if (kind == "support") {
    Gauge g = Gauge::support(polytope_from_json(field(j, "K")));
    if (g.dim() != dim)
      throw Error(ErrorCode::DimensionMismatch, "support body has dimension " + std::to_string(g.dim()) +
                                                    ", expected " + std::to_string(dim));
    return g;
  }
  bad("unknown gauge kind \"" + kind + "\"");
}

json to_json(const Gauge& g) {
  switch (g.kind()) {
    case Gauge::Kind::Euclidean: return {{"kind", "euclidean"}, {"dim", g.dim()}};
    case Gauge::Kind::Scaled: return {{"kind", "scaled"}, {"dim", g.dim()}, {"lambda", g.lambda()}};
    case Gauge::Kind::Lp:
      return {{"kind", "lp"}, {"dim", g.dim()}, {"p", std::isfinite(g.p()) ? json(g.p()) : json("inf")}};
    case Gauge::Kind::Support: return {{"kind", "support"}, {"dim", g.dim()}, {"K", to_json(g.body())}};
  }
  return nullptr;
}

DecompositionSpec decomposition_from_json(const json& j, int dim) {
  if (j.is_object() && j.contains("kind")) {
    if (j["kind"] != "default") bad("decomposition kind must be \"default\" or a {g, phi} pair");
    return DecompositionSpec::default_spec();
  }
  const json& g = field(j, "g");
  if (field(g, "kind") != "conic") bad("only conic g is supported in decomposition JSON");
  const double c = number(field(g, "c"), "c");
  if (!(c > 0.0)) bad("conic c must be positive");
  return DecompositionSpec::structured(GPair::conic(c), gauge_from_json(field(j, "phi"), dim - 1));
}

json to_json(const EmbeddedPolytope& e) {
  json out = {{"ambient_dim", e.ambient_dim()},
              {"origin", to_json(e.frame.origin())},
              {"normal", to_json(e.frame.normal())},
              {"degenerate", e.degenerate()},
              {"measure", e.measure()}};
  json verts = json::array();
  if (e.body)
    for (const Vector& v : e.body->vertices()) verts.push_back(to_json(v));
  out["vertices"] = verts;
  return out;
}

json to_json(const WulffShape& w) {
  json out = to_json(w.body);
  out["measure"] = w.measure;
  out["exact"] = w.exact;
  out["body_exact"] = w.body_exact;
  out["resolution"] = w.resolution;
  return out;
}

json to_json(const PerimeterValue& v) {
  json contributions = json::array();
  for (const auto& [facet, value] : v.contributions) contributions.push_back({{"facet", facet}, {"value", value}});
  return {{"value", v.value}, {"gauge", v.gauge}, {"contributions", contributions}};
}

json to_json(const HausdorffWitness& w) {
  return {{"h", w.h}, {"a", to_json(w.a)}, {"b", to_json(w.b)}, {"b_vertex", w.b_vertex}};
}

json to_json(const HalfspaceWitness& w) {
  return {{"plane", to_json(w.plane)}, {"nu_h", to_json(w.nu_h)}};
}

json to_json(const BoundReport& r) {
  json out = {{"formula", r.formula},
              {"gauge", r.gauge},
              {"decomposition", r.decomposition},
              {"dim", r.dim},
              {"h", r.h},
              {"slice_measure", r.slice_measure},
              {"slice_is_face", r.slice_is_face},
              {"r", r.r},
              {"wulff_measure", r.wulff_measure},
              {"wulff_measure_lower", r.wulff_measure_lower},
              {"wulff_measure_upper", r.wulff_measure_upper},
              {"wulff_exact", r.wulff_exact},
              {"g_value", r.g_value},
              {"phi_nu", r.phi_nu},
              {"bound", r.bound},
              {"bound_upper", r.bound_upper},
              {"perimeter_inner", r.perimeter_inner},
              {"perimeter_outer", r.perimeter_outer},
              {"deficit", r.deficit},
              {"slack", r.slack},
              {"reason", std::string(to_string(r.reason))},
              {"witness", to_json(r.witness)}};
  out["d"] = r.d ? json(*r.d) : json(nullptr);
  out["halfspace"] = r.halfspace ? to_json(*r.halfspace) : json(nullptr);
  return out;
}

json to_json(const BoundComparison& c) {
  json out = {{"theorem", to_json(c.theorem)}, {"corollary", to_json(c.corollary)}};
  out["planar"] = c.planar ? to_json(*c.planar) : json(nullptr);
  out["r3"] = c.r3 ? to_json(*c.r3) : json(nullptr);
  out["consistent"] = c.consistent;
  out["ratio"] = optional_number(c.ratio);
  return out;
}

json to_json(const ConeLemmaResult& r) {
  return {{"lhs", r.lhs},
          {"rhs", r.rhs},
          {"margin", r.margin},
          {"step_one", r.step_one},
          {"base_heights", r.base_heights},
          {"base_measure", r.base_measure},
          {"wulff_measure", r.wulff_measure},
          {"r", r.r}};
}

json to_json(const ApproxItem& item) {
  return {{"k", item.k},
          {"lambda", item.lambda},
          {"vol_gap", item.vol_gap},
          {"perim", item.perim},
          {"perim_gap", item.perim_gap},
          {"cells", item.cells},
          {"vertices", item.polytope.vertices().size()}};
}

json to_json(const ConvergenceTable& t) {
  json items = json::array();
  for (const ApproxItem& item : t.items) items.push_back(to_json(item));
  return {{"items", items},
          {"vol_gap_decreased", t.vol_gap_decreased},
          {"perim_gap_decreased", t.perim_gap_decreased},
          {"vol_constant", t.vol_constant},
          {"perim_constant", t.perim_constant},
          {"vol_rate", optional_number(t.vol_rate)},
          {"perim_rate", optional_number(t.perim_rate)}};
}

json to_json(const CampaignReport& r) {
  json violations = json::array();
  for (const Violation& v : r.violations)
    violations.push_back({{"case", v.case_id},
                          {"gauge", v.gauge},
                          {"inequality", v.inequality},
                          {"margin", v.margin},
                          {"limit", v.limit},
                          {"detail", v.detail}});
  json stats = json::array();
  for (const InequalityStats& s : r.stats)
    stats.push_back({{"inequality", s.inequality},
                     {"checked", s.checked},
                     {"min_margin", s.min_margin},
                     {"worst_case", s.worst_case},
                     {"worst_gauge", s.worst_gauge}});
  json histogram = json::array();
  for (const auto& [bucket, count] : r.slack_histogram) histogram.push_back({{"bucket", bucket}, {"count", count}});
  json modes = json::object();
  for (int m = 0; m < 3; ++m) modes[std::string(to_string(static_cast<PairMode>(m)))] = r.modes[m];
  json out = {{"dim", r.dim},
              {"cases", r.cases},
              {"seed", r.seed},
              {"tolerance", r.tolerance},
              {"gauges", r.gauges},
              {"checks", r.checks},
              {"modes", modes},
              {"passed", r.passed()},
              {"violations", violations},
              {"stats", stats},
              {"slack_histogram", histogram}};
  if (r.timed) out["timing"] = {{"seconds", r.seconds}, {"cases_per_second", r.cases_per_second}};
  return out;
}

FuzzConfig fuzz_config_from_json(const json& j, FuzzConfig base) {
  if (!j.is_object()) bad("fuzz config must be an object");
  if (j.contains("dim")) base.dim = static_cast<int>(number(j["dim"], "dim"));
  if (j.contains("cases")) base.cases = static_cast<long long>(number(j["cases"], "cases"));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("seed must be a non-negative integer");
    base.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerance")) base.tolerance = number(j["tolerance"], "tolerance");
  if (j.contains("check_cones")) base.check_cones = j["check_cones"].get<bool>();
  if (j.contains("check_chain")) base.check_chain = j["check_chain"].get<bool>();
  if (j.contains("generator")) {
    const json& g = j["generator"];
    if (g.contains("min_points")) base.generator.min_points = static_cast<int>(number(g["min_points"], "min_points"));
    if (g.contains("max_points")) base.generator.max_points = static_cast<int>(number(g["max_points"], "max_points"));
    if (g.contains("spike_probability"))
      base.generator.spike_probability = number(g["spike_probability"], "spike_probability");
    if (g.contains("cut_probability")) base.generator.cut_probability = number(g["cut_probability"], "cut_probability");
    const double ps = base.generator.spike_probability, pc = base.generator.cut_probability;
    if (ps < 0.0 || pc < 0.0 || ps + pc > 1.0) bad("generator probabilities must be non-negative and sum to at most 1");
  }
  if (j.contains("gauges")) {
    if (!j["gauges"].is_array()) bad("\"gauges\" must be an array");
    base.gauges.clear();
    for (const json& g : j["gauges"]) base.gauges.push_back(gauge_from_json(g, base.dim));
  }
  return base;
}

}  // namespace aperim::io
