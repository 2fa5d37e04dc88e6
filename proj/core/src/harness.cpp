#include "aperim/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "aperim/bounds.hpp"
#include "aperim/cones.hpp"
#include "aperim/perimeter.hpp"

namespace aperim {

std::string_view to_string(PairMode mode) {
  switch (mode) {
    case PairMode::Interior: return "interior";
    case PairMode::Cuts: return "cuts";
    case PairMode::Spike: return "spike";
  }
  return "unknown";
}

namespace {

constexpr int kMaxAttempts = 100;

// Hull of ball points stretched per axis and shifted off the origin.
ConvexPolytope random_body(int dim, Rng& rng, const GeneratorParams& params) {
  const int lo = std::max(dim + 1, params.min_points);
  const int hi = std::max(lo, params.max_points);
  const int count = lo + rng.below(hi - lo + 1);
  Vector stretch(dim);
  for (int i = 0; i < dim; ++i) stretch[i] = rng.uniform(0.3, 1.5);
  const Vector offset = rng.in_box(dim, -0.5, 0.5);
  PointList pts;
  for (int i = 0; i < count; ++i) pts.push_back(offset + stretch.cwiseProduct(rng.in_ball(dim)));
  return ConvexPolytope::hull(pts);
}

ConvexPolytope interior_hull(const ConvexPolytope& b, Rng& rng) {
  const int n = b.dim();
  const PointList& verts = b.vertices();
  const int m = n + 1 + rng.below(6);
  PointList pts;
  for (int i = 0; i < m; ++i) {
    // Cubed exponential weights pull points toward single vertices of B.
    Vector x = Vector::Zero(n);
    double total = 0.0;
    for (const Vector& v : verts) {
      double u = rng.uniform();
      while (u <= 0.0) u = rng.uniform();
      const double w = std::pow(-std::log(u), 3.0);
      x += w * v;
      total += w;
    }
    pts.push_back(x / total);
  }
  if (rng.bernoulli(0.3)) pts.push_back(verts[rng.below(static_cast<int>(verts.size()))]);
  return ConvexPolytope::hull(pts);
}

ConvexPolytope cut_body(const ConvexPolytope& b, Rng& rng) {
  ConvexPolytope a = b;
  const int cuts = 1 + rng.below(3);
  for (int k = 0; k < cuts; ++k) {
    const Vector u = rng.on_sphere(b.dim());
    const Vector& c = a.centroid();
    double top = -std::numeric_limits<double>::infinity();
    for (const Vector& v : a.vertices()) top = std::max(top, u.dot(v));
    const double level = u.dot(c) + rng.uniform(-0.3, 0.6) * (top - u.dot(c));
    a = intersect_halfspace(a, Hyperplane::through(u, c + (level - u.dot(c)) * u), Side::Below);
  }
  return a;
}

ConvexPolytope spiked(const ConvexPolytope& a, Rng& rng) {
  const int n = a.dim();
  const Vector u = rng.on_sphere(n);
  const Vector& c = a.centroid();
  double top = -std::numeric_limits<double>::infinity();
  for (const Vector& v : a.vertices()) top = std::max(top, u.dot(v));
  Vector jitter = 0.3 * a.diameter() * rng.gaussian(n);
  jitter -= u.dot(jitter) * u;
  const double reach = top - u.dot(c) + rng.uniform(0.02, 1.0) * a.diameter();
  PointList pts = a.vertices();
  pts.push_back(c + reach * u + jitter);
  return ConvexPolytope::hull(pts);
}

double rel_limit(double tol, double scale) { return -tol * std::max(1.0, std::abs(scale)); }

Check identity_check(std::string name, std::string gauge, double x, double y, double rel) {
  return {std::move(name), std::move(gauge), -std::abs(x - y), -rel * std::max(std::abs(x), std::abs(y))};
}

const std::vector<std::pair<double, std::string>>& slack_buckets() {
  static const std::vector<std::pair<double, std::string>> buckets = {
      {0.0, "<0"},         {1e-9, "[0,1e-9)"},   {1e-6, "[1e-9,1e-6)"}, {1e-3, "[1e-6,1e-3)"},
      {0.1, "[1e-3,0.1)"}, {0.5, "[0.1,0.5)"},   {INFINITY, ">=0.5"},
  };
  return buckets;
}

}  // namespace

NestedPair random_nested_pair(int dim, Rng& rng, const GeneratorParams& params) {
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorCode::InvalidArgument, "pair dimension must be in 1..6");
  const double u = rng.uniform();
  const PairMode mode = u < params.spike_probability ? PairMode::Spike
                        : u < params.spike_probability + params.cut_probability ? PairMode::Cuts
                                                                                : PairMode::Interior;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    try {
      NestedPair pair;
      pair.mode = mode;
      pair.attempts = attempt;
      switch (mode) {
        case PairMode::Interior:
          pair.outer = random_body(dim, rng, params);
          pair.inner = interior_hull(pair.outer, rng);
          break;
        case PairMode::Cuts:
          pair.outer = random_body(dim, rng, params);
          pair.inner = cut_body(pair.outer, rng);
          break;
        case PairMode::Spike:
          pair.inner = random_body(dim, rng, params);
          pair.outer = spiked(pair.inner, rng);
          break;
      }
      if (contains(pair.outer, pair.inner)) return pair;
    } catch (const Error&) {
      // degenerate draw; try again
    }
  }
  throw Error(ErrorCode::GenerationFailed, "no non-degenerate nested pair after 100 attempts");
}

NestedPair random_nested_pair(int dim, std::uint64_t seed, const GeneratorParams& params) {
  Rng rng(seed);
  return random_nested_pair(dim, rng, params);
}

Gauge asymmetric_simplex_gauge(int dim) {
  if (dim < 1 || dim > 6) throw Error(ErrorCode::InvalidArgument, "simplex gauge dimension must be in 1..6");
  PointList pts;
  Vector last = Vector::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    Vector v = Vector::Zero(dim);
    v[i] = 1.0 + 0.25 * i;
    pts.push_back(v);
    last[i] = -(0.6 - 0.1 * i);
  }
  pts.push_back(last);
  return Gauge::support(ConvexPolytope::hull(pts));
}

std::vector<Gauge> standard_gauges(int dim) {
  return {Gauge::euclidean(dim), Gauge::scaled(dim, 2.0), asymmetric_simplex_gauge(dim), Gauge::lp(dim, 1.0)};
}

CaseResult run_case(const FuzzConfig& config, std::uint64_t id) {
  const int n = config.dim;
  const std::vector<Gauge> gauges = config.gauges.empty() ? standard_gauges(n) : config.gauges;
  const double tol = config.tolerance;
  CaseResult res;
  res.id = id;
  try {
    Rng rng = Rng::split(config.seed, id);
    const NestedPair pair = random_nested_pair(n, rng, config.generator);
    res.mode = pair.mode;
    const ConvexPolytope& a = pair.inner;
    const ConvexPolytope& b = pair.outer;
    const CutGeometry cut = cut_geometry(a, b);
    res.h = cut.witness.h;

    // Pieces shared by all gauges: B ∩ H and the cone over the slice with apex b.
    std::optional<ConvexPolytope> b_cut;
    std::optional<Cone> tip;
    if (cut.halfspace && config.check_chain) b_cut = intersect_halfspace(b, cut.halfspace->plane, Side::Below);
    if (cut.slice && !cut.slice->degenerate() && (config.check_cones || config.check_chain))
      tip = cone(cut.witness.b, *cut.slice);

    // The cone over the slice with apex b lies in the cut-off part B \ H.
    std::optional<ConvexPolytope> b_tip;
    if (tip && config.check_chain) {
      b_tip = intersect_halfspace(b, cut.halfspace->plane, Side::Above);
      double worst = -std::numeric_limits<double>::infinity();
      for (const Vector& v : tip->solid.vertices()) worst = std::max(worst, b_tip->max_violation(v));
      res.checks.push_back({"cone_containment", "", -worst, rel_limit(tol, b.diameter())});
    }

    for (const Gauge& phi : gauges) {
      if (phi.dim() != n) throw Error(ErrorCode::DimensionMismatch, "fuzz gauge dimension");
      const std::string name = phi.name();
      const double pa = perimeter(a, phi);
      const double pb = perimeter(b, phi);
      res.checks.push_back({"monotonicity", name, pb - pa, rel_limit(tol, pb)});

      const BoundReport rep = theorem_bound(cut, pa, pb, phi);
      res.checks.push_back({"theorem", name, rep.slack, rel_limit(tol, rep.deficit)});
      // A zero deficit (possible for polyhedral gauges) counts as slack 0 when the
      // theorem check itself holds.
      const bool holds = rep.slack >= rel_limit(tol, rep.deficit);
      res.relative_slack.push_back(rep.deficit > 0.0 ? rep.slack / rep.deficit : (holds ? 0.0 : -1.0));
      if (rep.slice_measure > 0.0 && rep.r > 0.0)
        res.checks.push_back(identity_check("slice_measure", name, std::pow(rep.r, n - 1) * rep.wulff_measure,
                                            rep.slice_measure, 1e-9));

      if (b_cut) {
        const double pbh = perimeter(*b_cut, phi);
        res.checks.push_back({"halfspace_monotonicity", name, pbh - pa, rel_limit(tol, pbh)});
        if (tip) {
          const double lateral = lateral_integral(*tip, phi);
          const double cut_off = pb - pbh + phi(cut.halfspace->nu_h) * cut.slice_measure;
          res.checks.push_back({"cut_off_part", name, cut_off - lateral, rel_limit(tol, lateral)});
          const double p_tip = perimeter(tip->solid, phi);
          const double p_b_tip = perimeter(*b_tip, phi);
          res.checks.push_back({"cone_perimeter", name, p_b_tip - p_tip, rel_limit(tol, p_b_tip)});
        }
      }
      if (tip && config.check_cones) {
        const ConeLemmaResult cl = cone_lemma_check(*tip, phi);
        res.checks.push_back({"cone_lemma", name, cl.margin, rel_limit(tol, cl.lhs)});
        res.checks.push_back(identity_check("cone_step_one", name, cl.lhs, cl.step_one, 1e-9));
        res.checks.push_back(identity_check("cone_base_heights", name, cl.base_heights, cl.base_measure, 1e-9));
      }
    }

    const double pa_e = a.boundary_measure();
    const double pb_e = b.boundary_measure();
    const BoundReport cor = corollary_bound(cut, pa_e, pb_e);
    const BoundReport thm = theorem_bound(cut, pa_e, pb_e, Gauge::euclidean(n));
    res.checks.push_back(identity_check("corollary_identity", "", cor.bound, thm.bound, 1e-10));
    if (n == 2) {
      const BoundReport pl = planar_bound(cut, pa_e, pb_e);
      res.checks.push_back(identity_check("planar_identity", "", pl.bound, cor.bound, 1e-10));
    } else if (n == 3) {
      const BoundReport r3 = r3_bound(cut, pa_e, pb_e);
      res.checks.push_back({"r3_dominance", "", cor.bound - r3.bound, -1e-10 * std::max(1.0, r3.bound)});
    }
  } catch (const Error& e) {
    res.error = e.what();
  }
  return res;
}

CampaignReport run_campaign(const FuzzConfig& config) {
  if (config.cases < 0) throw Error(ErrorCode::InvalidArgument, "case count must be non-negative");
  if (config.dim < 2 || config.dim > kMaxDim) throw Error(ErrorCode::InvalidArgument, "fuzz dimension must be in 2..6");
  FuzzConfig cfg = config;
  if (cfg.gauges.empty()) cfg.gauges = standard_gauges(cfg.dim);

  CampaignReport rep;
  rep.dim = cfg.dim;
  rep.cases = cfg.cases;
  rep.seed = cfg.seed;
  rep.tolerance = cfg.tolerance;
  for (const Gauge& g : cfg.gauges) rep.gauges.push_back(g.name());

  const auto& buckets = slack_buckets();
  std::vector<long long> counts(buckets.size(), 0);
  std::map<std::string, InequalityStats> stats;
  const auto start = std::chrono::steady_clock::now();

  for (long long i = 0; i < cfg.cases; ++i) {
    const auto id = static_cast<std::uint64_t>(i);
    const CaseResult cr = run_case(cfg, id);
    ++rep.modes[static_cast<int>(cr.mode)];
    if (!cr.error.empty()) {
      rep.violations.push_back({id, "", "evaluation", 0.0, 0.0, cr.error});
      continue;
    }
    for (const Check& c : cr.checks) {
      ++rep.checks;
      auto [it, fresh] = stats.try_emplace(c.inequality);
      InequalityStats& s = it->second;
      if (fresh || c.margin < s.min_margin) {
        s.inequality = c.inequality;
        s.min_margin = c.margin;
        s.worst_case = id;
        s.worst_gauge = c.gauge;
      }
      ++s.checked;
      if (!c.holds()) rep.violations.push_back({id, c.gauge, c.inequality, c.margin, c.limit, ""});
    }
    for (double x : cr.relative_slack) {
      std::size_t k = 0;
      while (k + 1 < buckets.size() && !(x < buckets[k].first)) ++k;
      ++counts[k];
    }
  }

  rep.stats.reserve(stats.size());
  for (auto& [name, s] : stats) rep.stats.push_back(std::move(s));
  rep.slack_histogram.reserve(buckets.size());
  for (std::size_t i = 0; i < buckets.size(); ++i) rep.slack_histogram.emplace_back(buckets[i].second, counts[i]);
  if (cfg.record_timing) {
    rep.timed = true;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.cases_per_second = rep.seconds > 0.0 ? cfg.cases / rep.seconds : 0.0;
  }
  return rep;
}

}  // namespace aperim
