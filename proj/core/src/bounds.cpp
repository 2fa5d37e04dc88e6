#include "aperim/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "aperim/perimeter.hpp"
#include "aperim/wulff.hpp"

namespace aperim {

namespace {

constexpr double kIdentityTol = 1e-10;

BoundReport base_report(const CutGeometry& cut, std::string formula, double p_inner, double p_outer) {
  BoundReport rep;
  rep.formula = std::move(formula);
  rep.dim = cut.dim;
  rep.h = cut.witness.h;
  rep.slice_measure = cut.slice_measure;
  rep.perimeter_inner = p_inner;
  rep.perimeter_outer = p_outer;
  rep.deficit = p_outer - p_inner;
  rep.witness = cut.witness;
  rep.halfspace = cut.halfspace;
  rep.slice_is_face = cut.slice_is_face;
  if (!cut.halfspace) rep.reason = BoundReason::ZeroDistance;
  return rep;
}

void finish(BoundReport& rep) {
  rep.slack = rep.deficit - rep.bound;
  if (rep.reason == BoundReason::None && rep.dim >= 3 && rep.slice_measure == 0.0) rep.reason = BoundReason::DegenerateSlice;
}

// r with r^(n-1) w = s.
double radius_for(double s, double w, int n) { return s > 0.0 ? std::pow(s / w, 1.0 / (n - 1)) : 0.0; }

// g(h, r) - phi_nu r, in a cancellation-free form for conic g:
// c sqrt(h^2 + r^2) - p r = (c^2 h^2 + (c - p)(c + p) r^2) / (c sqrt(h^2 + r^2) + p r).
double excess(const GPair& g, double h, double r, double phi_nu) {
  if (!g.is_conic()) return g(h, r) - phi_nu * r;
  const double c = g.c();
  const double den = c * std::hypot(h, r) + phi_nu * r;
  if (!(den > 0.0)) return 0.0;
  return (c * c * h * h + (c - phi_nu) * (c + phi_nu) * r * r) / den;
}

}  // namespace

std::string_view to_string(BoundReason reason) {
  switch (reason) {
    case BoundReason::None: return "none";
    case BoundReason::ZeroDistance: return "zero_distance";
    case BoundReason::DegenerateSlice: return "degenerate_slice";
    case BoundReason::Clipped: return "clipped";
  }
  return "unknown";
}

CutGeometry cut_geometry(const ConvexPolytope& a, const ConvexPolytope& b) {
  CutGeometry cut;
  cut.dim = b.dim();
  cut.witness = hausdorff_nested(a, b);
  if (!(cut.witness.h > 0.0)) return cut;
  cut.halfspace = halfspace_witness(cut.witness, a);
  // Slice with the plane written in terms of nu_H so that the frame is the
  // Householder frame of nu_H, the one a decomposition's phi is read in.
  Hyperplane plane;
  plane.normal = cut.halfspace->nu_h;
  plane.offset = plane.normal.dot(cut.witness.a);
  cut.slice = slice(b, plane, cut.witness.a);
  cut.slice_measure = cut.slice->measure();
  const double tol = b.tolerance();
  bool below = false, above = false;
  for (const Vector& v : b.vertices()) {
    const double s = plane.signed_distance(v);
    below = below || s < -tol;
    above = above || s > tol;
  }
  cut.slice_is_face = !(below && above);
  return cut;
}

BoundReport theorem_bound(const CutGeometry& cut, double p_inner, double p_outer, const Gauge& phi,
                          const DecompositionSpec& spec, const BoundOptions& options) {
  if (phi.dim() != cut.dim) throw Error(ErrorCode::DimensionMismatch, "gauge dimension differs from the bodies");
  if (cut.dim < 2) throw Error(ErrorCode::InvalidArgument, "the estimate needs n >= 2");
  BoundReport rep = base_report(cut, "theorem", p_inner, p_outer);
  rep.gauge = phi.name();
  rep.decomposition = spec.is_default ? "default" : spec.g.name() + "/" + (spec.phi ? spec.phi->name() : "?");
  if (!cut.halfspace) {
    finish(rep);
    return rep;
  }
  const int n = cut.dim;
  const Vector& nu = cut.halfspace->nu_h;
  const AdmissibleDecomposition dec = instantiate(spec, phi, nu);
  if (!spec.is_default) {
    const AdmissibilityReport check = check_admissibility(dec, phi, options.admissibility_samples, options.seed);
    const std::string failure = check.first_failure(options.admissibility_tolerance);
    if (!failure.empty()) throw Error(ErrorCode::AdmissibilityViolated, "decomposition fails the " + failure + " condition");
  }
  rep.decomposition = spec.is_default ? "default(" + dec.g.name() + ")" : dec.g.name() + "/" + dec.phi.name();

  // Every built-in phi has a closed-form Wulff measure, so the bracket is a point.
  rep.wulff_measure = wulff_measure(dec.phi);
  rep.wulff_measure_lower = rep.wulff_measure;
  rep.wulff_measure_upper = rep.wulff_measure;
  rep.wulff_exact = true;
  // Phi(nu)/|nu| rather than Phi(nu): identical in exact arithmetic, and it
  // keeps the Euclidean value at exactly 1 despite |nu_H| carrying round-off.
  rep.phi_nu = phi(nu) / nu.norm();

  auto evaluate_at = [&](double wm, double& r, double& g_value) {
    r = radius_for(cut.slice_measure, wm, n);
    g_value = dec.g(rep.h, r);
    const double e = excess(dec.g, rep.h, r, rep.phi_nu);
    return e > 0.0 ? wm * std::pow(r, n - 2) * e : 0.0;
  };
  double r_hi = 0.0, g_hi = 0.0;
  rep.bound = evaluate_at(rep.wulff_measure_lower, rep.r, rep.g_value);
  rep.bound_upper = evaluate_at(rep.wulff_measure_upper, r_hi, g_hi);
  if (excess(dec.g, rep.h, rep.r, rep.phi_nu) <= 0.0) rep.reason = BoundReason::Clipped;
  finish(rep);
  return rep;
}

BoundReport theorem_bound(const ConvexPolytope& a, const ConvexPolytope& b, const Gauge& phi,
                          const DecompositionSpec& spec, const BoundOptions& options) {
  if (phi.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "gauge dimension differs from the bodies");
  const CutGeometry cut = cut_geometry(a, b);
  return theorem_bound(cut, perimeter(a, phi), perimeter(b, phi), phi, spec, options);
}

BoundReport corollary_bound(const CutGeometry& cut, double p_inner, double p_outer) {
  if (cut.dim < 2) throw Error(ErrorCode::InvalidArgument, "the estimate needs n >= 2");
  BoundReport rep = base_report(cut, "corollary", p_inner, p_outer);
  rep.gauge = "euclidean";
  rep.decomposition = "default(conic(1))";
  const int n = cut.dim;
  rep.wulff_measure = rep.wulff_measure_lower = rep.wulff_measure_upper = unit_ball_volume(n - 1);
  rep.phi_nu = 1.0;
  if (cut.halfspace) {
    rep.r = radius_for(cut.slice_measure, rep.wulff_measure, n);
    rep.g_value = std::hypot(rep.h, rep.r);
    rep.bound = rep.wulff_measure * std::pow(rep.r, n - 2) * rep.h * rep.h / (rep.g_value + rep.r);
    rep.bound_upper = rep.bound;
  }
  finish(rep);
  return rep;
}

BoundReport corollary_bound(const ConvexPolytope& a, const ConvexPolytope& b) {
  const Gauge e = Gauge::euclidean(b.dim());
  return corollary_bound(cut_geometry(a, b), perimeter(a, e), perimeter(b, e));
}

BoundReport planar_bound(const CutGeometry& cut, double p_inner, double p_outer) {
  if (cut.dim != 2) throw Error(ErrorCode::InvalidArgument, "the planar estimate needs n = 2");
  BoundReport rep = base_report(cut, "planar", p_inner, p_outer);
  rep.gauge = "euclidean";
  rep.wulff_measure = rep.wulff_measure_lower = rep.wulff_measure_upper = 2.0;
  rep.phi_nu = 1.0;
  if (cut.halfspace) {
    const double half = 0.5 * cut.slice_measure;
    rep.r = half;
    rep.g_value = std::hypot(half, rep.h);
    rep.bound = 2.0 * rep.h * rep.h / (rep.g_value + half);
    rep.bound_upper = rep.bound;
  }
  finish(rep);
  return rep;
}

BoundReport planar_bound(const ConvexPolytope& a, const ConvexPolytope& b) {
  if (b.dim() != 2) throw Error(ErrorCode::InvalidArgument, "the planar estimate needs n = 2");
  const Gauge e = Gauge::euclidean(2);
  return planar_bound(cut_geometry(a, b), perimeter(a, e), perimeter(b, e));
}

BoundReport r3_bound(const CutGeometry& cut, double p_inner, double p_outer) {
  if (cut.dim != 3) throw Error(ErrorCode::InvalidArgument, "the R^3 estimate needs n = 3");
  BoundReport rep = base_report(cut, "r3", p_inner, p_outer);
  rep.gauge = "euclidean";
  rep.wulff_measure = rep.wulff_measure_lower = rep.wulff_measure_upper = std::numbers::pi;
  rep.phi_nu = 1.0;
  rep.d = 0.0;
  if (cut.halfspace) {
    rep.r = radius_for(cut.slice_measure, std::numbers::pi, 3);
    if (cut.slice && !cut.slice->degenerate()) rep.d = cut.slice->body->inner_boundary_distance(Vector::Zero(2));
    const double d = *rep.d;
    rep.g_value = std::hypot(d, rep.h);
    rep.bound = d > 0.0 ? std::numbers::pi * d * rep.h * rep.h / (rep.g_value + d) : 0.0;
    rep.bound_upper = rep.bound;
    if (rep.slice_measure == 0.0) rep.reason = BoundReason::DegenerateSlice;
  }
  finish(rep);
  return rep;
}

BoundReport r3_bound(const ConvexPolytope& a, const ConvexPolytope& b) {
  if (b.dim() != 3) throw Error(ErrorCode::InvalidArgument, "the R^3 estimate needs n = 3");
  const Gauge e = Gauge::euclidean(3);
  return r3_bound(cut_geometry(a, b), perimeter(a, e), perimeter(b, e));
}

BoundComparison compare_bounds(const ConvexPolytope& a, const ConvexPolytope& b, const Gauge& phi,
                               const DecompositionSpec& spec, const BoundOptions& options) {
  const int n = b.dim();
  if (n != 2 && n != 3) throw Error(ErrorCode::InvalidArgument, "bound comparison needs n = 2 or 3");
  const CutGeometry cut = cut_geometry(a, b);
  const Gauge e = Gauge::euclidean(n);
  const double pa = perimeter(a, e), pb = perimeter(b, e);
  BoundComparison cmp;
  cmp.theorem = theorem_bound(cut, perimeter(a, phi), perimeter(b, phi), phi, spec, options);
  cmp.corollary = corollary_bound(cut, pa, pb);
  const double cor = cmp.corollary.bound;
  if (n == 2) {
    cmp.planar = planar_bound(cut, pa, pb);
    const double pl = cmp.planar->bound;
    cmp.consistent = std::abs(cor - pl) <= kIdentityTol * std::max({1.0, std::abs(cor), std::abs(pl)});
    cmp.ratio = pl > 0.0 ? cor / pl : 1.0;
  } else {
    cmp.r3 = r3_bound(cut, pa, pb);
    const double r3 = cmp.r3->bound;
    cmp.consistent = cor >= r3 - kIdentityTol * std::max(1.0, r3);
    cmp.ratio = r3 > 0.0 ? cor / r3 : std::numeric_limits<double>::infinity();
  }
  return cmp;
}

}  // namespace aperim
