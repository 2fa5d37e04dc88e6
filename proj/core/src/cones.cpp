#include "aperim/cones.hpp"

#include <cmath>

namespace aperim {

Cone cone(const Vector& apex, const EmbeddedPolytope& base) {
  if (apex.size() != base.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "cone apex dimension");
  if (base.degenerate()) throw Error(ErrorCode::DegenerateSlice, "cone base has no interior in its hyperplane");
  Cone c;
  c.apex = apex;
  c.base = base;
  const Vector& n = base.frame.normal();
  const double s = n.dot(apex - base.frame.origin());
  const double tol = kGeoTol * std::max(base.body->diameter(), std::abs(s));
  if (std::abs(s) <= tol) throw Error(ErrorCode::ApexOnCarrier, "cone apex lies on the base hyperplane");
  c.height = std::abs(s);
  c.axis = s > 0.0 ? Vector(-n) : Vector(n);
  c.foot = base.frame.coords(apex);

  PointList pts = base.ambient_vertices();
  pts.push_back(apex);
  c.solid = ConvexPolytope::hull(pts);
  const double ftol = c.solid.tolerance();
  for (std::size_t i = 0; i < c.solid.facets().size(); ++i) {
    const Facet& f = c.solid.facets()[i];
    if (std::abs(f.inner_normal.dot(apex) - f.offset) <= ftol) c.lateral_facets.push_back(static_cast<int>(i));
  }
  return c;
}

double lateral_integral(const Cone& c, const Gauge& phi) {
  if (phi.dim() != c.solid.dim()) throw Error(ErrorCode::DimensionMismatch, "lateral integral: gauge dimension");
  CompensatedSum s;
  for (int i : c.lateral_facets) {
    const Facet& f = c.solid.facets()[i];
    s.add(phi(f.inner_normal) * f.measure);
  }
  return s.value();
}

namespace {

double base_distance(const Cone& c, const Facet& f) { return -f.inner_normal.dot(f.centroid - c.foot); }

}  // namespace

double lateral_integral_from_base(const Cone& c, const Gauge& phi) {
  if (phi.dim() != c.solid.dim()) throw Error(ErrorCode::DimensionMismatch, "lateral integral: gauge dimension");
  const int n = c.solid.dim();
  CompensatedSum s;
  for (const Facet& f : c.base.body->facets()) {
    const Vector nu_k = c.base.frame.lift_direction(f.inner_normal);
    s.add(phi(c.height * nu_k + base_distance(c, f) * c.axis) * f.measure);
  }
  return s.value() / (n - 1);
}

double base_height_sum(const Cone& c) {
  CompensatedSum s;
  for (const Facet& f : c.base.body->facets()) s.add(base_distance(c, f) * f.measure);
  return s.value() / (c.solid.dim() - 1);
}

ConeLemmaResult cone_lemma_check(const Cone& c, const Gauge& phi, const DecompositionSpec& spec) {
  const int n = c.solid.dim();
  if (c.base.body->max_violation(c.foot) > c.base.body->tolerance())
    throw Error(ErrorCode::OriginNotInBase, "the foot of the apex is not in the base");
  const AdmissibleDecomposition dec = instantiate(spec, phi, c.axis);
  ConeLemmaResult res;
  res.lhs = lateral_integral(c, phi);
  res.step_one = lateral_integral_from_base(c, phi);
  res.base_heights = base_height_sum(c);
  res.base_measure = c.base.measure();
  res.wulff_measure = wulff_measure(dec.phi);
  res.r = std::pow(res.base_measure / res.wulff_measure, 1.0 / (n - 1));
  res.rhs = res.wulff_measure * std::pow(res.r, n - 2) * dec.g(c.height, res.r);
  res.margin = res.lhs - res.rhs;
  return res;
}

ConeLemmaResult cone_lemma_check(const Vector& nu, const EmbeddedPolytope& e, double h, const Gauge& phi,
                                 const DecompositionSpec& spec) {
  if (nu.size() != e.ambient_dim() || phi.dim() != nu.size()) throw Error(ErrorCode::DimensionMismatch, "cone lemma dimensions");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "cone lemma needs h > 0");
  const Vector unit = nu.normalized();
  if (std::abs(std::abs(unit.dot(e.frame.normal())) - 1.0) > kUnitTol)
    throw Error(ErrorCode::InvalidArgument, "base does not lie in a hyperplane orthogonal to nu");
  if (std::abs(unit.dot(e.frame.origin())) > kGeoTol * std::max(1.0, e.frame.origin().norm()))
    throw Error(ErrorCode::InvalidArgument, "base hyperplane does not pass through 0");
  if (e.degenerate()) throw Error(ErrorCode::DegenerateSlice, "base has no interior in nu^perp");
  if (e.body->max_violation(e.frame.coords(Vector::Zero(nu.size()))) > e.body->tolerance())
    throw Error(ErrorCode::OriginNotInBase, "0 is not in the base");
  return cone_lemma_check(cone(-h * unit, e), phi, spec);
}

SharpPair sharp_pair(const Vector& nu, const WulffShape& w, double depth) {
  if (!(depth > 0.0) || !std::isfinite(depth)) throw Error(ErrorCode::InvalidArgument, "cone depth must be positive");
  if (w.body.degenerate()) throw Error(ErrorCode::DegenerateInput, "Wulff shape has no body");
  const Vector unit = nu.normalized();
  const Frame frame = Frame::householder(unit);
  PointList prism;
  for (const Vector& z : w.body.body->vertices()) {
    const Vector x = frame.lift(z);
    prism.push_back(x);
    prism.push_back(x + unit);
  }
  SharpPair out{ConvexPolytope::hull(prism), ConvexPolytope::hull(prism)};
  prism.push_back(-depth * unit);
  out.outer = ConvexPolytope::hull(prism);
  if (out.outer.vertices().size() != out.inner.vertices().size() + 1)
    throw Error(ErrorCode::DegenerateInput, "prism and cone do not form a convex union");
  return out;
}

}  // namespace aperim
