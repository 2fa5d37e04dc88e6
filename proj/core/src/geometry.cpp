#include "aperim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

namespace aperim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::EmptySlice: return "EmptySlice";
    case ErrorCode::DegenerateSlice: return "DegenerateSlice";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::DegenerateIntersection: return "DegenerateIntersection";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotCoercive: return "NotCoercive";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::ZeroDistance: return "ZeroDistance";
    case ErrorCode::AdmissibilityViolated: return "AdmissibilityViolated";
    case ErrorCode::ApexOnCarrier: return "ApexOnCarrier";
    case ErrorCode::OriginNotInBase: return "OriginNotInBase";
    case ErrorCode::GridTooFine: return "GridTooFine";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

double unit_ball_volume(int k) {
  const double half = 0.5 * static_cast<double>(k);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

Hyperplane Hyperplane::through(const Vector& normal, const Vector& point) {
  const double len = normal.norm();
  if (!(len > 0.0) || !std::isfinite(len)) throw Error(ErrorCode::InvalidArgument, "hyperplane normal must be non-zero");
  if (point.size() != normal.size()) throw Error(ErrorCode::DimensionMismatch, "hyperplane point/normal dimension");
  Hyperplane h;
  h.normal = normal / len;
  h.offset = h.normal.dot(point);
  return h;
}

Frame Frame::householder(const Vector& normal, const Vector& origin) {
  const int n = static_cast<int>(normal.size());
  if (origin.size() != n) throw Error(ErrorCode::DimensionMismatch, "frame origin/normal dimension");
  const double len = normal.norm();
  if (!(len > 0.0)) throw Error(ErrorCode::InvalidArgument, "frame normal must be non-zero");
  Frame f;
  f.origin_ = origin;
  f.normal_ = normal / len;
  f.basis_ = Matrix(n, n - 1);
  if (n == 1) return f;
  Vector u = f.normal_;
  if (u[n - 1] <= 0.0)
    u[n - 1] -= 1.0;
  else
    u[n - 1] += 1.0;
  const double uu = u.squaredNorm();
  for (int c = 0; c < n - 1; ++c) {
    Vector col = -2.0 * u[c] / uu * u;
    col[c] += 1.0;
    f.basis_.col(c) = col;
  }
  return f;
}

Frame Frame::rebased(const Vector& origin) const {
  Frame f = *this;
  f.origin_ = origin;
  return f;
}

double ConvexPolytope::boundary_measure() const {
  CompensatedSum s;
  for (const Facet& f : facets_) s.add(f.measure);
  return s.value();
}

double ConvexPolytope::max_violation(const Vector& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Facet& f : facets_) worst = std::max(worst, f.offset - f.inner_normal.dot(x));
  return worst;
}

bool ConvexPolytope::contains_point(const Vector& x, double tol) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  return max_violation(x) <= tol;
}

double ConvexPolytope::inner_boundary_distance(const Vector& x) const { return std::max(0.0, -max_violation(x)); }

PointList EmbeddedPolytope::ambient_vertices() const {
  PointList out;
  if (body) {
    for (const Vector& z : body->vertices()) out.push_back(frame.lift(z));
  } else {
    for (const Vector& z : support) out.push_back(frame.lift(z));
  }
  return out;
}

ConvexPolytope convex_hull(const PointList& points, int dim) {
  for (const Vector& p : points)
    if (p.size() != dim) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from requested dimension");
  return ConvexPolytope::hull(points);
}

double volume(const ConvexPolytope& p) { return p.volume(); }

namespace {

// Points of p on the plane plus crossings of edges that straddle it.
PointList plane_crossings(const ConvexPolytope& p, const Hyperplane& plane, const std::vector<double>& s, double tol) {
  PointList out;
  const PointList& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(s[i]) <= tol) out.push_back(v[i] - s[i] * plane.normal);
  for (auto [a, b] : p.edges()) {
    if ((s[a] < -tol && s[b] > tol) || (s[a] > tol && s[b] < -tol)) {
      const double t = s[a] / (s[a] - s[b]);
      out.push_back(v[a] + t * (v[b] - v[a]));
    }
  }
  return out;
}

std::vector<double> signed_distances(const ConvexPolytope& p, const Hyperplane& plane) {
  if (plane.dim() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "hyperplane dimension");
  std::vector<double> s;
  s.reserve(p.vertices().size());
  for (const Vector& v : p.vertices()) s.push_back(plane.signed_distance(v));
  return s;
}

}  // namespace

EmbeddedPolytope slice(const ConvexPolytope& p, const Hyperplane& plane, const std::optional<Vector>& origin) {
  const std::vector<double> s = signed_distances(p, plane);
  const double tol = p.tolerance();
  const PointList pts = plane_crossings(p, plane, s, tol);
  if (pts.empty()) throw Error(ErrorCode::EmptySlice, "hyperplane misses the polytope");

  Vector base = plane.offset * plane.normal;
  if (origin) base = *origin - plane.signed_distance(*origin) * plane.normal;
  EmbeddedPolytope out;
  out.frame = Frame::householder(plane.normal, base);
  for (const Vector& x : pts) out.support.push_back(out.frame.coords(x));
  if (p.dim() == 1) return out;  // a point in a 0-dimensional frame
  try {
    out.body = ConvexPolytope::hull(out.support);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateInput) throw;
  }
  return out;
}

bool contains(const ConvexPolytope& outer, const ConvexPolytope& inner) {
  if (outer.dim() != inner.dim()) throw Error(ErrorCode::DimensionMismatch, "contains: bodies of different dimension");
  const double tol = outer.tolerance();
  for (const Vector& v : inner.vertices())
    if (!outer.contains_point(v, tol)) return false;
  return true;
}

ConvexPolytope intersect_halfspace(const ConvexPolytope& p, const Hyperplane& plane, Side side) {
  std::vector<double> s = signed_distances(p, plane);
  if (side == Side::Above)
    for (double& x : s) x = -x;
  const double tol = p.tolerance();
  PointList pts;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] < -tol) pts.push_back(p.vertices()[i]);
  if (pts.empty()) throw Error(ErrorCode::EmptyIntersection, "half-space misses the polytope interior");
  Hyperplane oriented = plane;
  if (side == Side::Above) {
    oriented.normal = -plane.normal;
    oriented.offset = -plane.offset;
  }
  const PointList cut = plane_crossings(p, oriented, s, tol);
  pts.insert(pts.end(), cut.begin(), cut.end());
  try {
    return ConvexPolytope::hull(pts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateInput) throw Error(ErrorCode::DegenerateIntersection, e.what());
    throw;
  }
}

ConvexPolytope affine_image(const ConvexPolytope& p, const Matrix& m, const Vector& v) {
  PointList pts;
  pts.reserve(p.vertices().size());
  for (const Vector& x : p.vertices()) pts.push_back(m * x + v);
  return ConvexPolytope::hull(pts);
}

ConvexPolytope translate(const ConvexPolytope& p, const Vector& v) {
  return affine_image(p, Matrix::Identity(p.dim(), p.dim()), v);
}

ConvexPolytope scale(const ConvexPolytope& p, double factor) {
  if (factor == 0.0 || !std::isfinite(factor)) throw Error(ErrorCode::InvalidArgument, "scale factor must be finite and non-zero");
  return affine_image(p, factor * Matrix::Identity(p.dim(), p.dim()), Vector::Zero(p.dim()));
}

double simplex_measure(const PointList& points) {
  if (points.size() < 2) return 0.0;
  const int n = static_cast<int>(points.front().size());
  const int k = static_cast<int>(points.size()) - 1;
  Eigen::MatrixXd m(n, k);
  for (int j = 0; j < k; ++j) m.col(j) = (points[j + 1] - points[0]);
  const double gram = (m.transpose() * m).determinant();
  return std::sqrt(std::max(0.0, gram)) / std::tgamma(static_cast<double>(k) + 1.0);
}

}  // namespace aperim
