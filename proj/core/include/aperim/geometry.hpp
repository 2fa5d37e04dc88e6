#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "aperim/error.hpp"
#include "aperim/types.hpp"

namespace aperim {

/// The set {x : <normal, x> = offset}, normal of unit length.
struct Hyperplane {
  Vector normal;
  double offset = 0.0;

  /// Normalizes `normal`; throws InvalidArgument on a zero vector.
  static Hyperplane through(const Vector& normal, const Vector& point);

  double signed_distance(const Vector& x) const { return normal.dot(x) - offset; }
  int dim() const { return static_cast<int>(normal.size()); }
};

/// Which closed half-space of a Hyperplane to keep.
enum class Side {
  Below,  ///< <normal, x> <= offset
  Above,  ///< <normal, x> >= offset
};

/// Orthonormal (n-1)-frame of a hyperplane together with a base point.
///
/// The basis is the first n-1 columns of the Householder reflection taking
/// e_n to +-normal, so the same normal always yields the same frame.
class Frame {
 public:
  Frame() = default;
  static Frame householder(const Vector& normal, const Vector& origin);
  static Frame householder(const Vector& normal) { return householder(normal, Vector::Zero(normal.size())); }

  int ambient_dim() const { return static_cast<int>(origin_.size()); }
  const Vector& origin() const { return origin_; }
  const Vector& normal() const { return normal_; }
  const Matrix& basis() const { return basis_; }

  Vector lift(const Vector& z) const { return origin_ + basis_ * z; }
  Vector lift_direction(const Vector& z) const { return basis_ * z; }
  Vector coords(const Vector& x) const { return basis_.transpose() * (x - origin_); }
  Vector coords_direction(const Vector& x) const { return basis_.transpose() * x; }

  /// Same basis and normal, different base point.
  Frame rebased(const Vector& origin) const;

 private:
  Vector origin_;
  Vector normal_;
  Matrix basis_;
};

class ConvexPolytope;

/// A facet of a ConvexPolytope. Normals point INTO the body:
/// every point x of the polytope satisfies <inner_normal, x> >= offset.
struct Facet {
  Vector inner_normal;
  double offset = 0.0;
  double measure = 0.0;  // (n-1)-dimensional Hausdorff measure; 1 for the endpoints of a segment
  Vector centroid;
  std::vector<int> vertex_ids;  // indices into the owning polytope's vertices, in `face` vertex order
  Frame frame;                  // frame of the facet's hyperplane (empty basis in dimension 1)
  std::shared_ptr<const ConvexPolytope> face;  // facet in `frame` coordinates; null in dimension 1
};

/// Full-dimensional convex polytope in V-representation with cached facet data.
///
/// Vertices are the extreme points of the input, deduplicated and sorted
/// lexicographically. Facets, edges, volume, centroid and diameter are
/// computed once at construction; the object is immutable afterwards.
class ConvexPolytope {
 public:
  /// Convex hull of `points` (all of equal dimension 1..kMaxDim).
  /// Throws DegenerateInput if the points do not span the ambient space.
  static ConvexPolytope hull(const PointList& points);

  /// An empty placeholder (dimension 0, no vertices); assign a hull to it.
  ConvexPolytope() = default;

  int dim() const { return dim_; }
  const PointList& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  /// For each vertex, its index in the point list given to hull().
  const std::vector<int>& source_ids() const { return source_ids_; }

  double volume() const { return volume_; }
  const Vector& centroid() const { return centroid_; }
  double diameter() const { return diameter_; }
  /// Absolute geometric tolerance, kGeoTol times the diameter.
  double tolerance() const { return kGeoTol * diameter_; }
  double boundary_measure() const;

  /// True if every facet inequality holds within `tol`.
  bool contains_point(const Vector& x, double tol) const;
  bool contains_point(const Vector& x) const { return contains_point(x, tolerance()); }
  /// Largest violation of a facet inequality (<= 0 inside).
  double max_violation(const Vector& x) const;
  /// Distance from an interior point to the boundary (0 if outside).
  double inner_boundary_distance(const Vector& x) const;

 private:
  friend struct PolytopeBuilder;

  int dim_ = 0;
  PointList vertices_;
  std::vector<int> source_ids_;
  std::vector<Facet> facets_;
  std::vector<std::pair<int, int>> edges_;
  double volume_ = 0.0;
  Vector centroid_;
  double diameter_ = 0.0;
};

/// An (n-1)-dimensional convex body lying in a hyperplane of R^n.
/// `body` is absent when the set has affine dimension < n-1.
struct EmbeddedPolytope {
  Frame frame;
  std::optional<ConvexPolytope> body;
  PointList support;  // frame coordinates of the generating points

  bool degenerate() const { return !body.has_value(); }
  double measure() const { return body ? body->volume() : 0.0; }
  int ambient_dim() const { return frame.ambient_dim(); }
  PointList ambient_vertices() const;
};

ConvexPolytope convex_hull(const PointList& points, int dim);
double volume(const ConvexPolytope& p);

/// Intersection of `p` with `plane`, expressed in the Householder frame of
/// plane.normal based at `origin` (default: the foot of 0 on the plane).
/// Throws EmptySlice if the intersection is empty; a lower-dimensional
/// intersection is returned with degenerate() == true and zero measure.
EmbeddedPolytope slice(const ConvexPolytope& p, const Hyperplane& plane,
                       const std::optional<Vector>& origin = std::nullopt);

struct Projection {
  Vector point;
  double distance = 0.0;
  int iterations = 0;
};

/// Nearest point of `p` to `y`. Throws NoConvergence past the iteration cap.
Projection project_point(const ConvexPolytope& p, const Vector& y);

/// Nearest point of conv(points) to `y` by Wolfe's minimum-norm-point method.
Projection project_onto_hull(const PointList& points, const Vector& y, int max_iterations = 10000);

/// True iff every vertex of `inner` satisfies every facet inequality of `outer` within outer.tolerance().
bool contains(const ConvexPolytope& outer, const ConvexPolytope& inner);

/// p intersected with the closed half-space `side` of `plane`.
ConvexPolytope intersect_halfspace(const ConvexPolytope& p, const Hyperplane& plane, Side side);

ConvexPolytope translate(const ConvexPolytope& p, const Vector& v);
/// Image under x -> factor * x (factor != 0; negative factors reflect through 0).
ConvexPolytope scale(const ConvexPolytope& p, double factor);
/// Image under x -> m * x + v for an invertible m.
ConvexPolytope affine_image(const ConvexPolytope& p, const Matrix& m, const Vector& v);

/// k-dimensional measure of the simplex spanned by k+1 points (Gram determinant).
double simplex_measure(const PointList& points);

/// Distance between two convex hulls of finite point sets (0 if they meet).
double hull_distance(const PointList& a, const PointList& b);

}  // namespace aperim
