#pragma once

#include "aperim/geometry.hpp"

namespace aperim {

/// h(A, B) for A inside B, with a in A and b a vertex of B, |a - b| = h.
struct HausdorffWitness {
  double h = 0.0;
  Vector a;
  Vector b;
  int b_vertex = -1;  // index of b in B.vertices()
};

/// H = {x : <b - a, x - a> <= 0} and nu_H = (a - b) / |a - b|.
struct HalfspaceWitness {
  Hyperplane plane;  // normal (b - a)/h, passing through a
  Side side = Side::Below;
  Vector nu_h;

  bool contains(const Vector& x, double tol) const { return plane.signed_distance(x) <= tol; }
};

/// max over y in B of dist(y, A). dist(., A) is convex, so the maximum over
/// the polytope B is attained at a vertex; only vertices are scanned. Among
/// maximizers the lexicographically first vertex wins.
/// Throws NotNested unless A is contained in B.
HausdorffWitness hausdorff_nested(const ConvexPolytope& a, const ConvexPolytope& b);

/// Throws ZeroDistance if w.h == 0.
HalfspaceWitness halfspace_witness(const HausdorffWitness& w);

/// As above, and checks that the plane supports A (every vertex of A in H
/// within A.tolerance()); throws NoConvergence if the projection certificate
/// fails.
HalfspaceWitness halfspace_witness(const HausdorffWitness& w, const ConvexPolytope& a);

}  // namespace aperim
