#pragma once

#include <vector>

#include "aperim/geometry.hpp"

namespace aperim {

/// One polytope of the grid approximation of a body E.
struct ApproxItem {
  int k = 0;
  ConvexPolytope polytope;  // C_k
  double lambda = 0.0;      // h(C_k, E)
  double vol_gap = 0.0;     // vol(C_k) - vol(E)
  double perim = 0.0;       // H^(n-1)(∂C_k)
  double perim_gap = 0.0;   // perim - H^(n-1)(∂E)
  long long cells = 0;      // grid cubes that meet E
};

/// C_k = hull of the grid cubes z s + [0, s]^n, s = 1/(k sqrt(n)), z in Z^n,
/// that meet E. The grid is anchored at the origin. A cube meets E when their
/// distance is within E.tolerance(). Throws GridTooFine past 1e8 cells
/// in the bounding box of E.
ApproxItem grid_approximation(const ConvexPolytope& e, int k);

/// True if the closed box [lo, hi] meets E (distance within tol).
bool box_meets(const ConvexPolytope& e, const Vector& lo, const Vector& hi, double tol);

struct ConvergenceTable {
  std::vector<ApproxItem> items;  // k = 1..k_max
  bool vol_gap_decreased = false;    // vol_gap(k_max) <= vol_gap(1)
  bool perim_gap_decreased = false;  // perim_gap(k_max) <= perim_gap(1)
  /// Smallest c with gap(k) <= c / k for every k.
  double vol_constant = 0.0;
  double perim_constant = 0.0;
  /// Least-squares slopes of log gap against log k (about -1 for a 1/k decay).
  double vol_rate = 0.0;
  double perim_rate = 0.0;
};

ConvergenceTable convergence_suite(const ConvexPolytope& e, int k_max);

/// sum over facets F of nu_F H^(n-1)(F) phi(centroid_F) for the affine
/// phi(x) = <c, x> + d. By the divergence theorem with inner normals this
/// equals -c vol(P).
Vector gauss_measure_pairing(const ConvexPolytope& p, const Vector& c, double d);

}  // namespace aperim
