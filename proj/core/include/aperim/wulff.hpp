#pragma once

#include "aperim/gauges.hpp"
#include "aperim/geometry.hpp"

namespace aperim {

/// phi*(z) = sup{<z, w> : phi(w) < 1}. Closed forms: |.| is self-dual,
/// scaled(l) -> |.|/l, lp -> lq with 1/p + 1/q = 1, support(K) -> the
/// Minkowski gauge of K. Throws NotCoercive if phi vanishes on the sphere.
double polar_gauge(const Gauge& phi, const Vector& z);

/// W = {z : phi*(z) <= 1} inside nu^perp, in the Householder frame of nu.
struct WulffShape {
  Vector nu;
  /// The shape itself when body_exact, otherwise an inscribed polytope
  /// sampled on the boundary of W.
  EmbeddedPolytope body;
  /// H^(n-1)(W). Closed form for every built-in gauge kind.
  double measure = 0.0;
  bool exact = true;
  bool body_exact = true;
  int resolution = 0;
};

/// Builds W for a gauge phi on R^(n-1). `resolution` is the number of
/// boundary samples per angular dimension for curved W (>= 3).
/// Curved W with n-1 > 3 is not supported (Unsupported).
WulffShape wulff_shape(const Gauge& phi, const Vector& nu, int resolution = 512);

/// H^(n-1)(W) without building the shape.
double wulff_measure(const Gauge& phi);

/// p_phi(K) = sum over the (n-2)-faces F of K of phi(inner normal of F) H^(n-2)(F),
/// with K given in frame coordinates. Throws DegenerateSlice if K has no body.
double anisotropic_boundary_measure(const EmbeddedPolytope& k, const Gauge& phi);
double anisotropic_boundary_measure(const ConvexPolytope& k, const Gauge& phi);

/// Volume of the unit ball of the lq norm in R^k (q may be +inf).
double lq_ball_volume(int k, double q);

}  // namespace aperim
