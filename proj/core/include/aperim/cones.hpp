#pragma once

#include <vector>

#include "aperim/gauges.hpp"
#include "aperim/geometry.hpp"
#include "aperim/wulff.hpp"

namespace aperim {

/// conv({apex} ∪ base) for an (n-1)-dimensional base in a hyperplane.
struct Cone {
  Vector apex;
  EmbeddedPolytope base;
  ConvexPolytope solid;
  std::vector<int> lateral_facets;  // facets of `solid` through the apex
  double height = 0.0;              // distance from the apex to the base hyperplane
  Vector axis;                      // unit vector from the apex toward the base hyperplane
  Vector foot;                      // orthogonal projection of the apex, in base frame coordinates
};

/// Throws ApexOnCarrier if the apex lies on the base hyperplane and
/// DegenerateSlice if the base has no (n-1)-dimensional body.
Cone cone(const Vector& apex, const EmbeddedPolytope& base);

/// Sum over lateral facets of Phi(inner normal) * measure.
double lateral_integral(const Cone& c, const Gauge& phi);

/// The same integral from the base alone:
///   (1/(n-1)) sum_k Phi(h nu_k + d_k nu) H^(n-2)(F_k)
/// over the facets F_k of the base with inner normals nu_k, nu = axis and
/// d_k = -<nu_k, x_k - foot> for a point x_k of F_k. d_k is the distance from
/// the foot to the affine hull of F_k, signed so that the formula also holds
/// when the foot lies outside the base.
double lateral_integral_from_base(const Cone& c, const Gauge& phi);

/// (1/(n-1)) sum_k d_k H^(n-2)(F_k); equals H^(n-1)(base).
double base_height_sum(const Cone& c);

struct ConeLemmaResult {
  double lhs = 0.0;       // lateral integral over the cone with apex -h nu
  double rhs = 0.0;       // H(W) r^(n-2) g(h, r)
  double margin = 0.0;    // lhs - rhs
  double step_one = 0.0;  // lateral_integral_from_base
  double base_heights = 0.0;
  double base_measure = 0.0;
  double wulff_measure = 0.0;
  double r = 0.0;
};

/// Checks lhs >= rhs for the cone over E with apex -h nu, where E lies in
/// nu^perp (its frame normal must be +-nu and its frame origin on nu^perp).
/// Throws OriginNotInBase unless 0 is in E, InvalidArgument unless h > 0.
ConeLemmaResult cone_lemma_check(const Vector& nu, const EmbeddedPolytope& e, double h, const Gauge& phi,
                                 const DecompositionSpec& spec = DecompositionSpec::default_spec());

/// Same check for a cone that was already built (apex above 0 in the base frame).
ConeLemmaResult cone_lemma_check(const Cone& c, const Gauge& phi,
                                 const DecompositionSpec& spec = DecompositionSpec::default_spec());

struct SharpPair {
  ConvexPolytope inner;  // prism {x : 0 <= <x, nu> <= 1, tangential part in W}
  ConvexPolytope outer;  // inner ∪ cone with apex -depth * nu over W
};

/// Prism of unit height over W and its union with the cone of the given
/// depth below W. Throws InvalidArgument unless depth > 0, and
/// DegenerateInput if the union is not convex with exactly one new vertex.
SharpPair sharp_pair(const Vector& nu, const WulffShape& w, double depth = 1.0);

}  // namespace aperim
