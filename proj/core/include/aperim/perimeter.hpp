#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aperim/gauges.hpp"
#include "aperim/geometry.hpp"

namespace aperim {

struct PerimeterValue {
  double value = 0.0;
  std::string gauge;
  /// (facet index, Phi(inner normal) * facet measure), in facet order.
  std::vector<std::pair<int, double>> contributions;
};

/// P_Phi(P) = sum over facets of Phi(inner normal) * measure. Inner normals:
/// for an asymmetric Phi this differs from the outer-normal convention.
PerimeterValue phi_perimeter(const ConvexPolytope& p, const Gauge& phi);

/// The value of phi_perimeter without the per-facet record.
double perimeter(const ConvexPolytope& p, const Gauge& phi);

/// The same facet sum evaluated on outer normals.
double outer_normal_perimeter(const ConvexPolytope& p, const Gauge& phi);

struct ScalingCheck {
  double scaled = 0.0;    // P_Phi(l P)
  double expected = 0.0;  // l^(n-1) P_Phi(P)
};

/// Throws InvalidArgument unless lambda > 0.
ScalingCheck scaling_check(const ConvexPolytope& p, const Gauge& phi, double lambda);

}  // namespace aperim
