#include "aperim/perimeter.hpp"

#include <cmath>

namespace aperim {

namespace {

void check_dim(const ConvexPolytope& p, const Gauge& phi) {
  if (p.dim() != phi.dim()) throw Error(ErrorCode::DimensionMismatch, "perimeter: body and gauge dimension differ");
}

}  // namespace

PerimeterValue phi_perimeter(const ConvexPolytope& p, const Gauge& phi) {
  check_dim(p, phi);
  PerimeterValue out;
  out.gauge = phi.name();
  CompensatedSum s;
  for (std::size_t i = 0; i < p.facets().size(); ++i) {
    const Facet& f = p.facets()[i];
    const double c = phi(f.inner_normal) * f.measure;
    out.contributions.emplace_back(static_cast<int>(i), c);
    s.add(c);
  }
  out.value = s.value();
  return out;
}

double perimeter(const ConvexPolytope& p, const Gauge& phi) {
  check_dim(p, phi);
  CompensatedSum s;
  for (const Facet& f : p.facets()) s.add(phi(f.inner_normal) * f.measure);
  return s.value();
}

double outer_normal_perimeter(const ConvexPolytope& p, const Gauge& phi) {
  check_dim(p, phi);
  CompensatedSum s;
  for (const Facet& f : p.facets()) s.add(phi(-f.inner_normal) * f.measure);
  return s.value();
}

ScalingCheck scaling_check(const ConvexPolytope& p, const Gauge& phi, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "scaling factor must be positive");
  return {perimeter(scale(p, lambda), phi), std::pow(lambda, p.dim() - 1) * perimeter(p, phi)};
}

}  // namespace aperim
