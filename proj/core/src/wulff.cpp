#include "aperim/wulff.hpp"

#include <cmath>
#include <numbers>

namespace aperim {

namespace {

// Conjugate exponent, with 1 <-> inf.
double conjugate(double p) {
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double lq_norm(const Vector& z, double q) {
  if (q == 1.0) return z.lpNorm<1>();
  if (std::isinf(q)) return z.lpNorm<Eigen::Infinity>();
  return Gauge::lp(static_cast<int>(z.size()), q)(z);
}

// Unit directions on S^(k-1): m equally spaced angles for k = 2; for k = 3
// the poles plus m azimuths on each of max(2, m/2) - 1 latitude circles.
PointList sphere_directions(int k, int m) {
  PointList dirs;
  if (k == 2) {
    for (int j = 0; j < m; ++j) {
      const double t = 2.0 * std::numbers::pi * j / m;
      dirs.push_back(make_vector({std::cos(t), std::sin(t)}));
    }
  } else {
    const int rings = std::max(2, m / 2);
    dirs.push_back(make_vector({0.0, 0.0, 1.0}));
    dirs.push_back(make_vector({0.0, 0.0, -1.0}));
    for (int i = 1; i < rings; ++i) {
      const double th = std::numbers::pi * i / rings;
      for (int j = 0; j < m; ++j) {
        const double ph = 2.0 * std::numbers::pi * j / m;
        dirs.push_back(make_vector({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}));
      }
    }
  }
  return dirs;
}

EmbeddedPolytope in_frame(const Vector& nu, const PointList& pts) {
  EmbeddedPolytope e;
  e.frame = Frame::householder(nu);
  e.support = pts;
  e.body = ConvexPolytope::hull(pts);
  return e;
}

}  // namespace

double lq_ball_volume(int k, double q) {
  if (std::isinf(q)) return std::pow(2.0, k);
  return std::pow(2.0 * std::tgamma(1.0 + 1.0 / q), k) / std::tgamma(1.0 + k / q);
}

double polar_gauge(const Gauge& phi, const Vector& z) {
  if (z.size() != phi.dim()) throw Error(ErrorCode::DimensionMismatch, "polar gauge argument dimension");
  min_on_sphere(phi);  // NotCoercive check
  switch (phi.kind()) {
    case Gauge::Kind::Euclidean:
      return z.norm();
    case Gauge::Kind::Scaled:
      return z.norm() / phi.lambda();
    case Gauge::Kind::Lp:
      return lq_norm(z, conjugate(phi.p()));
    case Gauge::Kind::Support: {
      // K = {x : <nu_F, x> >= off_F} with off_F < 0, so z lies in tK iff
      // <nu_F, z> / off_F <= t for every facet.
      double best = 0.0;
      for (const Facet& f : phi.body().facets()) best = std::max(best, f.inner_normal.dot(z) / f.offset);
      return best;
    }
  }
  return 0.0;
}

double wulff_measure(const Gauge& phi) {
  min_on_sphere(phi);
  const int k = phi.dim();
  switch (phi.kind()) {
    case Gauge::Kind::Euclidean:
      return unit_ball_volume(k);
    case Gauge::Kind::Scaled:
      return std::pow(phi.lambda(), k) * unit_ball_volume(k);
    case Gauge::Kind::Lp:
      return lq_ball_volume(k, conjugate(phi.p()));
    case Gauge::Kind::Support:
      return phi.body().volume();
  }
  return 0.0;
}

WulffShape wulff_shape(const Gauge& phi, const Vector& nu, int resolution) {
  const int k = phi.dim();
  if (nu.size() != k + 1) throw Error(ErrorCode::DimensionMismatch, "Wulff shape: phi must live in nu^perp");
  if (resolution < 3) throw Error(ErrorCode::InvalidArgument, "Wulff resolution must be at least 3");
  WulffShape w;
  w.nu = nu.normalized();
  w.measure = wulff_measure(phi);
  w.resolution = resolution;

  if (k == 1) {
    // phi*(z) = z / phi(1) for z > 0 and |z| / phi(-1) for z < 0.
    w.body = in_frame(w.nu, {make_vector({-phi(make_vector({-1.0}))}), make_vector({phi(make_vector({1.0}))})});
    return w;
  }
  if (phi.kind() == Gauge::Kind::Support) {
    w.body = in_frame(w.nu, phi.body().vertices());
    return w;
  }
  const double q = phi.kind() == Gauge::Kind::Lp ? conjugate(phi.p()) : 2.0;
  if (std::isinf(q)) {  // l1 phi: W is the cube
    PointList pts;
    for (int mask = 0; mask < (1 << k); ++mask) {
      Vector v(k);
      for (int i = 0; i < k; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
      pts.push_back(v);
    }
    w.body = in_frame(w.nu, pts);
    return w;
  }
  if (q == 1.0) {  // l-inf phi: W is the cross-polytope
    PointList pts;
    for (int i = 0; i < k; ++i) {
      pts.push_back(unit_vector(k, i));
      pts.push_back(-unit_vector(k, i));
    }
    w.body = in_frame(w.nu, pts);
    return w;
  }
  if (k > 3) throw Error(ErrorCode::Unsupported, "curved Wulff shapes are built only in dimension <= 3");
  const double radius = phi.kind() == Gauge::Kind::Scaled ? phi.lambda() : 1.0;
  PointList pts;
  for (const Vector& u : sphere_directions(k, resolution)) pts.push_back(radius * u / lq_norm(u, q));
  w.body = in_frame(w.nu, pts);
  w.body_exact = false;
  return w;
}

double anisotropic_boundary_measure(const ConvexPolytope& k, const Gauge& phi) {
  if (k.dim() != phi.dim()) throw Error(ErrorCode::DimensionMismatch, "boundary measure: gauge dimension");
  CompensatedSum s;
  for (const Facet& f : k.facets()) s.add(phi(f.inner_normal) * f.measure);
  return s.value();
}

double anisotropic_boundary_measure(const EmbeddedPolytope& k, const Gauge& phi) {
  if (k.degenerate()) throw Error(ErrorCode::DegenerateSlice, "boundary measure of a lower-dimensional set");
  return anisotropic_boundary_measure(*k.body, phi);
}

}  // namespace aperim
