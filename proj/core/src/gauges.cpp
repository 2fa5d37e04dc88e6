#include "aperim/gauges.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aperim/rng.hpp"

namespace aperim {

namespace {

constexpr double kCoerciveFloor = 1e-9;

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void require_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorCode::InvalidArgument, "gauge dimension out of range");
}

}  // namespace

Gauge Gauge::euclidean(int dim) {
  require_dim(dim);
  Gauge g;
  g.kind_ = Kind::Euclidean;
  g.dim_ = dim;
  return g;
}

Gauge Gauge::scaled(int dim, double lambda) {
  require_dim(dim);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "scaled gauge needs lambda > 0");
  Gauge g;
  g.kind_ = Kind::Scaled;
  g.dim_ = dim;
  g.param_ = lambda;
  return g;
}

Gauge Gauge::support(ConvexPolytope k) {
  if (k.max_violation(Vector::Zero(k.dim())) > k.tolerance())
    throw Error(ErrorCode::InvalidArgument, "support gauge body must contain the origin");
  Gauge g;
  g.kind_ = Kind::Support;
  g.dim_ = k.dim();
  g.body_ = std::make_shared<const ConvexPolytope>(std::move(k));
  return g;
}

Gauge Gauge::lp(int dim, double p) {
  require_dim(dim);
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "lp gauge needs p >= 1");
  Gauge g;
  g.kind_ = Kind::Lp;
  g.dim_ = dim;
  g.param_ = p;
  return g;
}

const ConvexPolytope& Gauge::body() const {
  if (!body_) throw Error(ErrorCode::InvalidArgument, "gauge has no body");
  return *body_;
}

double Gauge::operator()(const Vector& x) const {
  switch (kind_) {
    case Kind::Euclidean:
      return x.norm();
    case Kind::Scaled:
      return param_ * x.norm();
    case Kind::Support: {
      double best = 0.0;  // 0 is in K, so the maximum is non-negative
      for (const Vector& v : body_->vertices()) best = std::max(best, x.dot(v));
      return best;
    }
    case Kind::Lp: {
      if (param_ == 1.0) return x.lpNorm<1>();
      if (param_ == 2.0) return x.norm();
      if (std::isinf(param_)) return x.lpNorm<Eigen::Infinity>();
      const double m = x.lpNorm<Eigen::Infinity>();
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, param_);
      return m * std::pow(s, 1.0 / param_);
    }
  }
  return 0.0;
}

std::string Gauge::name() const {
  switch (kind_) {
    case Kind::Euclidean: return "euclidean";
    case Kind::Scaled: return "scaled(" + format_number(param_) + ")";
    case Kind::Support: return "support(" + std::to_string(body_->vertices().size()) + "v)";
    case Kind::Lp: return std::isinf(param_) ? "lp(inf)" : "lp(" + format_number(param_) + ")";
  }
  return "gauge";
}

double evaluate(const Gauge& phi, const Vector& x) {
  if (x.size() != phi.dim()) throw Error(ErrorCode::DimensionMismatch, "gauge evaluated on a vector of wrong dimension");
  return phi(x);
}

SphereMinimum sphere_minimum(const Gauge& phi) {
  const int n = phi.dim();
  switch (phi.kind()) {
    case Gauge::Kind::Euclidean:
      return {1.0, unit_vector(n, 0)};
    case Gauge::Kind::Scaled:
      return {phi.lambda(), unit_vector(n, 0)};
    case Gauge::Kind::Support: {
      // min over the sphere of h_K is the distance from 0 to the boundary of K,
      // attained at the outer normal of the nearest facet.
      const ConvexPolytope& k = phi.body();
      const Facet* nearest = &k.facets().front();
      for (const Facet& f : k.facets())
        if (-f.offset < -nearest->offset) nearest = &f;
      return {std::max(0.0, -nearest->offset), -nearest->inner_normal};
    }
    case Gauge::Kind::Lp: {
      // |x|_p >= |x|_2 on the sphere for p <= 2 (equality at the axes); for
      // p > 2 the minimum n^(1/p - 1/2) sits on the diagonal.
      if (phi.p() <= 2.0) return {1.0, unit_vector(n, 0)};
      const double inv_p = std::isinf(phi.p()) ? 0.0 : 1.0 / phi.p();
      return {std::pow(static_cast<double>(n), inv_p - 0.5), Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)))};
    }
  }
  return {};
}

double min_on_sphere(const Gauge& phi) {
  const double c = sphere_minimum(phi).value;
  if (!(c >= kCoerciveFloor)) throw Error(ErrorCode::NotCoercive, "gauge vanishes on the unit sphere (min " + format_number(c) + ")");
  return c;
}

SphereMinimum min_on_sphere_numeric(const std::function<double(const Vector&)>& phi, int dim, int starts,
                                    std::uint64_t seed) {
  require_dim(dim);
  Rng rng(seed);
  PointList seeds;
  for (int i = 0; i < dim; ++i) {
    seeds.push_back(unit_vector(dim, i));
    seeds.push_back(-unit_vector(dim, i));
  }
  for (int mask = 0; mask < (1 << dim); ++mask) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    seeds.push_back(v.normalized());
  }
  for (int i = 0; i < starts; ++i) seeds.push_back(rng.on_sphere(dim));

  // Coarse pass: keep the best few seeds, then refine each by pattern search
  // along random tangent directions with a shrinking step.
  std::vector<std::pair<double, int>> ranked;
  for (std::size_t i = 0; i < seeds.size(); ++i) ranked.emplace_back(phi(seeds[i]), static_cast<int>(i));
  std::sort(ranked.begin(), ranked.end());
  SphereMinimum best{std::numeric_limits<double>::infinity(), seeds.front()};
  const int refine = std::min<int>(static_cast<int>(ranked.size()), 8);
  for (int r = 0; r < refine; ++r) {
    Vector x = seeds[ranked[r].second];
    double fx = ranked[r].first;
    for (double step = 0.25; step > 1e-11;) {
      bool moved = false;
      for (int trial = 0; trial < 16 * dim; ++trial) {
        Vector d = rng.gaussian(dim);
        d -= d.dot(x) * x;
        if (d.norm() == 0.0) continue;
        const Vector y = (x + step * d.normalized()).normalized();
        const double fy = phi(y);
        if (fy < fx) {
          x = y;
          fx = fy;
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (fx < best.value) best = {fx, x};
  }
  return best;
}

GPair GPair::conic(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "conic g needs c > 0");
  GPair g;
  g.c_ = c;
  g.name_ = "conic(" + format_number(c) + ")";
  return g;
}

GPair GPair::custom(std::function<double(double, double)> fn, std::string name) {
  if (!fn) throw Error(ErrorCode::InvalidArgument, "custom g needs a function");
  GPair g;
  g.fn_ = std::move(fn);
  g.name_ = std::move(name);
  return g;
}

double GPair::operator()(double s, double t) const {
  if (fn_) return fn_(s, t);
  return c_ * std::hypot(s, t);
}

double AdmissibleDecomposition::lower_envelope(const Vector& x) const {
  const Frame f = frame();
  return g(phi(f.coords_direction(x)), x.dot(nu));
}

AdmissibleDecomposition default_decomposition(const Gauge& Phi, const Vector& nu) {
  if (nu.size() != Phi.dim()) throw Error(ErrorCode::DimensionMismatch, "direction and gauge dimension differ");
  if (Phi.dim() < 2) throw Error(ErrorCode::InvalidArgument, "decompositions need n >= 2");
  AdmissibleDecomposition dec;
  dec.nu = nu.normalized();
  dec.g = GPair::conic(min_on_sphere(Phi));
  dec.phi = Gauge::euclidean(Phi.dim() - 1);
  dec.is_default = true;
  return dec;
}

AdmissibleDecomposition instantiate(const DecompositionSpec& spec, const Gauge& Phi, const Vector& nu) {
  if (spec.is_default) return default_decomposition(Phi, nu);
  if (!spec.phi) throw Error(ErrorCode::InvalidArgument, "structured decomposition needs phi");
  if (spec.phi->dim() != Phi.dim() - 1) throw Error(ErrorCode::DimensionMismatch, "phi must live in dimension n-1");
  AdmissibleDecomposition dec;
  dec.nu = nu.normalized();
  dec.g = spec.g;
  dec.phi = *spec.phi;
  return dec;
}

bool AdmissibilityReport::ok(double tol) const { return first_failure(tol).empty(); }

std::string AdmissibilityReport::first_failure(double tol) const {
  if (domination < -tol) return "domination";
  if (monotonicity < -tol) return "monotonicity";
  if (g_convexity < -tol) return "g_convexity";
  if (g_homogeneity < -tol) return "g_homogeneity";
  if (!(g_max > 0.0)) return "g_nonzero";
  if (!(phi_coercivity > kCoerciveFloor)) return "phi_coercivity";
  if (phi_convexity < -tol) return "phi_convexity";
  return {};
}

AdmissibilityReport check_admissibility(const AdmissibleDecomposition& dec, const Gauge& Phi, int samples,
                                        std::uint64_t seed) {
  const int n = Phi.dim();
  if (dec.nu.size() != n || dec.phi.dim() != n - 1) throw Error(ErrorCode::DimensionMismatch, "decomposition dimensions");
  Rng rng(seed);
  const Frame frame = dec.frame();
  const Vector& nu = dec.nu;
  AdmissibilityReport rep;
  rep.samples = samples;
  rep.domination = std::numeric_limits<double>::infinity();
  rep.monotonicity = rep.g_convexity = rep.g_homogeneity = std::numeric_limits<double>::infinity();
  rep.phi_coercivity = rep.phi_convexity = std::numeric_limits<double>::infinity();

  auto fold_up = [&](Vector x) {
    const double t = x.dot(nu);
    if (t < 0.0) x -= 2.0 * t * nu;
    return x;
  };
  auto probe = [&](const Vector& x) {
    const double m = Phi(x) - dec.g(dec.phi(frame.coords_direction(x)), x.dot(nu));
    if (m < rep.domination) {
      rep.domination = m;
      rep.worst_domination = x;
    }
  };
  probe(nu);
  probe(fold_up(sphere_minimum(Phi).argmin));
  probe(fold_up(-sphere_minimum(Phi).argmin));
  for (int i = 0; i < n - 1; ++i) {
    probe(frame.basis().col(i));
    probe(-frame.basis().col(i));
  }
  for (int i = 0; i < samples; ++i) probe(fold_up(rng.on_sphere(n)));

  const int side = std::max(64, samples / 10);
  const GPair& g = dec.g;
  for (int i = 0; i < side; ++i) {
    const double t = rng.uniform(0.0, 2.0);
    double s1 = rng.uniform(0.0, 2.0), s2 = rng.uniform(0.0, 2.0);
    if (s1 > s2) std::swap(s1, s2);
    rep.monotonicity = std::min(rep.monotonicity, g(s2, t) - g(s1, t));

    const double ps = rng.uniform(), pt = rng.uniform(), qs = rng.uniform(), qt = rng.uniform();
    const double gp = g(ps, pt), gq = g(qs, qt);
    rep.g_max = std::max({rep.g_max, gp, gq});
    rep.g_convexity = std::min(rep.g_convexity, 0.5 * (gp + gq) - g(0.5 * (ps + qs), 0.5 * (pt + qt)));
    const double lam = rng.uniform(0.0, 10.0) + 1e-3;
    rep.g_homogeneity = std::min(rep.g_homogeneity, -std::abs(g(lam * ps, lam * pt) - lam * gp) / lam);
  }
  rep.g_max = std::max({rep.g_max, g(1.0, 0.0), g(0.0, 1.0), g(1.0, 1.0)});

  const int k = n - 1;
  auto phi_probe = [&](const Vector& z) { rep.phi_coercivity = std::min(rep.phi_coercivity, dec.phi(z)); };
  for (int i = 0; i < k; ++i) {
    phi_probe(unit_vector(k, i));
    phi_probe(-unit_vector(k, i));
  }
  if (dec.phi.kind() == Gauge::Kind::Support || dec.phi.kind() == Gauge::Kind::Lp)
    phi_probe(sphere_minimum(dec.phi).argmin);
  for (int i = 0; i < side; ++i) {
    const Vector a = rng.on_sphere(k), b = rng.on_sphere(k);
    phi_probe(a);
    rep.phi_convexity = std::min(rep.phi_convexity, 0.5 * (dec.phi(a) + dec.phi(b)) - dec.phi(0.5 * (a + b)));
  }
  return rep;
}

JensenResult jensen_check(const GPair& g, std::span<const double> f1, std::span<const double> f2,
                          std::span<const double> weights) {
  if (f1.size() != f2.size() || f1.size() != weights.size())
    throw Error(ErrorCode::InvalidArgument, "jensen_check needs lists of equal length");
  CompensatedSum m1, m2, rhs;
  for (std::size_t i = 0; i < f1.size(); ++i) {
    const double a = f1[i], b = f2[i], w = weights[i];
    if (!(a >= 0.0 && b >= 0.0 && w >= 0.0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(w))
      throw Error(ErrorCode::InvalidArgument, "jensen_check inputs must be finite and non-negative");
    m1.add(w * a);
    m2.add(w * b);
    rhs.add(w * g(a, b));
  }
  JensenResult r;
  r.lhs = g(m1.value(), m2.value());
  r.rhs = rhs.value();
  r.gap = r.rhs - r.lhs;
  return r;
}

}  // namespace aperim
