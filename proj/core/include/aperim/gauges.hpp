#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "aperim/geometry.hpp"

namespace aperim {

/// A positively 1-homogeneous convex function R^n -> [0, inf).
///
/// Kinds:
///   euclidean     |x|
///   scaled(l)     l |x|
///   support(K)    max over vertices v of K of <x, v>; K must contain 0
///   lp(p)         (sum |x_i|^p)^(1/p), p in [1, inf]
class Gauge {
 public:
  enum class Kind { Euclidean, Scaled, Support, Lp };

  static Gauge euclidean(int dim);
  static Gauge scaled(int dim, double lambda);
  /// Throws InvalidArgument unless 0 lies in K (within K.tolerance()).
  static Gauge support(ConvexPolytope k);
  static Gauge lp(int dim, double p);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double lambda() const { return param_; }
  double p() const { return param_; }
  /// The body K of a support gauge.
  const ConvexPolytope& body() const;

  double operator()(const Vector& x) const;
  /// Short identifier such as "euclidean", "scaled(2)", "support(4v)", "lp(1)".
  std::string name() const;

 private:
  Gauge() = default;
  Kind kind_ = Kind::Euclidean;
  int dim_ = 0;
  double param_ = 1.0;
  std::shared_ptr<const ConvexPolytope> body_;
};

/// Throws DimensionMismatch if dim(x) != dim(phi).
double evaluate(const Gauge& phi, const Vector& x);

struct SphereMinimum {
  double value = 0.0;
  Vector argmin;
};

/// min{phi(x) : |x| = 1} in closed form for every built-in kind.
SphereMinimum sphere_minimum(const Gauge& phi);

/// sphere_minimum(phi).value; throws NotCoercive when it is below 1e-9.
double min_on_sphere(const Gauge& phi);

/// Derivative-free multistart search on the sphere. Used to cross-check the
/// closed forms and for gauges given only as a function.
SphereMinimum min_on_sphere_numeric(const std::function<double(const Vector&)>& phi, int dim, int starts,
                                    std::uint64_t seed);

/// g : [0, inf)^2 -> [0, inf), positively 1-homogeneous.
class GPair {
 public:
  /// g(s, t) = c sqrt(s^2 + t^2).
  static GPair conic(double c);
  /// Any closure; the caller vouches for homogeneity and convexity, which
  /// check_admissibility samples.
  static GPair custom(std::function<double(double, double)> fn, std::string name);

  double operator()(double s, double t) const;
  bool is_conic() const { return !fn_; }
  double c() const { return c_; }
  const std::string& name() const { return name_; }

 private:
  GPair() = default;
  double c_ = 1.0;
  std::function<double(double, double)> fn_;
  std::string name_;
};

/// A pair (g, phi) for one direction nu. phi is a gauge on R^(n-1), read in
/// the Householder frame of nu^perp.
struct AdmissibleDecomposition {
  Vector nu;
  GPair g = GPair::conic(1.0);
  Gauge phi = Gauge::euclidean(1);
  bool is_default = false;

  Frame frame() const { return Frame::householder(nu); }
  /// g(phi(tangential part of x), <x, nu>).
  double lower_envelope(const Vector& x) const;
};

/// phi = |.| on nu^perp and g = conic(c) with c = min_on_sphere(Phi).
AdmissibleDecomposition default_decomposition(const Gauge& Phi, const Vector& nu);

/// Direction-independent description of a decomposition: either the default
/// construction or a fixed (g, phi) placed in every frame.
struct DecompositionSpec {
  bool is_default = true;
  GPair g = GPair::conic(1.0);
  std::optional<Gauge> phi;

  static DecompositionSpec default_spec() { return {}; }
  static DecompositionSpec structured(GPair g, Gauge phi) { return {false, std::move(g), std::move(phi)}; }
};

AdmissibleDecomposition instantiate(const DecompositionSpec& spec, const Gauge& Phi, const Vector& nu);

/// Worst sampled margins of the admissibility conditions. A margin is
/// satisfied when it is >= -tol; scale-free because probes have unit size.
struct AdmissibilityReport {
  int samples = 0;
  double domination = 0.0;      // min Phi(x) - g(phi(x'), x.nu) over |x| = 1, x.nu >= 0
  Vector worst_domination;      // the x attaining it
  double monotonicity = 0.0;    // min g(s2, t) - g(s1, t) over s2 >= s1
  double g_convexity = 0.0;     // min (g(p) + g(q)) / 2 - g((p + q) / 2)
  double g_homogeneity = 0.0;   // min -|g(l p) - l g(p)| / l
  double g_max = 0.0;           // max g on the probes (must be > 0)
  double phi_coercivity = 0.0;  // min phi on the unit sphere of nu^perp
  double phi_convexity = 0.0;

  bool ok(double tol) const;
  /// Name of the first failing condition, empty if ok(tol).
  std::string first_failure(double tol) const;
};

AdmissibilityReport check_admissibility(const AdmissibleDecomposition& dec, const Gauge& Phi, int samples,
                                        std::uint64_t seed);

struct JensenResult {
  double lhs = 0.0;  // g(sum w f1, sum w f2)
  double rhs = 0.0;  // sum w g(f1, f2)
  double gap = 0.0;  // rhs - lhs
};

/// Throws InvalidArgument on unequal lengths, negative or non-finite entries.
JensenResult jensen_check(const GPair& g, std::span<const double> f1, std::span<const double> f2,
                          std::span<const double> weights);

}  // namespace aperim
