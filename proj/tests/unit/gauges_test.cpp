#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "aperim/gauges.hpp"
#include "aperim/harness.hpp"
#include "test_support.hpp"

namespace aperim {
namespace {

using testing::rel_err;

// Grid minimum of phi on the unit sphere together with an error bound. A
// gauge is Lipschitz with constant max_{|u|=1} phi(u), so the grid minimum
// exceeds the true one by at most that constant times the covering radius.
struct GridMin {
  double value = INFINITY;
  double error = 0.0;
};

GridMin circle_grid_min(const Gauge& phi, int k) {
  GridMin out;
  double top = 0.0;
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * std::numbers::pi * i / k;
    const double f = phi(make_vector({std::cos(t), std::sin(t)}));
    out.value = std::min(out.value, f);
    top = std::max(top, f);
  }
  out.error = 1.01 * top * std::numbers::pi / k;
  return out;
}

GridMin sphere_grid_min(const Gauge& phi, int rings) {
  GridMin out;
  double top = 0.0;
  for (int i = 0; i <= rings; ++i) {
    const double th = std::numbers::pi * i / rings;
    for (int j = 0; j < 2 * rings; ++j) {
      const double ph = std::numbers::pi * j / rings;
      const double f = phi(make_vector({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}));
      out.value = std::min(out.value, f);
      top = std::max(top, f);
    }
  }
  out.error = 1.01 * top * std::numbers::pi / rings;
  return out;
}

std::vector<Gauge> all_kinds(int n) {
  return {Gauge::euclidean(n), Gauge::scaled(n, 2.5), asymmetric_simplex_gauge(n), Gauge::lp(n, 1.0),
          Gauge::lp(n, 3.0), Gauge::lp(n, INFINITY)};
}

TEST(Gauge, EvaluatesBuiltInKinds) {
  const Vector x = make_vector({3.0, 4.0});
  EXPECT_DOUBLE_EQ(Gauge::euclidean(2)(x), 5.0);
  EXPECT_DOUBLE_EQ(Gauge::scaled(2, 2.0)(x), 10.0);
  const PointList diamond{make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1}), make_vector({0, -1})};
  EXPECT_DOUBLE_EQ(Gauge::support(ConvexPolytope::hull(diamond))(x), 4.0);
  EXPECT_DOUBLE_EQ(Gauge::lp(2, 1.0)(x), 7.0);
  EXPECT_DOUBLE_EQ(Gauge::lp(2, INFINITY)(x), 4.0);
  EXPECT_NEAR(Gauge::lp(2, 3.0)(x), std::cbrt(27.0 + 64.0), 1e-14);
}

TEST(Gauge, RejectsBadParameters) {
  EXPECT_THROW(Gauge::scaled(2, 0.0), Error);
  EXPECT_THROW(Gauge::lp(2, 0.5), Error);
  const PointList off{make_vector({1, 1}), make_vector({2, 1}), make_vector({1, 2})};
  EXPECT_THROW(Gauge::support(ConvexPolytope::hull(off)), Error);
  EXPECT_THROW(evaluate(Gauge::euclidean(3), make_vector({1.0, 2.0})), Error);
}

TEST(Gauge, SupportGaugeIsVertexMaximum) {
  Rng rng(5);
  const Gauge phi = asymmetric_simplex_gauge(3);
  for (int i = 0; i < 200; ++i) {
    const Vector x = rng.gaussian(3);
    double best = -INFINITY;
    for (const Vector& v : phi.body().vertices()) best = std::max(best, x.dot(v));
    EXPECT_NEAR(phi(x), best, 1e-14 * (1.0 + std::abs(best)));
  }
}

TEST(Gauge, PositivelyHomogeneous) {
  Rng rng(21);
  for (int n = 2; n <= 4; ++n) {
    for (const Gauge& phi : all_kinds(n)) {
      for (int i = 0; i < 1000; ++i) {
        const Vector x = rng.gaussian(n);
        const double l = rng.uniform(1e-3, 10.0);
        EXPECT_LE(std::abs(phi(l * x) - l * phi(x)), 1e-10 * l * phi(x)) << phi.name();
      }
    }
  }
}

TEST(Gauge, MidpointConvexAndNonNegative) {
  Rng rng(22);
  for (int n = 2; n <= 4; ++n) {
    for (const Gauge& phi : all_kinds(n)) {
      for (int i = 0; i < 1000; ++i) {
        const Vector x = rng.gaussian(n), y = rng.gaussian(n);
        const double mid = phi(0.5 * (x + y));
        const double avg = 0.5 * (phi(x) + phi(y));
        EXPECT_GE(phi(x), 0.0);
        EXPECT_LE(mid - avg, 1e-10 * avg) << phi.name();
      }
    }
  }
}

TEST(SphereMinimum, ClosedFormExamples) {
  EXPECT_DOUBLE_EQ(min_on_sphere(Gauge::euclidean(3)), 1.0);
  EXPECT_DOUBLE_EQ(min_on_sphere(Gauge::scaled(3, 2.0)), 2.0);
  // The l1 norm on the circle is |cos t| + |sin t|, smallest on the axes.
  const Gauge l1 = Gauge::lp(2, 1.0);
  const double oracle = circle_grid_min(l1, 1000000).value;
  EXPECT_NEAR(min_on_sphere(l1), 1.0, 1e-12);
  EXPECT_NEAR(oracle, 1.0, 1e-12);
}

TEST(SphereMinimum, MatchesGridOraclesInThePlane) {
  for (const Gauge& phi : all_kinds(2)) {
    const SphereMinimum m = sphere_minimum(phi);
    const GridMin oracle = circle_grid_min(phi, 1000000);
    EXPECT_LE(m.value, oracle.value + 1e-12) << phi.name();
    EXPECT_GE(m.value, oracle.value - oracle.error) << phi.name();
    EXPECT_NEAR(m.argmin.norm(), 1.0, 1e-12);
    EXPECT_NEAR(phi(m.argmin), m.value, 1e-12) << phi.name();
  }
}

TEST(SphereMinimum, MatchesGridOraclesInSpace) {
  for (const Gauge& phi : all_kinds(3)) {
    const double value = min_on_sphere(phi);
    const GridMin oracle = sphere_grid_min(phi, 600);
    EXPECT_LE(value, oracle.value + 1e-12) << phi.name();
    EXPECT_GE(value, oracle.value - oracle.error) << phi.name();
  }
}

TEST(SphereMinimum, NumericSearchAgreesWithClosedForms) {
  for (int n = 2; n <= 5; ++n) {
    for (const Gauge& phi : all_kinds(n)) {
      const SphereMinimum numeric = min_on_sphere_numeric([&](const Vector& x) { return phi(x); }, n, 16, 3);
      EXPECT_NEAR(numeric.value, min_on_sphere(phi), 1e-6) << phi.name() << " n=" << n;
    }
  }
}

TEST(SphereMinimum, VanishingGaugeIsNotCoercive) {
  // K = conv{0, e1, e2}: the support function is 0 on the closed negative quadrant.
  const PointList corner{make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})};
  const Gauge phi = Gauge::support(ConvexPolytope::hull(corner));
  EXPECT_NEAR(sphere_minimum(phi).value, 0.0, 1e-15);
  EXPECT_THROW(min_on_sphere(phi), Error);
  EXPECT_THROW(default_decomposition(phi, make_vector({1.0, 0.0})), Error);
}

TEST(DefaultDecomposition, EuclideanIsTheConeOverTheDisk) {
  const Vector nu = make_vector({0.0, 0.6, 0.8});
  const AdmissibleDecomposition dec = default_decomposition(Gauge::euclidean(3), nu);
  EXPECT_TRUE(dec.is_default);
  EXPECT_TRUE(dec.g.is_conic());
  EXPECT_DOUBLE_EQ(dec.g.c(), 1.0);
  EXPECT_EQ(dec.phi.kind(), Gauge::Kind::Euclidean);
  EXPECT_EQ(dec.phi.dim(), 2);
  EXPECT_NEAR(dec.g(3.0, 4.0), 5.0, 1e-15);
}

TEST(DefaultDecomposition, ConstantFromTheSphereMinimum) {
  EXPECT_DOUBLE_EQ(default_decomposition(Gauge::scaled(3, 2.0), unit_vector(3, 0)).g.c(), 2.0);
  const Gauge l1 = Gauge::lp(3, 1.0);
  const AdmissibleDecomposition dec = default_decomposition(l1, unit_vector(3, 2));
  // The l1 minimum sits on the axes, which are grid points.
  EXPECT_NEAR(dec.g.c(), sphere_grid_min(l1, 600).value, 1e-12);
}

TEST(Admissibility, EuclideanDefaultHoldsWithEquality) {
  const Gauge phi = Gauge::euclidean(3);
  const AdmissibleDecomposition dec = default_decomposition(phi, make_vector({1.0, 2.0, 2.0}).normalized());
  const AdmissibilityReport rep = check_admissibility(dec, phi, 10000, 1);
  EXPECT_TRUE(rep.ok(1e-12)) << rep.first_failure(1e-12);
  EXPECT_NEAR(rep.domination, 0.0, 1e-12);
  EXPECT_EQ(rep.samples, 10000);
}

TEST(Admissibility, DefaultDecompositionsPassEverySample) {
  Rng rng(31);
  for (int n = 2; n <= 4; ++n) {
    for (const Gauge& phi : all_kinds(n)) {
      const Vector nu = rng.on_sphere(n);
      const AdmissibilityReport rep = check_admissibility(default_decomposition(phi, nu), phi, 10000, 2);
      EXPECT_TRUE(rep.ok(1e-12)) << phi.name() << ": " << rep.first_failure(1e-12);
      EXPECT_GE(rep.domination, -1e-12);
    }
  }
}

TEST(Admissibility, InflatedConstantFailsAtTheSphereMinimizer) {
  const Gauge phi = Gauge::lp(3, 3.0);
  const SphereMinimum m = sphere_minimum(phi);
  // The minimizer or its reflection lies in the upper half-space of nu.
  const Vector nu = unit_vector(3, 2);
  const DecompositionSpec spec = DecompositionSpec::structured(GPair::conic(2.0 * m.value), Gauge::euclidean(2));
  const AdmissibilityReport rep = check_admissibility(instantiate(spec, phi, nu), phi, 1000, 4);
  EXPECT_FALSE(rep.ok(1e-9));
  EXPECT_EQ(rep.first_failure(1e-9), "domination");
  EXPECT_NEAR(rep.domination, -m.value, 1e-9);
  EXPECT_NEAR(phi(rep.worst_domination), m.value, 1e-9);
}

TEST(Admissibility, HeightOnlyPairIsDominatedByTheNorm) {
  // g(s, t) = t ignores the tangential part. |x| >= <x, nu> always, so
  // domination holds for the euclidean gauge, with equality at x = nu.
  const Gauge phi = Gauge::euclidean(3);
  const GPair g = GPair::custom([](double, double t) { return t; }, "height");
  const AdmissibilityReport rep =
      check_admissibility(instantiate(DecompositionSpec::structured(g, Gauge::euclidean(2)), phi, unit_vector(3, 0)),
                          phi, 2000, 5);
  EXPECT_GE(rep.monotonicity, -1e-15);
  EXPECT_GE(rep.domination, -1e-15);
  EXPECT_NEAR(rep.domination, 0.0, 1e-12);
  EXPECT_TRUE(rep.ok(1e-12)) << rep.first_failure(1e-12);
}

TEST(Admissibility, DetectsNonMonotoneAndNonCoerciveParts) {
  const Gauge phi = Gauge::scaled(3, 3.0);
  const Vector nu = unit_vector(3, 1);
  const GPair decreasing = GPair::custom([](double s, double t) { return std::max(0.0, t - 0.5 * s); }, "decreasing");
  const AdmissibilityReport r1 =
      check_admissibility(instantiate(DecompositionSpec::structured(decreasing, Gauge::euclidean(2)), phi, nu), phi,
                          1000, 6);
  EXPECT_LT(r1.monotonicity, -1e-3);
  EXPECT_FALSE(r1.ok(1e-9));

  const PointList corner{make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})};
  const Gauge flat = Gauge::support(ConvexPolytope::hull(corner));
  const AdmissibilityReport r2 =
      check_admissibility(instantiate(DecompositionSpec::structured(GPair::conic(1.0), flat), phi, nu), phi, 1000, 6);
  EXPECT_LE(r2.phi_coercivity, 1e-12);
  EXPECT_EQ(r2.first_failure(1e-9), "phi_coercivity");
}

TEST(GPair, ConicIsHomogeneousAndConvex) {
  Rng rng(8);
  const GPair g = GPair::conic(1.7);
  for (int i = 0; i < 1000; ++i) {
    const double s1 = rng.uniform(0, 5), t1 = rng.uniform(0, 5), s2 = rng.uniform(0, 5), t2 = rng.uniform(0, 5);
    const double l = rng.uniform(0.01, 10);
    EXPECT_NEAR(g(l * s1, l * t1), l * g(s1, t1), 1e-12 * l * g(s1, t1));
    const double avg = 0.5 * (g(s1, t1) + g(s2, t2));
    EXPECT_LE(g(0.5 * (s1 + s2), 0.5 * (t1 + t2)) - avg, 1e-10 * avg);
  }
  EXPECT_THROW(GPair::conic(0.0), Error);
}

TEST(Jensen, UnitVectorExample) {
  const std::vector<double> f1{1, 0}, f2{0, 1}, w{1, 1};
  const JensenResult r = jensen_check(GPair::conic(1.0), f1, f2, w);
  EXPECT_NEAR(r.lhs, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.rhs, 2.0, 1e-15);
  EXPECT_NEAR(r.gap, 2.0 - std::sqrt(2.0), 1e-15);
}

TEST(Jensen, RandomTriplesHaveNonNegativeGap) {
  Rng rng(9);
  const GPair g = GPair::conic(1.0);
  for (int i = 0; i < 1000; ++i) {
    const int m = 1 + rng.below(8);
    std::vector<double> f1(m), f2(m), w(m);
    for (int j = 0; j < m; ++j) {
      f1[j] = rng.uniform(0, 3);
      f2[j] = rng.uniform(0, 3);
      w[j] = rng.uniform(0, 2);
    }
    const JensenResult r = jensen_check(g, f1, f2, w);
    EXPECT_GE(r.gap, -1e-12 * r.rhs);
  }
}

TEST(Jensen, ProportionalInputsAreTheEqualityCase) {
  Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    const int m = 1 + rng.below(8);
    const double kappa = rng.uniform(0.1, 4);
    std::vector<double> f1(m), f2(m), w(m);
    for (int j = 0; j < m; ++j) {
      f2[j] = rng.uniform(0, 3);
      f1[j] = kappa * f2[j];
      w[j] = rng.uniform(0, 2);
    }
    const JensenResult r = jensen_check(GPair::conic(2.0), f1, f2, w);
    EXPECT_LE(std::abs(r.gap), 1e-12 * r.rhs);
  }
}

TEST(Jensen, RejectsMalformedInput) {
  const std::vector<double> a{1, 2}, b{1}, neg{-1, 2};
  EXPECT_THROW(jensen_check(GPair::conic(1.0), a, b, a), Error);
  EXPECT_THROW(jensen_check(GPair::conic(1.0), a, a, neg), Error);
}

}  // namespace
}  // namespace aperim
