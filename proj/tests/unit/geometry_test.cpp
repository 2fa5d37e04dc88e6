#include <cmath>
#include <numbers>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "aperim/geometry.hpp"
#include "test_support.hpp"

namespace aperim {
namespace {

using testing::cube_corners;
using testing::unit_cube;

TEST(ConvexHull, SquareDropsInteriorPoint) {
  PointList pts = cube_corners(2);
  pts.push_back(make_vector({0.5, 0.5}));
  const ConvexPolytope sq = convex_hull(pts, 2);
  EXPECT_EQ(sq.vertices().size(), 4u);
  ASSERT_EQ(sq.facets().size(), 4u);
  for (const Facet& f : sq.facets()) EXPECT_NEAR(f.measure, 1.0, 1e-15);
  EXPECT_EQ(sq.edges().size(), 4u);
}

TEST(ConvexHull, CubeHasSixUnitFacets) {
  const ConvexPolytope cube = unit_cube(3);
  EXPECT_EQ(cube.vertices().size(), 8u);
  EXPECT_EQ(cube.facets().size(), 6u);
  EXPECT_EQ(cube.edges().size(), 12u);
  EXPECT_NEAR(cube.boundary_measure(), 6.0, 1e-14);
  EXPECT_NEAR(cube.volume(), 1.0, 1e-14);
  for (const Facet& f : cube.facets()) EXPECT_EQ(f.vertex_ids.size(), 4u);
}

TEST(ConvexHull, HypercubesInHigherDimensions) {
  for (int n = 4; n <= 6; ++n) {
    const ConvexPolytope c = unit_cube(n);
    EXPECT_EQ(c.vertices().size(), static_cast<std::size_t>(1 << n)) << n;
    EXPECT_EQ(c.facets().size(), static_cast<std::size_t>(2 * n)) << n;
    EXPECT_NEAR(c.volume(), 1.0, 1e-12) << n;
    EXPECT_NEAR(c.boundary_measure(), 2.0 * n, 1e-12) << n;
  }
}

TEST(ConvexHull, CollinearAndCoplanarExtrasAreNotVertices) {
  // Cube corners plus edge midpoints, face centres and the body centre.
  PointList pts = cube_corners(3);
  for (int a = 0; a < 3; ++a)
    for (double s : {0.0, 1.0})
      for (double t : {0.0, 1.0}) {
        Vector v(3);
        v[a] = 0.5;
        v[(a + 1) % 3] = s;
        v[(a + 2) % 3] = t;
        pts.push_back(v);
      }
  for (int a = 0; a < 3; ++a)
    for (double s : {0.0, 1.0}) {
      Vector v = Vector::Constant(3, 0.5);
      v[a] = s;
      pts.push_back(v);
    }
  pts.push_back(Vector::Constant(3, 0.5));
  const ConvexPolytope cube = ConvexPolytope::hull(pts);
  EXPECT_EQ(cube.vertices().size(), 8u);
  EXPECT_EQ(cube.facets().size(), 6u);
  EXPECT_NEAR(cube.volume(), 1.0, 1e-13);
}

TEST(ConvexHull, DegenerateInputThrows) {
  PointList flat{make_vector({0, 0, 0}), make_vector({1, 0, 0}), make_vector({0, 1, 0}), make_vector({1, 1, 0})};
  try {
    ConvexPolytope::hull(flat);
    FAIL() << "expected DegenerateInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
  PointList line{make_vector({0, 0}), make_vector({1, 1}), make_vector({2, 2})};
  EXPECT_THROW(ConvexPolytope::hull(line), Error);
}

TEST(ConvexHull, RandomBallPointsOracle) {
  Rng rng(7);
  PointList pts;
  while (pts.size() < 200) {  // rejection sampling in the cube [-1,1]^3
    Vector v = rng.in_box(3, -1.0, 1.0);
    if (v.norm() <= 1.0) pts.push_back(v);
  }
  const ConvexPolytope p = convex_hull(pts, 3);
  for (const Vector& v : p.vertices()) EXPECT_LE(v.norm(), 1.0);
  EXPECT_LE(p.volume(), 4.0 * std::numbers::pi / 3.0);
  for (const Vector& x : pts) EXPECT_TRUE(p.contains_point(x));
  for (std::size_t i = 0; i < p.vertices().size(); ++i)
    EXPECT_EQ(pts[p.source_ids()[i]], p.vertices()[i]);

  // Monte Carlo volume estimate within 4 sigma.
  Rng mc(99);
  const int samples = 200000;
  int inside = 0;
  for (int i = 0; i < samples; ++i)
    if (p.max_violation(mc.in_box(3, -1.0, 1.0)) <= 0.0) ++inside;
  const double frac = static_cast<double>(inside) / samples;
  const double sigma = 8.0 * std::sqrt(frac * (1 - frac) / samples);
  EXPECT_NEAR(8.0 * frac, p.volume(), 4.0 * sigma);
}

TEST(ConvexHull, MinkowskiClosureAndFacetInequalities) {
  Rng rng(3);
  for (int n = 2; n <= 5; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const ConvexPolytope p = testing::random_polytope(rng, n, n + 3 + rep);
      Vector sum = Vector::Zero(n);
      for (const Facet& f : p.facets()) sum += f.measure * f.inner_normal;
      EXPECT_LE(sum.norm(), 1e-9 * p.boundary_measure()) << "n=" << n;
      for (const Vector& v : p.vertices()) EXPECT_LE(p.max_violation(v), p.tolerance());
      for (const Facet& f : p.facets()) EXPECT_NEAR(f.inner_normal.norm(), 1.0, kUnitTol);
    }
  }
}

// A point just beyond a corner bends each of the three adjacent faces into
// two triangles whose planes nearly coincide; none of them may be dropped.
TEST(ConvexHull, NearlyCoplanarFacetsAroundABentCorner) {
  for (double eps : {1e-4, 1e-6, 1e-8}) {
    PointList pts = testing::cube_corners(3);
    pts.push_back(Vector::Constant(3, 1.0 + eps));
    const ConvexPolytope p = ConvexPolytope::hull(pts);
    EXPECT_EQ(p.vertices().size(), 8u);
    EXPECT_EQ(p.facets().size(), 9u);
    EXPECT_NEAR(p.volume(), 1.0 + eps, 1e-12);
    // Each bent face is two triangles of area sqrt(1 + eps + ...)/2 > 1/2.
    EXPECT_GE(p.boundary_measure(), 6.0);
  }
}

TEST(ConvexHull, HullOfHullVerticesIsStable) {
  Rng rng(5);
  for (int n = 2; n <= 4; ++n) {
    const ConvexPolytope p = testing::random_polytope(rng, n, 30);
    const ConvexPolytope q = ConvexPolytope::hull(p.vertices());
    ASSERT_EQ(p.vertices().size(), q.vertices().size());
    for (std::size_t i = 0; i < p.vertices().size(); ++i)
      EXPECT_LE((p.vertices()[i] - q.vertices()[i]).norm(), p.tolerance());
    EXPECT_NEAR(p.volume(), q.volume(), 1e-12 * p.volume());
  }
}

TEST(ConvexHull, DivergencePairingForAffineFunctions) {
  Rng rng(17);
  for (int n = 2; n <= 4; ++n) {
    const ConvexPolytope p = testing::random_polytope(rng, n, 25);
    const Vector c = rng.gaussian(n);
    const double d = rng.normal();
    Vector pairing = Vector::Zero(n);
    for (const Facet& f : p.facets()) pairing += f.inner_normal * (f.measure * (c.dot(f.centroid) + d));
    const Vector expected = -c * p.volume();
    EXPECT_LE((pairing - expected).norm(), 1e-9 * std::max(1.0, expected.norm())) << n;
  }
}

TEST(Volume, CubeAndSimplex) {
  EXPECT_NEAR(volume(unit_cube(3)), 1.0, 1e-15);
  EXPECT_NEAR(volume(ConvexPolytope::hull(testing::standard_simplex(3))), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(volume(ConvexPolytope::hull(testing::standard_simplex(4))), 1.0 / 24.0, 1e-15);
}

TEST(Volume, PolygonMatchesShoelace) {
  Rng rng(23);
  for (int rep = 0; rep < 50; ++rep) {
    const ConvexPolytope p = testing::random_polytope(rng, 2, 12);
    EXPECT_NEAR(p.volume(), testing::shoelace_area(testing::angular_order(p.vertices())), 1e-12);
    EXPECT_NEAR(p.boundary_measure(), testing::polygon_perimeter(testing::angular_order(p.vertices())), 1e-12);
  }
}

TEST(Slice, CubeAtHalfHeight) {
  const EmbeddedPolytope s = slice(unit_cube(3), Hyperplane::through(make_vector({0, 0, 1}), make_vector({0, 0, 0.5})));
  ASSERT_FALSE(s.degenerate());
  EXPECT_NEAR(s.measure(), 1.0, 1e-14);
  EXPECT_EQ(s.body->vertices().size(), 4u);
}

TEST(Slice, CubeHexagonMatchesTriangulation) {
  const Hyperplane plane = Hyperplane::through(make_vector({1, 1, 1}), make_vector({0.5, 0.5, 0.5}));
  const EmbeddedPolytope s = slice(unit_cube(3), plane);
  ASSERT_FALSE(s.degenerate());
  EXPECT_EQ(s.body->vertices().size(), 6u);

  // Oracle: the six edge midpoints crossed by the plane, fanned from their centre.
  PointList mids{make_vector({1, 0.5, 0}), make_vector({1, 0, 0.5}), make_vector({0.5, 0, 1}),
                 make_vector({0, 0.5, 1}), make_vector({0, 1, 0.5}), make_vector({0.5, 1, 0})};
  const Vector c = Vector::Constant(3, 0.5);
  double area = 0.0;
  for (std::size_t i = 0; i < mids.size(); ++i) area += simplex_measure({c, mids[i], mids[(i + 1) % mids.size()]});
  EXPECT_NEAR(area, 3.0 * std::sqrt(3.0) / 4.0, 1e-14);
  EXPECT_NEAR(s.measure(), area, 1e-12);
  for (const Vector& x : s.ambient_vertices()) EXPECT_NEAR(plane.signed_distance(x), 0.0, 1e-14);
}

TEST(Slice, ParallelPlanesThroughCube) {
  // x+y+z = t: triangle for t<=1, hexagon for 1<=t<=2. Oracle by inclusion-exclusion.
  const ConvexPolytope cube = unit_cube(3);
  for (double t = 0.1; t < 2.95; t += 0.173) {
    const EmbeddedPolytope s = slice(cube, Hyperplane::through(make_vector({1, 1, 1}), make_vector({t / 3, t / 3, t / 3})));
    auto tri = [](double u) { return u > 0 ? std::sqrt(3.0) / 2.0 * u * u : 0.0; };
    const double expected = tri(t) - 3.0 * tri(t - 1.0) + 3.0 * tri(t - 2.0);
    EXPECT_NEAR(s.measure(), expected, 1e-12) << t;
  }
}

TEST(Slice, MissingPlaneThrowsEmptySlice) {
  try {
    slice(unit_cube(3), Hyperplane::through(make_vector({0, 0, 1}), make_vector({0, 0, 2})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySlice);
  }
}

TEST(Slice, TouchingAtVertexIsDegenerate) {
  const EmbeddedPolytope s = slice(unit_cube(3), Hyperplane::through(make_vector({1, 1, 1}), make_vector({0, 0, 0})));
  EXPECT_TRUE(s.degenerate());
  EXPECT_EQ(s.measure(), 0.0);
}

TEST(Slice, FrameIsOrthonormalAndDeterministic) {
  Rng rng(41);
  for (int n = 2; n <= 6; ++n) {
    const Vector nu = rng.on_sphere(n);
    const Frame f = Frame::householder(nu);
    const Matrix g = f.basis().transpose() * f.basis();
    EXPECT_LE((g - Matrix::Identity(n - 1, n - 1)).norm(), 1e-14);
    EXPECT_LE((f.basis().transpose() * nu).norm(), 1e-14);
    EXPECT_EQ(f.basis(), Frame::householder(nu).basis());
  }
}

TEST(ProjectPoint, InteriorAndFaceCases) {
  const ConvexPolytope sq = unit_cube(2);
  const Projection in = project_point(sq, make_vector({0.3, 0.6}));
  EXPECT_EQ(in.point, make_vector({0.3, 0.6}));
  EXPECT_EQ(in.distance, 0.0);
  const Projection out = project_point(sq, make_vector({2, 0.5}));
  EXPECT_NEAR((out.point - make_vector({1, 0.5})).norm(), 0.0, 1e-15);
  EXPECT_NEAR(out.distance, 1.0, 1e-15);
}

// Oracle: enumerate every face of a simplex, project affinely, keep feasible candidates.
Vector simplex_projection_oracle(const PointList& verts, const Vector& y) {
  const int m = static_cast<int>(verts.size());
  Vector best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<int> ids;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) ids.push_back(i);
    const int k = static_cast<int>(ids.size());
    // affine least squares, first weight eliminated
    Eigen::MatrixXd d(y.size(), k - 1);
    for (int j = 1; j < k; ++j) d.col(j - 1) = Eigen::VectorXd(verts[ids[j]] - verts[ids[0]]);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
    if (k > 1) {
      Eigen::VectorXd beta = d.fullPivHouseholderQr().solve(Eigen::VectorXd(y - verts[ids[0]]));
      w.tail(k - 1) = beta;
      w[0] = 1.0 - beta.sum();
    } else {
      w[0] = 1.0;
    }
    if (w.minCoeff() < -1e-12) continue;
    Vector x = Vector::Zero(y.size());
    for (int j = 0; j < k; ++j) x += w[j] * verts[ids[j]];
    const double dist = (x - y).norm();
    if (dist < best_d) {
      best_d = dist;
      best = x;
    }
  }
  return best;
}

TEST(ProjectPoint, RandomSimplexMatchesFaceEnumeration) {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    PointList verts;
    for (int i = 0; i < 5; ++i) verts.push_back(rng.gaussian(4));
    const ConvexPolytope s = ConvexPolytope::hull(verts);
    const Vector y = 2.0 * rng.gaussian(4);
    const Projection pr = project_point(s, y);
    const Vector oracle = simplex_projection_oracle(verts, y);
    EXPECT_LE((pr.point - oracle).norm(), 1e-10) << rep;
    // Coarse sampled cross-check: no random point of the simplex is closer.
    for (int k = 0; k < 2000; ++k) {
      Vector w(5);
      for (int i = 0; i < 5; ++i) w[i] = -std::log(rng.uniform() + 1e-300);
      w /= w.sum();
      Vector x = Vector::Zero(4);
      for (int i = 0; i < 5; ++i) x += w[i] * verts[i];
      EXPECT_GE((x - y).norm(), pr.distance - 1e-12);
    }
  }
}

TEST(ProjectPoint, OptimalityCertificateAndIdempotence) {
  Rng rng(13);
  for (int n = 2; n <= 5; ++n) {
    const ConvexPolytope p = testing::random_polytope(rng, n, 20);
    for (int rep = 0; rep < 20; ++rep) {
      const Vector y = 3.0 * rng.gaussian(n);
      const Projection pr = project_point(p, y);
      EXPECT_TRUE(p.contains_point(pr.point));
      EXPECT_NEAR(pr.distance, (y - pr.point).norm(), 1e-15);
      if (pr.distance > 0) {
        const Vector dir = (y - pr.point) / pr.distance;
        for (const Vector& v : p.vertices()) EXPECT_LE(dir.dot(v - pr.point), kProjTol * p.diameter());
      }
      const Projection again = project_point(p, pr.point);
      EXPECT_LE((again.point - pr.point).norm(), kProjTol * p.diameter());
    }
  }
}

TEST(Contains, BoxesAndSelf) {
  const ConvexPolytope a = unit_cube(2);
  const ConvexPolytope b = ConvexPolytope::hull(cube_corners(2, 0.0, 2.0));
  EXPECT_TRUE(contains(a, a));
  EXPECT_TRUE(contains(b, a));
  EXPECT_FALSE(contains(a, b));
  EXPECT_THROW(contains(a, unit_cube(3)), Error);
}

TEST(IntersectHalfspace, CubeCutAndNoOpCut) {
  const ConvexPolytope cube = unit_cube(3);
  const ConvexPolytope low = intersect_halfspace(cube, Hyperplane::through(make_vector({0, 0, 1}), make_vector({0, 0, 0.5})), Side::Below);
  EXPECT_NEAR(low.volume(), 0.5, 1e-14);
  EXPECT_EQ(low.vertices().size(), 8u);
  for (const Vector& v : low.vertices()) EXPECT_LE(v[2], 0.5 + 1e-15);

  const ConvexPolytope same = intersect_halfspace(cube, Hyperplane::through(make_vector({0, 0, 1}), make_vector({0, 0, 3})), Side::Below);
  ASSERT_EQ(same.vertices().size(), cube.vertices().size());
  for (std::size_t i = 0; i < cube.vertices().size(); ++i) EXPECT_EQ(same.vertices()[i], cube.vertices()[i]);

  EXPECT_THROW(intersect_halfspace(cube, Hyperplane::through(make_vector({0, 0, 1}), make_vector({0, 0, 3})), Side::Above), Error);
}

TEST(IntersectHalfspace, PerimeterDecreasesUnderCuts) {
  Rng rng(101);
  int done = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + rep % 3;
    const ConvexPolytope p = testing::random_polytope(rng, n, n + 6);
    const Vector through = p.centroid() + 0.5 * rng.in_ball(n);
    try {
      const ConvexPolytope q = intersect_halfspace(p, Hyperplane::through(rng.on_sphere(n), through), Side::Below);
      EXPECT_LE(q.boundary_measure(), p.boundary_measure() * (1 + 1e-12)) << rep;
      EXPECT_TRUE(contains(p, q));
      ++done;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::EmptyIntersection || e.code() == ErrorCode::DegenerateIntersection);
    }
  }
  EXPECT_GT(done, 900);
}

TEST(SimplexMeasure, GramDeterminant) {
  EXPECT_NEAR(simplex_measure(testing::standard_simplex(3)), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(simplex_measure({make_vector({0, 0, 0}), make_vector({3, 4, 0})}), 5.0, 1e-15);
}

}  // namespace
}  // namespace aperim
