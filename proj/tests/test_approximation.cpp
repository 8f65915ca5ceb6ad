#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "kpoly/approximation.hpp"
#include "kpoly/errors.hpp"
#include "kpoly/fixtures.hpp"

namespace kpoly {
namespace {

using std::numbers::pi;

double total_area(const GeodesicTriangulation& t, Curvature k) {
  double s = 0.0;
  for (const Sides& x : t.sides) s += triangle_area(ModelTriangle::make(k, x[0], x[1], x[2]));
  return s;
}

TEST(SphereTriangulation, LevelZeroIsTheIcosahedron) {
  const GeodesicTriangulation t = sphere_triangulation(0);
  ASSERT_EQ(t.sides.size(), 20u);
  // Adjacent icosahedron vertices on the unit sphere subtend arccos(1/sqrt 5).
  const double side = std::acos(1.0 / std::sqrt(5.0));
  for (const Sides& s : t.sides) {
    for (double x : s) EXPECT_NEAR(x, side, 1e-14);
  }
  EXPECT_EQ(t.vertices.size(), 12u);
}

TEST(SphereTriangulation, AreaDiameterAndNesting) {
  double prev_diam = 1e300;
  std::vector<Vec3> prev_vertices;
  for (int level = 0; level <= 4; ++level) {
    const GeodesicTriangulation t = sphere_triangulation(level);
    EXPECT_EQ(t.sides.size(), 20u << (2 * level));
    EXPECT_NEAR(total_area(t, Curvature(1.0)), 4 * pi, 1e-9);
    EXPECT_LT(t.max_diam, prev_diam);
    prev_diam = t.max_diam;
    for (std::size_t i = 0; i < prev_vertices.size(); ++i) {
      EXPECT_EQ(t.vertices[i].x, prev_vertices[i].x);
      EXPECT_EQ(t.vertices[i].y, prev_vertices[i].y);
      EXPECT_EQ(t.vertices[i].z, prev_vertices[i].z);
    }
    for (const Vec3& v : t.vertices) EXPECT_NEAR(norm(v), 1.0, 1e-15);
    // Sides are great-circle distances between the stored vertices.
    for (std::size_t f = 0; f < t.faces.size(); ++f) {
      for (int i = 0; i < 3; ++i) {
        const Vec3& u = t.vertices[t.faces[f][(i + 1) % 3]];
        const Vec3& w = t.vertices[t.faces[f][(i + 2) % 3]];
        EXPECT_NEAR(t.sides[f][i], std::acos(std::clamp(dot(u, w), -1.0, 1.0)), 1e-7);
      }
    }
    prev_vertices = t.vertices;
  }
}

TEST(ReplaceEuclidean, Octant) {
  const GeodesicTriangulation t = octant_triangulation(0);
  const KPolyhedron p = replace_euclidean(t);
  EXPECT_EQ(p.curvature().value(), 0.0);
  EXPECT_EQ(p.num_vertices(), 6);
  for (int v = 0; v < 6; ++v) EXPECT_NEAR(p.omega(v), 2 * pi / 3, 1e-14);
  EXPECT_NEAR(gauss_bonnet_residual(p), 0.0, 1e-13);
  EXPECT_EQ(p.side_lengths(), t.sides);
}

TEST(ReplaceKappa, Examples) {
  const GeodesicTriangulation t = sphere_triangulation(1);
  const KPolyhedron e = replace_euclidean(t), z = replace_kappa(t, Curvature(0.0));
  EXPECT_EQ(e.side_lengths(), z.side_lengths());
  for (int v = 0; v < e.num_vertices(); ++v) EXPECT_EQ(e.omega(v), z.omega(v));

  const KPolyhedron oct = replace_kappa(octant_triangulation(0), Curvature(1.0));
  for (int v = 0; v < oct.num_vertices(); ++v) EXPECT_NEAR(oct.omega(v), 0.0, 1e-14);

  EXPECT_THROW(replace_kappa(octant_triangulation(0), Curvature(4.0)), Error);
}

TEST(ReplaceKappa, AnglesIncreaseWithCurvatureAndCombinatoricsKept) {
  for (int level = 0; level <= 2; ++level) {
    const GeodesicTriangulation t = sphere_triangulation(level);
    const KPolyhedron h = replace_kappa(t, Curvature(-1.0));
    const KPolyhedron e = replace_kappa(t, Curvature(0.0));
    const KPolyhedron s = replace_kappa(t, Curvature(1.0));
    ASSERT_EQ(h.num_vertices(), s.num_vertices());
    EXPECT_EQ(h.euler_characteristic(), 2);
    EXPECT_EQ(s.euler_characteristic(), 2);
    for (int f = 0; f < s.num_faces(); ++f) {
      for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(h.vertex_of(f, i), s.vertex_of(f, i));
        EXPECT_LT(h.corner_angle(f, i), e.corner_angle(f, i));
        EXPECT_LT(e.corner_angle(f, i), s.corner_angle(f, i));
      }
    }
    EXPECT_TRUE(check_alexandrov(s).pass);
    for (const KPolyhedron* p : {&h, &e, &s}) {
      double a = 0.0;
      for (int v = 0; v < p->num_vertices(); ++v) a += std::fabs(p->omega(v));
      EXPECT_LE(std::fabs(gauss_bonnet_residual(*p)), 1e-8 * (1 + a));
    }
  }
}

TEST(Targets, TorusTriangulationIsExactlyFlat) {
  const FlatTorusTarget torus;
  for (int level = 0; level <= 3; ++level) {
    const KPolyhedron p = replace_euclidean(torus.triangulation(level));
    EXPECT_EQ(p.euler_characteristic(), 0);
    for (int v = 0; v < p.num_vertices(); ++v) EXPECT_NEAR(p.omega(v), 0.0, 1e-13);
  }
  EXPECT_NEAR(torus.distance({0.1, 0.1, 0}, {0.9, 0.9, 0}), 0.2 * std::sqrt(2.0), 1e-15);
}

TEST(Targets, SphereMatchedPointsAreNestedVertices) {
  const SphereTarget sphere;
  const auto pts = sphere.matched_points(42);
  ASSERT_EQ(pts.size(), 42u);
  const GeodesicTriangulation t1 = sphere.triangulation(1);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(norm(pts[i] - t1.vertices[i]), 0.0, 1e-15);
  EXPECT_NEAR(sphere.distance({1, 0, 0}, {0, 1, 0}), pi / 2, 1e-15);
}

TEST(Convergence, SphereTwelveMatchedVertices) {
  const SphereTarget sphere;
  const auto rows = convergence_experiment(sphere, {0, 1, 2, 3}, 12, 8);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].gh_upper, rows[i - 1].gh_upper);
    EXPECT_LT(rows[i].max_omega, rows[i - 1].max_omega);
    EXPECT_LT(rows[i].delta, rows[i - 1].delta);
  }
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_GE(rows[i - 1].gh_upper / rows[i].gh_upper, 2.0) << "level " << rows[i].level;
  }
}

TEST(Convergence, FlatTorusIsIsometricUpToGraphError) {
  const FlatTorusTarget torus;
  for (const auto& row : convergence_experiment(torus, {1, 2, 3}, 16, 8)) {
    EXPECT_LE(row.gh_upper, 0.02) << "level " << row.level;
    EXPECT_NEAR(row.max_omega, 0.0, 1e-12);
  }
}

TEST(Subdivide, KeepsCornersAndGluing) {
  for (const KPolyhedron& p : {cube(), doubled_square(), octant_sphere(), flat_torus(1)}) {
    const KPolyhedron q = subdivide(p);
    EXPECT_EQ(q.num_faces(), 4 * p.num_faces());
    EXPECT_EQ(q.euler_characteristic(), p.euler_characteristic());
    EXPECT_EQ(q.num_vertices(), p.num_vertices() + p.num_edges());
    // Old vertex classes map one-to-one onto classes of q with equal omega.
    std::vector<int> image(p.num_vertices(), -1);
    for (int t = 0; t < p.num_faces(); ++t) {
      for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(q.corner_angle(4 * t + i, i), p.corner_angle(t, i), 1e-12);
        int& img = image[p.vertex_of(t, i)];
        if (img == -1) img = q.vertex_of(4 * t + i, i);
        EXPECT_EQ(q.vertex_of(4 * t + i, i), img);
      }
    }
    std::sort(image.begin(), image.end());
    EXPECT_EQ(std::adjacent_find(image.begin(), image.end()), image.end());
    for (int t = 0; t < p.num_faces(); ++t) {
      EXPECT_NEAR(q.omega(q.vertex_of(4 * t, 0)), p.omega(p.vertex_of(t, 0)), 1e-12);
    }
    EXPECT_NEAR(q.total_area(), p.total_area(), 1e-12 * p.total_area());
  }
}

TEST(Semicontinuity, CubeAndDoubledSquare) {
  for (const auto& [p, expected] :
       std::vector<std::pair<KPolyhedron, double>>{{cube(), pi / 2}, {doubled_square(), pi}}) {
    const auto rows = semicontinuity_experiment(p, 0, 3);
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) {
      EXPECT_NEAR(r.omega_p, expected, 1e-12);
      EXPECT_LE(r.omega_p, p.omega(0) + 1e-9);
      EXPECT_LE(r.max_new_omega, 1e-12);
    }
  }
}

}  // namespace
}  // namespace kpoly
