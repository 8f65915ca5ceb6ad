#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "generators.hpp"
#include "kpoly/curvature_estimators.hpp"
#include "kpoly/errors.hpp"
#include "kpoly/fixtures.hpp"
#include "kpoly/local_chart.hpp"

namespace kpoly {
namespace {

using std::numbers::pi;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no kpoly::Error thrown";
  return Errc::kParse;
}

// Centre of a cube face: the midpoint of the diagonal of triangle 0.
SurfacePoint cube_face_center(const KPolyhedron& c) {
  for (int e = 0; e < 3; ++e) {
    if (std::fabs(c.edge_length({0, e}) - std::sqrt(2.0)) < 1e-12) return EdgeAnchor{0, e, 0.5};
  }
  ADD_FAILURE() << "no diagonal";
  return VertexAnchor{0};
}

TEST(ExcessRatio, OctantWithExactAngles) {
  TriangleSample s;
  s.sides = {pi / 2, pi / 2, pi / 2};
  s.angles = {pi / 2, pi / 2, pi / 2};
  EXPECT_NEAR(excess_ratio(s), (pi / 2) / sigma0(pi / 2, pi / 2, pi / 2), 1e-14);
  TriangleSample flat;
  flat.sides = {1, 1, 2};
  flat.angles = {0, 0, pi};
  EXPECT_EQ(code_of([&] { excess_ratio(flat); }), Errc::kDegenerateInput);
}

TEST(ModelRatio, Examples) {
  EXPECT_NEAR(model_ratio(Curvature(1), pi / 2, pi / 2, pi / 2, AreaKind::kModel), 1.0, 1e-14);
  EXPECT_NEAR(model_ratio(Curvature(-1), 1, 1, 1, AreaKind::kModel), -1.0, 1e-14);
  double prev = 1e300;
  for (double d : {0.2, 0.1, 0.05}) {
    const double err = std::fabs(model_ratio(Curvature(1), d, d, d) - 1.0);
    EXPECT_LT(err, prev / 3.5);  // O(delta^2): about 4x per halving
    EXPECT_LE(err, d * d);
    prev = err;
  }
  EXPECT_EQ(code_of([] { model_ratio(Curvature(0), 1, 1, 3); }), Errc::kInvalidTriangle);
}

TEST(ModelRatio, TrueAreaGivesCurvatureExactly) {
  CounterRng rng(51, 0);
  for (double k : {1.0, -1.0, 3.0, -0.2}) {
    for (int i = 0; i < 100; ++i) {
      const Sides s = testing::random_triangle(rng, Curvature(k), 1.2);
      EXPECT_NEAR(model_ratio(Curvature(k), s[0], s[1], s[2], AreaKind::kModel), k,
                  1e-12 * std::max(1.0, std::fabs(k)) * 10);
    }
  }
}

TEST(ModelRatio, EuclideanAreaApproachesTrueArea) {
  for (double k : {1.0, -1.0}) {
    for (double d : {0.5, 0.25, 0.1, 0.01}) {
      const double area = triangle_area(ModelTriangle::make(Curvature(k), d, d, d));
      EXPECT_LE(std::fabs(sigma0(d, d, d) / area - 1.0), d * d / 4);
    }
  }
}

TEST(LocalChart, VertexAndDiskCases) {
  const KPolyhedron c = cube();
  const LocalChart v = LocalChart::build(c, VertexAnchor{0}, 0.3);
  EXPECT_TRUE(v.at_vertex());
  EXPECT_NEAR(v.total_angle(), 1.5 * pi, 1e-14);
  // On a cone of angle 3 pi / 2 every gap is below pi: law of cosines.
  EXPECT_NEAR(v.distance({0.1, 0.0}, {0.2, 0.75 * pi}),
              std::sqrt(0.05 - 0.04 * std::cos(0.75 * pi)), 1e-15);
  EXPECT_NEAR(v.gap(0.1, 1.5 * pi - 0.1), 0.2, 1e-14);

  const LocalChart d = LocalChart::build(c, cube_face_center(c), 0.4);
  EXPECT_FALSE(d.at_vertex());
  EXPECT_NEAR(d.total_angle(), 2 * pi, 0.0);
  EXPECT_NEAR(d.distance({0.3, 0.0}, {0.4, pi / 2}), 0.5, 1e-15);

  EXPECT_EQ(code_of([&] { LocalChart::build(c, cube_face_center(c), 0.75); }), Errc::kDomain);
  // Every corner at vertex 0 is a pi / 4 corner whose opposite side is 1 away.
  EXPECT_NO_THROW(LocalChart::build(c, VertexAnchor{0}, 0.99));
  EXPECT_EQ(code_of([&] { LocalChart::build(c, VertexAnchor{0}, 1.01); }),
            Errc::kParameterOutOfRange);
  // A small torus wraps onto itself before meeting any curvature.
  EXPECT_EQ(code_of([] { LocalChart::build(flat_torus(1, 0.5), EdgeAnchor{0, 1, 0.5}, 0.4); }),
            Errc::kParameterOutOfRange);
}

TEST(LocalChart, EnclosesCenter) {
  const LocalChart d = LocalChart::build(cube(), cube_face_center(cube()), 0.4);
  EXPECT_TRUE(d.encloses_center({{{0.1, 0.0}, {0.1, 2.0}, {0.1, 4.0}}}));
  EXPECT_FALSE(d.encloses_center({{{0.1, 0.0}, {0.1, 1.0}, {0.1, 2.0}}}));
  const LocalChart v = LocalChart::build(cube(), VertexAnchor{0}, 0.3);
  EXPECT_TRUE(v.encloses_center({{{0.1, 0.0}, {0.1, 1.5}, {0.1, 3.0}}}));
}

TEST(LocalChart, AlongStaysOnTheGeodesic) {
  const LocalChart v = LocalChart::build(cube(), VertexAnchor{0}, 0.3);
  const LocalPoint a{0.2, 0.3}, b{0.25, 1.9};
  const double ab = v.distance(a, b);
  for (double f : {0.1, 0.5, 0.9}) {
    const LocalPoint m = v.along(a, b, f);
    EXPECT_NEAR(v.distance(a, m), f * ab, 1e-12);
    EXPECT_NEAR(v.distance(m, b), (1 - f) * ab, 1e-12);
  }
}

TEST(LocalChart, ChartDistanceBelowGraphDistance) {
  // Graph paths are surface curves, so they cannot beat the exact chart.
  CounterRng rng(53, 0);
  const KPolyhedron c = cube();
  const KPolyhedron o = octant_sphere();
  struct Case {
    const KPolyhedron* p;
    SurfacePoint x;
    double radius;
  };
  for (const Case& cs : {Case{&c, cube_face_center(c), 0.4}, Case{&c, VertexAnchor{0}, 0.45},
                         Case{&o, FaceAnchor{0, {0.3, 0.3, 0.4}}, 0.3}}) {
    const LocalChart ch = LocalChart::build(*cs.p, cs.x, cs.radius);
    const MetricGraph g = MetricGraph::build(*cs.p, 16);
    for (int i = 0; i < 30; ++i) {
      const LocalPoint a{rng.uniform(0.02, 0.9) * cs.radius, rng.uniform(0, ch.total_angle())};
      const LocalPoint b{rng.uniform(0.02, 0.9) * cs.radius, rng.uniform(0, ch.total_angle())};
      const double exact = ch.distance(a, b);
      const double graph = distance(g, ch.to_surface(a), ch.to_surface(b));
      EXPECT_GE(graph, exact - 1e-9);
      EXPECT_LE(graph, exact + 0.05);
      EXPECT_NEAR(distance(g, cs.x, ch.to_surface(a)), a.r, 0.05);
    }
  }
}

TEST(SampleTriangles, InvariantsOfEverySample) {
  const KPolyhedron c = cube();
  SamplingOptions o;
  o.angle_floor = 0.3;
  o.samples = 32;
  for (const SurfacePoint& x : {cube_face_center(c), SurfacePoint{VertexAnchor{2}}}) {
    const double delta = 0.2;
    for (const TriangleSample& s : sample_triangles(c, x, delta, o)) {
      EXPECT_TRUE(s.contains_x);
      EXPECT_LT(s.diam, delta);
      EXPECT_GE(s.min_angle, o.angle_floor);
      EXPECT_EQ(s.min_angle, std::min({s.angles[0], s.angles[1], s.angles[2]}));
      EXPECT_EQ(s.diam, std::max({s.sides[0], s.sides[1], s.sides[2]}));
      for (int i = 0; i < 3; ++i) {
        EXPECT_LT(s.sides[i], s.sides[(i + 1) % 3] + s.sides[(i + 2) % 3]);
      }
    }
  }
}

TEST(SampleTriangles, ExcessOracles) {
  SamplingOptions o;
  o.samples = 32;
  const KPolyhedron torus = flat_torus(4);
  for (const TriangleSample& s : sample_triangles(torus, FaceAnchor{5, {0.2, 0.3, 0.5}}, 0.1, o)) {
    EXPECT_NEAR(excess_e0(s.angles[0], s.angles[1], s.angles[2]), 0.0, 1e-9);
  }
  const KPolyhedron c = cube();
  for (const TriangleSample& s : sample_triangles(c, cube_face_center(c), 0.3, o)) {
    EXPECT_NEAR(excess_e0(s.angles[0], s.angles[1], s.angles[2]), 0.0, 1e-9);
  }
  // A triangle around a cone point has excess equal to its curvature.
  for (double delta : {0.4, 0.2, 0.1}) {
    for (const TriangleSample& s : sample_triangles(c, VertexAnchor{0}, delta, o)) {
      EXPECT_NEAR(excess_e0(s.angles[0], s.angles[1], s.angles[2]), pi / 2, 1e-9);
    }
  }
}

TEST(SampleTriangles, ErrorsAndDeterminism) {
  const KPolyhedron c = cube();
  SamplingOptions o;
  o.angle_floor = pi / 3 + 0.1;  // no triangle has all angles above pi / 3
  o.samples = 4;
  o.max_candidates_per_sample = 8;
  EXPECT_EQ(code_of([&] { sample_triangles(c, cube_face_center(c), 0.2, o); }),
            Errc::kInsufficientSamples);

  SamplingOptions p;
  p.seed = 9;
  p.policy = ExecutionPolicy::kSerial;
  const auto serial = sample_triangles(c, VertexAnchor{1}, 0.2, p);
  p.policy = ExecutionPolicy::kParallel;
  const auto parallel = sample_triangles(c, VertexAnchor{1}, 0.2, p);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].sides, parallel[i].sides);
    EXPECT_EQ(serial[i].angles, parallel[i].angles);
  }
}

TEST(EstimateBounds, FlatSphericalAndConical) {
  SamplingOptions o;
  o.angle_floor = 0.2;
  const auto torus = estimate_curvature_bounds(flat_torus(4), FaceAnchor{3, {0.3, 0.3, 0.4}},
                                               {0.1, 0.05}, o);
  for (const auto& r : torus) {
    EXPECT_LE(r.inf_ratio, r.sup_ratio);
    EXPECT_NEAR(r.inf_ratio, 0.0, 0.02);
    EXPECT_NEAR(r.sup_ratio, 0.0, 0.02);
    EXPECT_EQ(r.n_accepted, o.samples);
  }
  const auto sphere = estimate_curvature_bounds(octant_sphere(), FaceAnchor{2, {0.2, 0.5, 0.3}},
                                                {0.2, 0.1, 0.05}, o);
  for (const auto& r : sphere) {
    EXPECT_NEAR(r.inf_ratio, 1.0, 0.05);
    EXPECT_NEAR(r.sup_ratio, 1.0, 0.05);
  }
  EXPECT_LE(std::fabs(sphere.back().sup_ratio - 1), std::fabs(sphere.front().sup_ratio - 1));

  const auto cone = estimate_curvature_bounds(cube(), VertexAnchor{0}, {0.2, 0.1, 0.05}, o);
  for (std::size_t i = 1; i < cone.size(); ++i) {
    EXPECT_GE(cone[i].sup_ratio, 3.0 * cone[i - 1].sup_ratio);
  }
}

TEST(EstimateBounds, AngleFloorTightensTheRangeOnOnePool) {
  SamplingOptions o;
  o.samples = 128;
  const auto pool = sample_triangles(octant_sphere(), FaceAnchor{1, {0.4, 0.4, 0.2}}, 0.2, o);
  double prev_lo = -1e300, prev_hi = 1e300;
  for (double a : {0.0, 0.2, 0.4, 0.6}) {
    double lo = 1e300, hi = -1e300;
    for (const auto& s : pool) {
      if (s.min_angle < a) continue;
      lo = std::min(lo, excess_ratio(s));
      hi = std::max(hi, excess_ratio(s));
    }
    if (lo > hi) break;  // floor rejects the whole pool
    EXPECT_GE(lo, prev_lo);
    EXPECT_LE(hi, prev_hi);
    prev_lo = lo;
    prev_hi = hi;
  }
}

TEST(EstimateBounds, DeterministicAndValidated) {
  SamplingOptions o;
  o.seed = 77;
  o.samples = 16;
  const std::vector<double> deltas{0.2, 0.1};
  const auto a = estimate_curvature_bounds(cube(), VertexAnchor{3}, deltas, o);
  const auto b = estimate_curvature_bounds(cube(), VertexAnchor{3}, deltas, o);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].inf_ratio, b[i].inf_ratio);
    EXPECT_EQ(a[i].sup_ratio, b[i].sup_ratio);
  }
  EXPECT_EQ(code_of([&] {
              estimate_curvature_bounds(cube(), VertexAnchor{3}, {0.1, 0.2}, o);
            }),
            Errc::kParameterOutOfRange);
}

}  // namespace
}  // namespace kpoly
