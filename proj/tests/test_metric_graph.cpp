#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>

#include "kpoly/errors.hpp"
#include "kpoly/fixtures.hpp"
#include "kpoly/metric_graph.hpp"
#include "kpoly/random.hpp"

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

// Vertices sharing no triangle with v.
std::vector<int> non_neighbours(const KPolyhedron& p, int v) {
  std::set<int> near{v};
  for (const Corner& c : p.corners_of(v)) {
    for (int i = 0; i < 3; ++i) near.insert(p.vertex_of(c.triangle, i));
  }
  std::vector<int> out;
  for (int u = 0; u < p.num_vertices(); ++u) {
    if (!near.count(u)) out.push_back(u);
  }
  return out;
}

// Random anchors of every kind.
SurfacePoint random_point(CounterRng& rng, const KPolyhedron& p) {
  switch (rng.below(3)) {
    case 0:
      return VertexAnchor{static_cast<int>(rng.below(p.num_vertices()))};
    case 1:
      return EdgeAnchor{static_cast<int>(rng.below(p.num_faces())), static_cast<int>(rng.below(3)),
                        rng.uniform(0.05, 0.95)};
    default: {
      std::array<double, 3> w{rng.uniform(0.05, 1), rng.uniform(0.05, 1), rng.uniform(0.05, 1)};
      const double s = w[0] + w[1] + w[2];
      for (double& x : w) x /= s;
      return FaceAnchor{static_cast<int>(rng.below(p.num_faces())), w};
    }
  }
}

TEST(MetricGraph, TetrahedronSkeletonAtZeroResolution) {
  const KPolyhedron p = tetrahedron();
  const MetricGraph g = MetricGraph::build(p, 0);
  EXPECT_EQ(g.num_nodes(), 4);
  for (int u = 0; u < g.num_nodes(); ++u) {
    std::set<int> targets;
    for (const auto& a : g.arcs_from(u)) {
      EXPECT_NEAR(a.weight, 1.0, 1e-15);
      targets.insert(a.to);
    }
    EXPECT_EQ(targets.size(), 3u);
    EXPECT_FALSE(targets.count(u));
  }
}

TEST(MetricGraph, MidpointNodesMatchChartDistances) {
  // Two 3-4-5 triangles glued along all three sides.
  const std::vector<Sides> sides{{3, 4, 5}, {3, 4, 5}};
  GluingMap g;
  g.pairs = {{{0, 0}, {1, 0}, true}, {{0, 1}, {1, 1}, true}, {{0, 2}, {1, 2}, true}};
  const KPolyhedron p = KPolyhedron::build(Curvature(0), sides, g);
  const MetricGraph mg = MetricGraph::build(p, 1);
  EXPECT_EQ(mg.num_nodes(), p.num_vertices() + 3);

  const auto chart = chart_embed(p.triangle(0));
  const ModelSpace plane(Curvature(0));
  // Oracle positions in triangle 0: corners and edge midpoints.
  std::vector<Vec3> expect(mg.num_nodes());
  for (const auto& b : mg.boundary(0)) expect[b.node] = b.position;
  for (int e = 0; e < 3; ++e) {
    const Vec3 mid = 0.5 * (chart[edge_start_corner(e)] + chart[edge_end_corner(e)]);
    bool found = false;
    for (const auto& b : mg.boundary(0)) found |= norm(b.position - mid) < 1e-14;
    EXPECT_TRUE(found) << "midpoint of edge " << e;
  }
  for (int u = 0; u < mg.num_nodes(); ++u) {
    for (const auto& a : mg.arcs_from(u)) {
      EXPECT_NEAR(a.weight, norm(expect[u] - expect[a.to]), 1e-14);
    }
  }
}

TEST(MetricGraph, ArcWeightsSymmetricAndPositive) {
  for (const KPolyhedron& p : {cube(), octant_sphere(), flat_torus(2)}) {
    const MetricGraph g = MetricGraph::build(p, 3);
    for (int u = 0; u < g.num_nodes(); ++u) {
      for (const auto& a : g.arcs_from(u)) {
        EXPECT_GT(a.weight, 0.0);
        bool back = false;
        for (const auto& b : g.arcs_from(a.to)) back |= b.to == u && b.weight == a.weight;
        EXPECT_TRUE(back);
      }
    }
    // Connected: every node reachable.
    for (double d : g.distances_from_node(0)) EXPECT_TRUE(std::isfinite(d));
  }
}

TEST(Distance, Examples) {
  const KPolyhedron c = cube();
  int e = 0;
  while (std::fabs(c.edge_length({0, e}) - 1.0) > 1e-12) ++e;
  const SurfacePoint u = VertexAnchor{c.vertex_of(0, edge_start_corner(e))};
  const SurfacePoint v = VertexAnchor{c.vertex_of(0, edge_end_corner(e))};
  for (int m : {0, 1, 4, 16}) EXPECT_NEAR(distance(c, u, v, m), 1.0, 1e-14);

  const KPolyhedron o = octant_sphere();
  const SurfacePoint north = VertexAnchor{0};
  const auto far = non_neighbours(o, 0);
  ASSERT_EQ(far.size(), 1u);
  EXPECT_NEAR(distance(o, north, VertexAnchor{far[0]}, 32), pi, 2e-2);
  const SurfacePoint f = FaceAnchor{3, {0.2, 0.3, 0.5}};
  EXPECT_EQ(distance(o, f, f, 8), 0.0);
  EXPECT_EQ(distance(o, north, north, 8), 0.0);
}

TEST(Distance, RoundSphereOracle) {
  // The great-circle distance is a lower bound; the graph approaches it.
  const KPolyhedron o = octant_sphere();
  const SurfacePoint a = EdgeAnchor{0, 0, 0.5};
  const SurfacePoint b = FaceAnchor{5, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
  double prev = 1e300;
  for (int m : {0, 1, 3, 7, 15}) {
    const double d = distance(o, a, b, m);
    EXPECT_LE(d, prev + 1e-12);
    prev = d;
  }
}

TEST(Distance, AnchorErrors) {
  const KPolyhedron c = cube();
  EXPECT_EQ(code_of([&] { distance(c, VertexAnchor{99}, VertexAnchor{0}, 1); }),
            Errc::kAnchorInvalid);
  EXPECT_EQ(code_of([&] { distance(c, EdgeAnchor{0, 0, 1.0}, VertexAnchor{0}, 1); }),
            Errc::kAnchorInvalid);
  EXPECT_EQ(code_of([&] { distance(c, EdgeAnchor{0, 3, 0.5}, VertexAnchor{0}, 1); }),
            Errc::kAnchorInvalid);
  EXPECT_EQ(code_of([&] { distance(c, FaceAnchor{0, {0.5, 0.5, 0.0}}, VertexAnchor{0}, 1); }),
            Errc::kAnchorInvalid);
  EXPECT_EQ(code_of([&] { distance(c, FaceAnchor{12, {}}, VertexAnchor{0}, 1); }),
            Errc::kAnchorInvalid);
}

TEST(Distance, EdgeAnchorIsTheSamePointFromBothSides) {
  const KPolyhedron c = cube();
  const EdgeSlot s{0, 1};
  const EdgeSlot o = c.partner(s);
  const bool flipped = c.pair_flipped(c.pair_of(s));
  const double t = 0.3;
  const SurfacePoint a = EdgeAnchor{s.triangle, s.edge, t};
  const SurfacePoint b = EdgeAnchor{o.triangle, o.edge, flipped ? t : 1.0 - t};
  EXPECT_NEAR(distance(c, a, b, 4), 0.0, 1e-14);
}

TEST(Distance, PseudometricOnRandomPoints) {
  CounterRng rng(21, 0);
  for (const KPolyhedron& p : {cube(), octant_sphere(), flat_torus(2), icosahedron()}) {
    std::vector<SurfacePoint> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(random_point(rng, p));
    const MetricGraph g = MetricGraph::build(p, 4);
    const AugmentedMetric am(g, pts);
    std::vector<std::vector<double>> d;
    for (int i = 0; i < am.num_points(); ++i) d.push_back(am.distances_from_point(i));
    for (int i = 0; i < 8; ++i) {
      EXPECT_EQ(d[i][i], 0.0);
      for (int j = 0; j < 8; ++j) {
        EXPECT_NEAR(d[i][j], d[j][i], 1e-12);
        // Other query points are extra nodes, so joint distances can only be shorter.
        EXPECT_LE(d[i][j], distance(g, pts[i], pts[j]) + 1e-12);
        for (int k = 0; k < 8; ++k) EXPECT_LE(d[i][k], d[i][j] + d[j][k] + 1e-9);
      }
    }
  }
}

TEST(Distance, NonIncreasingUnderNestedRefinement) {
  CounterRng rng(23, 0);
  for (const KPolyhedron& p : {cube(), octant_sphere(), doubled_square()}) {
    for (int trial = 0; trial < 10; ++trial) {
      const SurfacePoint a = random_point(rng, p), b = random_point(rng, p);
      double prev = 1e300;
      for (int m : {0, 1, 3, 7, 15}) {
        const double d = distance(p, a, b, m);
        EXPECT_LE(d, prev + 1e-12);
        prev = d;
      }
    }
  }
}

TEST(Distance, UpperBoundsFlatTorusDistance) {
  // The unit torus from two triangles: exact distance is the wrapped
  // Euclidean one between developed positions.
  const KPolyhedron t = flat_torus(1);
  CounterRng rng(29, 0);
  const MetricGraph g = MetricGraph::build(t, 8);
  for (int trial = 0; trial < 30; ++trial) {
    const SurfacePoint a = random_point(rng, t), b = random_point(rng, t);
    const auto la = g.locate(a), lb = g.locate(b);
    // Both triangles share the chart frame of a unit-square cell up to a
    // translation, so compare against the minimum over lattice shifts.
    auto cell = [&](const MetricGraph::Location& l) {
      if (l.placements.empty()) return Vec3{};  // the single vertex
      const auto& pl = l.placements.front();
      const auto& ch = g.chart(pl.triangle);
      const ModelSpace plane(Curvature(0));
      const auto w = plane.barycentric(ch, pl.position);
      // Lower triangle: (0,0), (1,0), (1,1); upper: (0,0), (1,1), (0,1).
      const bool lower = pl.triangle == 0;
      const Vec3 c0{0, 0, 0}, c1 = lower ? Vec3{1, 0, 0} : Vec3{1, 1, 0},
                 c2 = lower ? Vec3{1, 1, 0} : Vec3{0, 1, 0};
      return w[0] * c0 + w[1] * c1 + w[2] * c2;
    };
    const Vec3 pa = cell(la), pb = cell(lb);
    double exact = 1e300;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        exact = std::min(exact, norm(pa - pb + Vec3{double(dx), double(dy), 0}));
      }
    }
    const double d = distance(g, a, b);
    EXPECT_GE(d, exact - 1e-12);
    EXPECT_LE(d, exact + 0.2);
  }
}

}  // namespace
}  // namespace kpoly
