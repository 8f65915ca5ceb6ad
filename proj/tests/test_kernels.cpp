#include <gtest/gtest.h>

#include <omp.h>

#include "kpoly/approximation.hpp"
#include "kpoly/curvature_estimators.hpp"
#include "kpoly/fixtures.hpp"
#include "kpoly/gh_metric.hpp"
#include "kpoly/kernels.hpp"

namespace kpoly {
namespace {

class Threads : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

TEST_P(Threads, PairwiseDistancesMatchSerialBitForBit) {
  const KPolyhedron p = replace_euclidean(sphere_triangulation(2));
  const PolyhedronSample s = sample_polyhedron(p, 24, 3);
  const MetricGraph g = MetricGraph::build(p, 3);
  const AugmentedMetric am(g, s.points);
  const auto serial = pairwise_distances(am, ExecutionPolicy::kSerial);
  const auto parallel = pairwise_distances(am, ExecutionPolicy::kParallel);
  EXPECT_EQ(serial, parallel);
  const int k = am.num_points();
  for (int i = 0; i < k; ++i) {
    EXPECT_EQ(serial[i * k + i], 0.0);
    for (int j = 0; j < k; ++j) EXPECT_EQ(serial[i * k + j], serial[j * k + i]);
  }
}

TEST_P(Threads, TriangleSamplesMatchSerialBitForBit) {
  SamplingOptions o;
  o.samples = 48;
  o.angle_floor = 0.25;
  o.seed = 4;
  o.policy = ExecutionPolicy::kSerial;
  const auto serial = sample_triangles(cube(), VertexAnchor{5}, 0.3, o);
  o.policy = ExecutionPolicy::kParallel;
  const auto parallel = sample_triangles(cube(), VertexAnchor{5}, 0.3, o);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].sides, parallel[i].sides);
    EXPECT_EQ(serial[i].angles, parallel[i].angles);
  }
}

TEST_P(Threads, ConvergenceTableIndependentOfPolicy) {
  const SphereTarget sphere;
  const auto a = convergence_experiment(sphere, {0, 1}, 12, 4, ExecutionPolicy::kSerial);
  const auto b = convergence_experiment(sphere, {0, 1}, 12, 4, ExecutionPolicy::kParallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].gh_upper, b[i].gh_upper);
    EXPECT_EQ(a[i].max_omega, b[i].max_omega);
  }
}

INSTANTIATE_TEST_SUITE_P(ThreadCounts, Threads, ::testing::Values(1, 2, 4));

}  // namespace
}  // namespace kpoly
