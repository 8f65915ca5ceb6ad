// Serial reference against the OpenMP kernel for the two hot loops.

#include <benchmark/benchmark.h>

#include "kpoly/approximation.hpp"
#include "kpoly/curvature_estimators.hpp"
#include "kpoly/fixtures.hpp"
#include "kpoly/gh_metric.hpp"
#include "kpoly/kernels.hpp"

namespace kpoly {
namespace {

ExecutionPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecutionPolicy::kSerial : ExecutionPolicy::kParallel;
}

void BM_PairwiseDistances(benchmark::State& state) {
  const KPolyhedron p = replace_euclidean(sphere_triangulation(2));
  const MetricGraph g = MetricGraph::build(p, 8);
  const PolyhedronSample s = sample_polyhedron(p, 42, 8);
  const AugmentedMetric am(g, s.points);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances(am, policy_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_PairwiseDistances)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SampleTriangles(benchmark::State& state) {
  const KPolyhedron p = octant_sphere();
  SamplingOptions o;
  o.samples = 256;
  o.angle_floor = 0.2;
  o.policy = policy_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_triangles(p, FaceAnchor{2, {0.2, 0.5, 0.3}}, 0.1, o));
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_SampleTriangles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace kpoly

BENCHMARK_MAIN();
