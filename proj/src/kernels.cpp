#include "kpoly/kernels.hpp"

namespace kpoly {

std::vector<double> pairwise_distances(const AugmentedMetric& metric,
                                       ExecutionPolicy policy) {
  const int k = metric.num_points();
  std::vector<double> d(static_cast<std::size_t>(k) * k, 0.0);
  auto row = [&](int i) {
    const auto dist = metric.distances_from_point(i);
    for (int j = i + 1; j < k; ++j) d[i * k + j] = d[j * k + i] = dist[j];
  };
  if (policy == ExecutionPolicy::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < k; ++i) row(i);
  } else {
    for (int i = 0; i < k; ++i) row(i);
  }
  return d;
}

}  // namespace kpoly
