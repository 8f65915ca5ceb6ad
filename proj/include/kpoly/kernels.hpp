#pragma once

// Hot loops with an OpenMP version and a serial reference. Both produce
// bit-identical results: work items are independent and written to fixed
// slots.

#include <vector>

#include "kpoly/metric_graph.hpp"

namespace kpoly {

enum class ExecutionPolicy { kSerial, kParallel };

// Row-major k x k matrix of shortest-path distances between the query
// points; entry (i, j) and (j, i) both come from the run sourced at
// min(i, j), so the matrix is exactly symmetric.
std::vector<double> pairwise_distances(const AugmentedMetric& metric,
                                       ExecutionPolicy policy);

}  // namespace kpoly
