#pragma once

// Sampling estimators of the lower / upper curvature at a point of a
// kappa-polyhedron through excess-over-area ratios of small geodesic
// triangles around it.

#include <array>
#include <cstdint>
#include <vector>

#include "kpoly/kernels.hpp"
#include "kpoly/kpolyhedron.hpp"
#include "kpoly/local_chart.hpp"
#include "kpoly/metric_graph.hpp"

namespace kpoly {

struct TriangleSample {
  std::array<SurfacePoint, 3> vertices;
  std::array<double, 3> sides{};   // side i opposite vertex i
  std::array<double, 3> angles{};  // measured angle at vertex i
  bool contains_x = false;
  double min_angle = 0.0;
  double diam = 0.0;
};

// e0(angles) / sigma0(sides); kDegenerateInput when sigma0 vanishes.
double excess_ratio(const TriangleSample& s);

enum class AreaKind { kEuclidean, kModel };

// e0 over the Euclidean comparison area (default) or the true M_kappa area
// of the model triangle.
double model_ratio(Curvature kappa, double a, double b, double c,
                   AreaKind area = AreaKind::kEuclidean);

struct SamplingOptions {
  double angle_floor = 0.0;
  int samples = 64;
  std::uint64_t seed = 0;
  ExecutionPolicy policy = ExecutionPolicy::kParallel;
  // Candidates drawn per requested sample before giving up.
  int max_candidates_per_sample = 64;
  // Random stream offset; distinct offsets give independent pools.
  std::uint64_t stream = 0;
};

// Up to options.samples triangles with vertices at distance in
// [delta/4, delta/2) from x, diameter < delta, x inside and every angle at
// least angle_floor. Throws kInsufficientSamples when none qualifies.
std::vector<TriangleSample> sample_triangles(const KPolyhedron& p, const SurfacePoint& x,
                                             double delta, const SamplingOptions& options);

// The same on a prebuilt chart (radius >= delta).
std::vector<TriangleSample> sample_triangles(const LocalChart& chart, double delta,
                                             const SamplingOptions& options);

struct CurvatureRow {
  double delta = 0.0;
  double inf_ratio = 0.0;
  double sup_ratio = 0.0;
  int n_accepted = 0;
};

// One row per delta (strictly decreasing); scale i draws from stream i.
std::vector<CurvatureRow> estimate_curvature_bounds(const KPolyhedron& p,
                                                    const SurfacePoint& x,
                                                    const std::vector<double>& deltas,
                                                    const SamplingOptions& options);

// Measured angle at `vertex` of the geodesic triangle (vertex, b, c):
// comparison angles at probe distance t and t/2 along the sides combined by
// one Richardson step.
double probe_angle(const LocalChart& chart, const LocalPoint& vertex, const LocalPoint& b,
                   const LocalPoint& c, double t);

}  // namespace kpoly
