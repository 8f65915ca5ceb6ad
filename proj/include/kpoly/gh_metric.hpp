#pragma once

// Gromov-Hausdorff machinery on finite metric spaces: correspondences, their
// distortion, an exact branch-and-bound solver for small spaces, and
// certified lower / upper bounds.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kpoly/kpolyhedron.hpp"
#include "kpoly/metric_graph.hpp"

namespace kpoly {

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // Row-major n x n matrix; validated (symmetric, zero diagonal, positive
  // off-diagonal, triangle inequality to 1e-9). Throws kInvalidMetric.
  FiniteMetricSpace(int n, std::vector<double> d);
  static FiniteMetricSpace from_points(std::span<const double> line_points);

  int size() const { return n_; }
  double operator()(int i, int j) const { return d_[i * n_ + j]; }
  const std::vector<double>& matrix() const { return d_; }
  double diameter() const;
  FiniteMetricSpace scaled(double s) const;

 private:
  int n_ = 0;
  std::vector<double> d_;
};

class Correspondence {
 public:
  Correspondence(int rows, int cols) : rows_(rows), cols_(cols), r_(rows * cols, 0) {}
  static Correspondence identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool operator()(int i, int j) const { return r_[i * cols_ + j] != 0; }
  void set(int i, int j, bool v) { r_[i * cols_ + j] = v ? 1 : 0; }
  // Every row and every column has at least one related entry.
  bool is_valid() const;
  int count() const;

 private:
  int rows_;
  int cols_;
  std::vector<std::uint8_t> r_;
};

// sup |d_X(x1,x2) - d_Y(y1,y2)| over related pairs (x1,y1), (x2,y2).
double distortion(const Correspondence& r, const FiniteMetricSpace& x,
                  const FiniteMetricSpace& y);

struct GhResult {
  double value = 0.0;
  Correspondence certificate{0, 0};
};

inline constexpr int kDefaultGhSizeLimit = 6;

// Half the minimum distortion over all correspondences. Throws
// kSizeLimitExceeded when max(n, m) > size_limit.
double gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                int size_limit = kDefaultGhSizeLimit);
GhResult gh_exact_certified(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                            int size_limit = kDefaultGhSizeLimit);

// max of half the diameter gap and half the largest row-profile gap
// (see the implementation note); never exceeds the exact value.
double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

// Half the distortion of the best correspondence found by eccentricity
// seeding plus local search; the certificate is returned.
GhResult gh_upper_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        int restarts = 8, std::uint64_t seed = 0);

// Half the distortion of the index-matched bijection between equal-size
// spaces.
GhResult gh_matched_upper(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

struct PolyhedronSample {
  FiniteMetricSpace space;
  std::vector<SurfacePoint> points;
  std::vector<int> nodes;  // graph node of each sampled point
};

// Farthest-point sampling of k graph nodes, seeded at vertex class 0 (or at
// a node drawn from seed when given).
PolyhedronSample sample_polyhedron(const KPolyhedron& p, int k, int m,
                                   std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace kpoly
