#include "kpoly/gh_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kpoly/errors.hpp"
#include "kpoly/random.hpp"

namespace kpoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_shape(const Correspondence& r, const FiniteMetricSpace& x,
                 const FiniteMetricSpace& y) {
  if (r.rows() != x.size() || r.cols() != y.size()) {
    throw Error(Errc::kShapeMismatch,
                "correspondence is " + std::to_string(r.rows()) + "x" +
                    std::to_string(r.cols()) + ", spaces have sizes " +
                    std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
}

struct Score {
  double dis = 0.0;
  int at_max = 0;  // number of pair-pairs attaining dis
  bool operator<(const Score& o) const {
    if (dis < o.dis - 1e-15) return true;
    if (dis > o.dis + 1e-15) return false;
    return at_max < o.at_max;
  }
};

Score score(const Correspondence& r, const FiniteMetricSpace& x,
            const FiniteMetricSpace& y) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < r.rows(); ++i) {
    for (int j = 0; j < r.cols(); ++j) {
      if (r(i, j)) rel.emplace_back(i, j);
    }
  }
  Score s;
  for (std::size_t a = 0; a < rel.size(); ++a) {
    for (std::size_t b = a + 1; b < rel.size(); ++b) {
      const double g = std::fabs(x(rel[a].first, rel[b].first) -
                                 y(rel[a].second, rel[b].second));
      if (g > s.dis + 1e-15) {
        s.dis = g;
        s.at_max = 1;
      } else if (g >= s.dis - 1e-15) {
        ++s.at_max;
      }
    }
  }
  return s;
}

std::vector<double> eccentricities(const FiniteMetricSpace& x) {
  std::vector<double> e(x.size(), 0.0);
  for (int i = 0; i < x.size(); ++i) {
    for (int j = 0; j < x.size(); ++j) e[i] = std::max(e[i], x(i, j));
  }
  return e;
}

std::vector<int> order_by(const std::vector<double>& key) {
  std::vector<int> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return key[a] < key[b]; });
  return idx;
}

// Adds, for every uncovered column (row), the pair raising distortion least.
void repair(Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  for (int j = 0; j < r.cols(); ++j) {
    bool covered = false;
    for (int i = 0; i < r.rows() && !covered; ++i) covered = r(i, j);
    if (covered) continue;
    int best_i = 0;
    Score best{kInf, 0};
    for (int i = 0; i < r.rows(); ++i) {
      r.set(i, j, true);
      const Score s = score(r, x, y);
      r.set(i, j, false);
      if (s < best) {
        best = s;
        best_i = i;
      }
    }
    r.set(best_i, j, true);
  }
  for (int i = 0; i < r.rows(); ++i) {
    bool covered = false;
    for (int j = 0; j < r.cols() && !covered; ++j) covered = r(i, j);
    if (covered) continue;
    int best_j = 0;
    Score best{kInf, 0};
    for (int j = 0; j < r.cols(); ++j) {
      r.set(i, j, true);
      const Score s = score(r, x, y);
      r.set(i, j, false);
      if (s < best) {
        best = s;
        best_j = j;
      }
    }
    r.set(i, best_j, true);
  }
}

// Steepest descent over toggle, row-reassign, column-reassign and row-swap
// moves.
void local_search(Correspondence& r, const FiniteMetricSpace& x,
                  const FiniteMetricSpace& y) {
  const int n = r.rows(), m = r.cols();
  Score current = score(r, x, y);
  for (int iter = 0; iter < 1000; ++iter) {
    Score best = current;
    Correspondence best_r = r;
    auto consider = [&](const Correspondence& c) {
      const Score s = score(c, x, y);
      if (s < best) {
        best = s;
        best_r = c;
      }
    };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        Correspondence c = r;
        c.set(i, j, !c(i, j));
        if (c.is_valid()) consider(c);

        Correspondence row = r;
        for (int jj = 0; jj < m; ++jj) row.set(i, jj, jj == j);
        repair(row, x, y);
        consider(row);

        Correspondence col = r;
        for (int ii = 0; ii < n; ++ii) col.set(ii, j, ii == i);
        repair(col, x, y);
        consider(col);
      }
    }
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = i1 + 1; i2 < n; ++i2) {
        Correspondence c = r;
        for (int j = 0; j < m; ++j) {
          c.set(i1, j, r(i2, j));
          c.set(i2, j, r(i1, j));
        }
        consider(c);
      }
    }
    if (!(best < current)) break;
    current = best;
    r = best_r;
  }
}

Correspondence eccentricity_seed(const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y) {
  const int n = x.size(), m = y.size();
  const auto ox = order_by(eccentricities(x));
  const auto oy = order_by(eccentricities(y));
  Correspondence r(n, m);
  for (int k = 0; k < n; ++k) {
    const int rank = n == 1 ? 0 : static_cast<int>(std::lround(
                                      static_cast<double>(k) * (m - 1) / (n - 1)));
    r.set(ox[k], oy[rank], true);
  }
  for (int k = 0; k < m; ++k) {
    const int rank = m == 1 ? 0 : static_cast<int>(std::lround(
                                      static_cast<double>(k) * (n - 1) / (m - 1)));
    r.set(ox[rank], oy[k], true);
  }
  return r;
}

// Branch and bound over the cells of the relation matrix in row-major
// order. Partial distortion only grows as pairs are added, so any branch at
// or above the incumbent is cut.
class ExactSearch {
 public:
  ExactSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double incumbent,
              Correspondence best)
      : x_(x), y_(y), n_(x.size()), m_(y.size()), best_dis_(incumbent),
        best_(std::move(best)), cur_(n_, m_), col_count_(m_, 0) {}

  void run() { visit(0, 0, 0.0, 0); }
  double best_dis() const { return best_dis_; }
  const Correspondence& best() const { return best_; }

 private:
  void visit(int i, int j, double dis, int row_count) {
    if (j == m_) {
      if (row_count == 0) return;
      if (i + 1 == n_) {
        if (dis < best_dis_) {
          best_dis_ = dis;
          best_ = cur_;
        }
        return;
      }
      visit(i + 1, 0, dis, 0);
      return;
    }
    // Include (i, j).
    double nd = dis;
    for (const auto& [pi, pj] : rel_) {
      nd = std::max(nd, std::fabs(x_(i, pi) - y_(j, pj)));
      if (nd >= best_dis_) break;
    }
    if (nd < best_dis_) {
      rel_.emplace_back(i, j);
      cur_.set(i, j, true);
      ++col_count_[j];
      visit(i, j + 1, nd, row_count + 1);
      --col_count_[j];
      cur_.set(i, j, false);
      rel_.pop_back();
    }
    // Exclude (i, j), unless that leaves row i or column j uncoverable.
    const bool row_dead = (j + 1 == m_) && row_count == 0;
    const bool col_dead = (i + 1 == n_) && col_count_[j] == 0;
    if (!row_dead && !col_dead) visit(i, j + 1, dis, row_count);
  }

  const FiniteMetricSpace& x_;
  const FiniteMetricSpace& y_;
  int n_, m_;
  double best_dis_;
  Correspondence best_;
  Correspondence cur_;
  std::vector<int> col_count_;
  std::vector<std::pair<int, int>> rel_;
};

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(int n, std::vector<double> d)
    : n_(n), d_(std::move(d)) {
  if (n < 1 || static_cast<int>(d_.size()) != n * n) {
    throw Error(Errc::kInvalidMetric, "distance matrix must be n x n with n >= 1");
  }
  for (int i = 0; i < n; ++i) {
    if (d_[i * n + i] != 0.0) throw Error(Errc::kInvalidMetric, "non-zero diagonal");
    for (int j = 0; j < n; ++j) {
      const double a = d_[i * n + j], b = d_[j * n + i];
      if (!std::isfinite(a)) throw Error(Errc::kInvalidMetric, "non-finite distance");
      if (std::fabs(a - b) > 1e-12 * std::max(1.0, std::fabs(a))) {
        throw Error(Errc::kInvalidMetric, "matrix is not symmetric");
      }
      if (i != j && !(a > 0.0)) {
        throw Error(Errc::kInvalidMetric, "distinct points at distance 0");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (d_[i * n + k] > d_[i * n + j] + d_[j * n + k] + 1e-9) {
          throw Error(Errc::kInvalidMetric, "triangle inequality fails");
        }
      }
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_points(std::span<const double> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> d(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i * n + j] = std::fabs(pts[i] - pts[j]);
  }
  return FiniteMetricSpace(n, std::move(d));
}

double FiniteMetricSpace::diameter() const {
  return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

FiniteMetricSpace FiniteMetricSpace::scaled(double s) const {
  std::vector<double> d = d_;
  for (double& v : d) v *= s;
  return FiniteMetricSpace(n_, std::move(d));
}

Correspondence Correspondence::identity(int n) {
  Correspondence r(n, n);
  for (int i = 0; i < n; ++i) r.set(i, i, true);
  return r;
}

bool Correspondence::is_valid() const {
  for (int i = 0; i < rows_; ++i) {
    bool any = false;
    for (int j = 0; j < cols_ && !any; ++j) any = (*this)(i, j);
    if (!any) return false;
  }
  for (int j = 0; j < cols_; ++j) {
    bool any = false;
    for (int i = 0; i < rows_ && !any; ++i) any = (*this)(i, j);
    if (!any) return false;
  }
  return true;
}

int Correspondence::count() const {
  return static_cast<int>(std::count(r_.begin(), r_.end(), std::uint8_t{1}));
}

double distortion(const Correspondence& r, const FiniteMetricSpace& x,
                  const FiniteMetricSpace& y) {
  check_shape(r, x, y);
  return score(r, x, y).dis;
}

GhResult gh_exact_certified(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                            int size_limit) {
  if (std::max(x.size(), y.size()) > size_limit) {
    throw Error(Errc::kSizeLimitExceeded,
                "exact GH limited to " + std::to_string(size_limit) + " points");
  }
  GhResult seed = gh_upper_bound(x, y, 2, 0);
  const double incumbent = 2.0 * seed.value;
  ExactSearch search(x, y, incumbent, seed.certificate);
  search.run();
  return {0.5 * distortion(search.best(), x, y), search.best()};
}

double gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, int size_limit) {
  return gh_exact_certified(x, y, size_limit).value;
}

// For (x, y) in a correspondence of distortion e, every distance from x is
// within e of some distance from y and vice versa, so the Hausdorff distance
// between the distance sets {d(x, .)} and {d(y, .)} is at most e. Since
// every point has a partner, e bounds the max-min of that Hausdorff cost in
// both directions.
double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const int n = x.size(), m = y.size();
  auto profile = [](const FiniteMetricSpace& s, int i) {
    std::vector<double> row(s.size());
    for (int j = 0; j < s.size(); ++j) row[j] = s(i, j);
    std::sort(row.begin(), row.end());
    return row;
  };
  auto one_sided = [](const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (double v : a) {
      const auto it = std::lower_bound(b.begin(), b.end(), v);
      double nearest = kInf;
      if (it != b.end()) nearest = std::min(nearest, *it - v);
      if (it != b.begin()) nearest = std::min(nearest, v - *(it - 1));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  std::vector<std::vector<double>> px(n), py(m);
  for (int i = 0; i < n; ++i) px[i] = profile(x, i);
  for (int j = 0; j < m; ++j) py[j] = profile(y, j);
  std::vector<double> cost(n * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      cost[i * m + j] = std::max(one_sided(px[i], py[j]), one_sided(py[j], px[i]));
    }
  }
  double local = 0.0;
  for (int i = 0; i < n; ++i) {
    double best = kInf;
    for (int j = 0; j < m; ++j) best = std::min(best, cost[i * m + j]);
    local = std::max(local, best);
  }
  for (int j = 0; j < m; ++j) {
    double best = kInf;
    for (int i = 0; i < n; ++i) best = std::min(best, cost[i * m + j]);
    local = std::max(local, best);
  }
  const double diam_gap = std::fabs(x.diameter() - y.diameter());
  return 0.5 * std::max(diam_gap, local);
}

GhResult gh_upper_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        int restarts, std::uint64_t seed) {
  const int n = x.size(), m = y.size();
  Correspondence best = eccentricity_seed(x, y);
  local_search(best, x, y);
  Score best_score = score(best, x, y);
  for (int r = 0; r < restarts && best_score.dis > 0.0; ++r) {
    CounterRng rng(seed, static_cast<std::uint64_t>(r));
    Correspondence c(n, m);
    for (int i = 0; i < n; ++i) c.set(i, static_cast<int>(rng.below(m)), true);
    repair(c, x, y);
    local_search(c, x, y);
    const Score s = score(c, x, y);
    if (s < best_score) {
      best_score = s;
      best = c;
    }
  }
  return {0.5 * best_score.dis, best};
}

GhResult gh_matched_upper(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (x.size() != y.size()) {
    throw Error(Errc::kShapeMismatch, "matched correspondence needs equal sizes");
  }
  Correspondence r = Correspondence::identity(x.size());
  return {0.5 * distortion(r, x, y), r};
}

PolyhedronSample sample_polyhedron(const KPolyhedron& p, int k, int m,
                                   std::optional<std::uint64_t> seed) {
  if (k < 2) throw Error(Errc::kParameterOutOfRange, "need k >= 2 sample points");
  const MetricGraph g = MetricGraph::build(p, m);
  if (k > g.num_nodes()) {
    throw Error(Errc::kParameterOutOfRange,
                "k exceeds the " + std::to_string(g.num_nodes()) + " graph nodes");
  }
  int start = 0;
  if (seed) start = static_cast<int>(CounterRng(*seed, 0).below(g.num_nodes()));

  PolyhedronSample out;
  std::vector<std::vector<double>> rows;
  std::vector<double> nearest(g.num_nodes(), kInf);
  int next = start;
  for (int s = 0; s < k; ++s) {
    out.nodes.push_back(next);
    rows.push_back(g.distances_from_node(next));
    const auto& row = rows.back();
    for (int v = 0; v < g.num_nodes(); ++v) nearest[v] = std::min(nearest[v], row[v]);
    // Farthest node from the current sample; lowest id wins ties.
    next = static_cast<int>(std::max_element(nearest.begin(), nearest.end()) -
                            nearest.begin());
  }
  std::vector<double> d(k * k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      d[i * k + j] = d[j * k + i] = rows[i][out.nodes[j]];
    }
  }
  out.space = FiniteMetricSpace(k, std::move(d));
  for (int node : out.nodes) out.points.push_back(g.node_point(node));
  return out;
}

}  // namespace kpoly
