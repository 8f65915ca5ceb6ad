#include "kpoly/curvature_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "kpoly/errors.hpp"
#include "kpoly/random.hpp"

namespace kpoly {

double excess_ratio(const TriangleSample& s) {
  const bool valid = ModelTriangle::is_valid(Curvature(0.0), s.sides[0], s.sides[1], s.sides[2]);
  const double area = valid ? sigma0(s.sides[0], s.sides[1], s.sides[2]) : 0.0;
  if (!(area > 0.0)) throw Error(Errc::kDegenerateInput, "sample has zero comparison area");
  return excess_e0(s.angles[0], s.angles[1], s.angles[2]) / area;
}

double model_ratio(Curvature kappa, double a, double b, double c, AreaKind area) {
  const ModelTriangle t = ModelTriangle::make(kappa, a, b, c);
  const auto ang = t.angles();
  const double e0 = excess_e0(ang[0], ang[1], ang[2]);
  return e0 / (area == AreaKind::kModel ? triangle_area(t) : sigma0(a, b, c));
}

double probe_angle(const LocalChart& chart, const LocalPoint& vertex, const LocalPoint& b,
                   const LocalPoint& c, double t) {
  const double db = chart.distance(vertex, b), dc = chart.distance(vertex, c);
  auto at = [&](double s) {
    const LocalPoint pb = chart.along(vertex, b, s / db);
    const LocalPoint pc = chart.along(vertex, c, s / dc);
    return comparison_angle(chart.curvature(), s, s, chart.distance(pb, pc));
  };
  return 2.0 * at(0.5 * t) - at(t);
}

namespace {

std::optional<TriangleSample> candidate(const LocalChart& chart, double delta,
                                        double angle_floor, std::uint64_t seed,
                                        std::uint64_t stream, std::uint64_t index) {
  CounterRng rng(seed ^ splitmix64(stream), index);
  const double theta = chart.total_angle();
  const double psi0 = rng.uniform(0.0, theta);
  std::array<LocalPoint, 3> v;
  for (int j = 0; j < 3; ++j) {
    const double jitter = rng.uniform(-theta / 12.0, theta / 12.0);
    const double r = rng.uniform(0.25 * delta, 0.5 * delta);
    v[j] = {r, std::fmod(psi0 + j * theta / 3.0 + jitter, theta)};
  }
  TriangleSample s;
  s.contains_x = chart.encloses_center(v);
  s.sides = {chart.distance(v[1], v[2]), chart.distance(v[2], v[0]), chart.distance(v[0], v[1])};
  s.diam = std::max({s.sides[0], s.sides[1], s.sides[2]});
  if (!s.contains_x || !(s.diam < delta)) return std::nullopt;
  if (!(std::min({s.sides[0], s.sides[1], s.sides[2]}) > 0.0)) return std::nullopt;
  for (int j = 0; j < 3; ++j) {
    const int b = (j + 1) % 3, c = (j + 2) % 3;
    // Sides at vertex j are side c (to b) and side b (to c).
    const double t = std::min(delta / 8.0, 0.5 * std::min(s.sides[c], s.sides[b]));
    s.angles[j] = probe_angle(chart, v[j], v[b], v[c], t);
  }
  s.min_angle = std::min({s.angles[0], s.angles[1], s.angles[2]});
  if (s.min_angle < angle_floor) return std::nullopt;
  for (int j = 0; j < 3; ++j) s.vertices[j] = chart.to_surface(v[j]);
  return s;
}

}  // namespace

std::vector<TriangleSample> sample_triangles(const LocalChart& chart, double delta,
                                             const SamplingOptions& o) {
  if (!(delta > 0.0) || delta > chart.radius() * (1.0 + 1e-12)) {
    throw Error(Errc::kParameterOutOfRange, "delta must lie in (0, chart radius]");
  }
  if (o.samples < 1) throw Error(Errc::kParameterOutOfRange, "need at least one sample");
  if (!(o.angle_floor >= 0.0)) {
    throw Error(Errc::kParameterOutOfRange, "angle floor must be non-negative");
  }
  const long max_total = static_cast<long>(o.samples) * std::max(1, o.max_candidates_per_sample);
  const long block = std::max(16L, 2L * o.samples);
  std::vector<TriangleSample> out;
  for (long begin = 0; begin < max_total && static_cast<int>(out.size()) < o.samples;
       begin += block) {
    const long n = std::min(block, max_total - begin);
    std::vector<std::optional<TriangleSample>> got(n);
    auto eval = [&](long i) {
      got[i] = candidate(chart, delta, o.angle_floor, o.seed, o.stream,
                         static_cast<std::uint64_t>(begin + i));
    };
    if (o.policy == ExecutionPolicy::kParallel) {
#pragma omp parallel for schedule(static)
      for (long i = 0; i < n; ++i) eval(i);
    } else {
      for (long i = 0; i < n; ++i) eval(i);
    }
    for (long i = 0; i < n && static_cast<int>(out.size()) < o.samples; ++i) {
      if (got[i]) out.push_back(std::move(*got[i]));
    }
  }
  if (out.empty()) {
    throw Error(Errc::kInsufficientSamples,
                "no candidate triangle passed the filters at delta " + std::to_string(delta));
  }
  return out;
}

std::vector<TriangleSample> sample_triangles(const KPolyhedron& p, const SurfacePoint& x,
                                             double delta, const SamplingOptions& options) {
  const LocalChart chart = LocalChart::build(p, x, delta);
  return sample_triangles(chart, delta, options);
}

std::vector<CurvatureRow> estimate_curvature_bounds(const KPolyhedron& p,
                                                    const SurfacePoint& x,
                                                    const std::vector<double>& deltas,
                                                    const SamplingOptions& options) {
  if (deltas.empty()) throw Error(Errc::kParameterOutOfRange, "no scales given");
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] < deltas[i - 1])) {
      throw Error(Errc::kParameterOutOfRange, "deltas must be strictly decreasing");
    }
  }
  const LocalChart chart = LocalChart::build(p, x, deltas.front());
  std::vector<CurvatureRow> rows;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    SamplingOptions o = options;
    o.stream = options.stream + i;
    const auto samples = sample_triangles(chart, deltas[i], o);
    CurvatureRow row;
    row.delta = deltas[i];
    row.inf_ratio = std::numeric_limits<double>::infinity();
    row.sup_ratio = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
      const double r = excess_ratio(s);
      row.inf_ratio = std::min(row.inf_ratio, r);
      row.sup_ratio = std::max(row.sup_ratio, r);
    }
    row.n_accepted = static_cast<int>(samples.size());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace kpoly
