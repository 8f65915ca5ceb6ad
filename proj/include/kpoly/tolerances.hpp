#pragma once

namespace kpoly {

// Numeric tolerances shared by every module. Functions that accept a
// Tolerances argument default to these values.
struct Tolerances {
  double absolute = 1e-10;
  double relative = 1e-8;
  // Below this (curvature-normalized) side length the half-angle formulas
  // replace the law of cosines.
  double small_side = 1e-4;
  // Paired edges must agree to this relative tolerance.
  double edge_match = 1e-9;
  // Slack on the total-angle <= 2*pi vertex condition.
  double alexandrov_slack = 1e-9;
  // |omega| above this marks a vertex as a cone point for local charts.
  double cone_omega = 1e-9;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace kpoly
