#pragma once

// Rotationally symmetric smoothing of a conical point of a kappa = 1
// surface. The warping function f solves f'' + k f = 0 with f(0) = 0,
// f'(0) = 1, where k is 1 off the band [eps, 2 eps] and lambda^2 / eps^2 on
// it; beyond the band f = A sin t + B cos t.

#include <optional>
#include <string>
#include <vector>

namespace kpoly {

double k_profile(double lambda, double epsilon, double t);

// f = p sin(mu t) + q cos(mu t) on [t0, t1].
struct WarpPiece {
  double t0 = 0.0;
  double t1 = 0.0;
  double mu = 1.0;
  double p = 0.0;
  double q = 0.0;
};

enum class KnotSide { kLeft, kRight };

struct WarpProfile {
  double lambda = 0.0;
  double epsilon = 0.0;
  std::vector<WarpPiece> pieces;  // [0, eps], [eps, 2 eps], [2 eps, inf)

  // Values at a knot are taken from the requested side; without a side a
  // knot is rejected with kKnotEvaluation.
  double f(double t, std::optional<KnotSide> side = std::nullopt) const;
  double fprime(double t, std::optional<KnotSide> side = std::nullopt) const;
  double fsecond(double t, std::optional<KnotSide> side = std::nullopt) const;

 private:
  const WarpPiece& piece_at(double t, std::optional<KnotSide> side) const;
};

// Largest admissible eps: 2 eps < pi / 4.
inline constexpr double kMaxWarpEpsilon = 0.39269908169872414;

// C^1 matching across both knots via the propagator of f'' + mu^2 f = 0.
// Throws kDomain unless lambda > 0 and 0 < eps < kMaxWarpEpsilon.
WarpProfile solve_warp(double lambda, double epsilon);

struct WarpCoefficients {
  double a = 0.0;
  double b = 0.0;
};

// The tail coefficients (A, B) from the matching.
WarpCoefficients warp_AB(double lambda, double epsilon);

// The tail coefficients from the closed-form expressions.
WarpCoefficients warp_AB_closed_form(double lambda, double epsilon);

// One entry of the closed-form audit: a group of terms of the closed form
// written as the coefficient of cos(lambda) or sin(lambda), beside the
// same coefficient of the matching solution.
struct AuditTerm {
  std::string name;
  long double closed_form = 0.0L;
  long double matching = 0.0L;
  long double rel_error = 0.0L;
};

struct AuditReport {
  double lambda = 0.0;
  double epsilon = 0.0;
  long double rel_error_a = 0.0L;
  long double rel_error_b = 0.0L;
  bool agree = true;
  std::vector<AuditTerm> terms;
  // Name of the first term whose coefficient disagrees; empty when all
  // agree.
  std::string first_mismatch;
};

AuditReport audit_closed_form(double lambda, double epsilon, double rel_tol = 1e-8);
std::string format_audit_report(const std::vector<AuditReport>& reports);

struct AmplitudePhase {
  double amp = 0.0;
  double phi = 0.0;
};

// A sin t + B cos t = amp sin(t + phi). Throws kZeroInput for (0, 0).
AmplitudePhase amplitude_phase(double a, double b);

// First positive root of cos x - x sin x.
double limit_amplitude_root();

struct LambdaSolution {
  double lambda = 0.0;
  WarpCoefficients ab;
  AmplitudePhase amp_phase;
  double residual = 0.0;  // |amp - (1 - omega / 2 pi)|
  int iterations = 0;
  WarpProfile profile;
};

// Bisection for lambda in [eps, limit_amplitude_root()] with tail amplitude
// 1 - omega / 2 pi. Throws kNoRoot when the target is not bracketed and
// kPhaseExceedsTau when |phi| >= tau.
LambdaSolution find_lambda(double omega, double epsilon, double tau);

// -f''/f; kKnotEvaluation at a knot without a side, kDomain where f = 0.
double curvature_of_warp(const WarpProfile& profile, double t,
                         std::optional<KnotSide> side = std::nullopt);

// Fixed-step RK4 integration of f'' + k f = 0 over
// [0, min(pi - 0.1, 10 eps + 1)] with steps aligned to the knots; returns
// the largest deviation from the closed form at the step points.
double ode_integrate_check(double lambda, double epsilon, double step);

// Length of the radius-r circle about the apex of the kappa = 1 cone with
// curvature omega.
double cone_circle_length(double omega, double r);

}  // namespace kpoly
