#include "kpoly/smoothing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "kpoly/errors.hpp"
#include "kpoly/io.hpp"

namespace kpoly {

namespace {

void check_warp_params(double lambda, double epsilon) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(Errc::kDomain, "lambda must be positive");
  }
  if (!(epsilon > 0.0 && epsilon < kMaxWarpEpsilon)) {
    throw Error(Errc::kDomain, "epsilon must lie in (0, pi / 8)");
  }
}

// Tail coefficients split as A = A_cos cos(lambda) + A_sin sin(lambda) and
// likewise for B. Matching: (f, f')(2 eps) = M (sin eps, cos eps) with the
// band propagator M = cos(lambda) I + sin(lambda) [[0, 1/mu], [-mu, 0]], and
// (A, B) = (f sin 2eps + f' cos 2eps, f cos 2eps - f' sin 2eps).
template <class T>
struct Split {
  T a_cos, a_sin, b_cos, b_sin;
};

template <class T>
Split<T> matching_split(T lambda, T eps) {
  using std::cos;
  using std::sin;
  const T mu = lambda / eps;
  const T se = sin(eps), ce = cos(eps), s2 = sin(2 * eps), c2 = cos(2 * eps);
  const T fc = se, gc = ce;            // cos(lambda) column
  const T fs = ce / mu, gs = -mu * se;  // sin(lambda) column
  return {fc * s2 + gc * c2, fs * s2 + gs * c2, fc * c2 - gc * s2, fs * c2 - gs * s2};
}

// The closed-form expressions, grouped the same way: term 2 of A carries
// cos(lambda), terms 1 and 3 carry sin(lambda); the first term of B carries
// sin(lambda), the second cos(lambda).
template <class T>
Split<T> closed_form_split(T lambda, T eps) {
  using std::cos;
  using std::sin;
  const T se = sin(eps), ce = cos(eps);
  const T e2 = eps * eps, l2 = lambda * lambda;
  const T a_pref = 1 / (2 * eps * lambda);
  const T b_pref = 1 / (eps * lambda);
  const T a_sin = a_pref * (3 * (e2 - l2) * se * ce * ce + se * (e2 + l2 + (l2 - e2) * se * se));
  const T a_cos = a_pref * (2 * eps * lambda * ce);
  const T b_sin = b_pref * (ce * (l2 + (e2 - l2) * cos(2 * eps)));
  const T b_cos = b_pref * (-eps * lambda * se);
  return {a_cos, a_sin, b_cos, b_sin};
}

template <class T>
T rel_err(T x, T ref) {
  const T scale = std::max(std::fabs(ref), std::numeric_limits<T>::min());
  return std::fabs(x - ref) / scale;
}

}  // namespace

double k_profile(double lambda, double epsilon, double t) {
  return (t >= epsilon && t <= 2.0 * epsilon) ? (lambda * lambda) / (epsilon * epsilon) : 1.0;
}

const WarpPiece& WarpProfile::piece_at(double t, std::optional<KnotSide> side) const {
  const double k1 = epsilon, k2 = 2.0 * epsilon;
  if (t == k1 || t == k2) {
    if (!side) throw Error(Errc::kKnotEvaluation, "t is a knot; choose a side");
    const int left = (t == k1) ? 0 : 1;
    return pieces[*side == KnotSide::kLeft ? left : left + 1];
  }
  if (t < k1) return pieces[0];
  if (t < k2) return pieces[1];
  return pieces[2];
}

double WarpProfile::f(double t, std::optional<KnotSide> side) const {
  const WarpPiece& w = piece_at(t, side);
  return w.p * std::sin(w.mu * t) + w.q * std::cos(w.mu * t);
}

double WarpProfile::fprime(double t, std::optional<KnotSide> side) const {
  const WarpPiece& w = piece_at(t, side);
  return w.mu * (w.p * std::cos(w.mu * t) - w.q * std::sin(w.mu * t));
}

double WarpProfile::fsecond(double t, std::optional<KnotSide> side) const {
  const WarpPiece& w = piece_at(t, side);
  return -w.mu * w.mu * (w.p * std::sin(w.mu * t) + w.q * std::cos(w.mu * t));
}

WarpProfile solve_warp(double lambda, double epsilon) {
  check_warp_params(lambda, epsilon);
  WarpProfile w;
  w.lambda = lambda;
  w.epsilon = epsilon;
  const double mu = lambda / epsilon;
  const double f1 = std::sin(epsilon), g1 = std::cos(epsilon);
  // p sin(mu t) + q cos(mu t) with value f1 and slope g1 at t = eps.
  const double sl = std::sin(lambda), cl = std::cos(lambda);
  const double p = f1 * sl + g1 * cl / mu;
  const double q = f1 * cl - g1 * sl / mu;
  const double s2l = std::sin(2.0 * lambda), c2l = std::cos(2.0 * lambda);
  const double f2 = p * s2l + q * c2l;
  const double g2 = mu * (p * c2l - q * s2l);
  const double s2 = std::sin(2.0 * epsilon), c2 = std::cos(2.0 * epsilon);
  const double a = f2 * s2 + g2 * c2;
  const double b = f2 * c2 - g2 * s2;
  const double inf = std::numeric_limits<double>::infinity();
  w.pieces = {WarpPiece{0.0, epsilon, 1.0, 1.0, 0.0},
              WarpPiece{epsilon, 2.0 * epsilon, mu, p, q},
              WarpPiece{2.0 * epsilon, inf, 1.0, a, b}};
  return w;
}

WarpCoefficients warp_AB(double lambda, double epsilon) {
  const WarpProfile w = solve_warp(lambda, epsilon);
  return {w.pieces[2].p, w.pieces[2].q};
}

WarpCoefficients warp_AB_closed_form(double lambda, double epsilon) {
  check_warp_params(lambda, epsilon);
  const double l = lambda, e = epsilon;
  const double se = std::sin(e), ce = std::cos(e), sl = std::sin(l), cl = std::cos(l);
  const double a = (3.0 * (e * e - l * l) * se * sl * ce * ce + 2.0 * e * l * cl * ce +
                    se * (e * e + l * l + (l * l - e * e) * se * se) * sl) /
                   (2.0 * e * l);
  const double b =
      (ce * (l * l + (e * e - l * l) * std::cos(2.0 * e)) * sl - e * l * cl * se) / (e * l);
  return {a, b};
}

AuditReport audit_closed_form(double lambda, double epsilon, double rel_tol) {
  check_warp_params(lambda, epsilon);
  using LD = long double;
  const LD l = lambda, e = epsilon;
  const Split<LD> cf = closed_form_split(l, e);
  const Split<LD> mt = matching_split(l, e);
  const LD cl = std::cos(l), sl = std::sin(l);

  AuditReport r;
  r.lambda = lambda;
  r.epsilon = epsilon;
  const LD a_cf = cf.a_cos * cl + cf.a_sin * sl, a_mt = mt.a_cos * cl + mt.a_sin * sl;
  const LD b_cf = cf.b_cos * cl + cf.b_sin * sl, b_mt = mt.b_cos * cl + mt.b_sin * sl;
  r.rel_error_a = rel_err(a_cf, a_mt);
  r.rel_error_b = rel_err(b_cf, b_mt);
  r.terms = {
      {"A term 1+3 (sin lambda coefficient)", cf.a_sin, mt.a_sin, rel_err(cf.a_sin, mt.a_sin)},
      {"A term 2 (cos lambda coefficient)", cf.a_cos, mt.a_cos, rel_err(cf.a_cos, mt.a_cos)},
      {"B term 1 (sin lambda coefficient)", cf.b_sin, mt.b_sin, rel_err(cf.b_sin, mt.b_sin)},
      {"B term 2 (cos lambda coefficient)", cf.b_cos, mt.b_cos, rel_err(cf.b_cos, mt.b_cos)},
  };
  r.agree = r.rel_error_a <= rel_tol && r.rel_error_b <= rel_tol;
  if (!r.agree) {
    r.first_mismatch = "(no single term; disagreement from recombination)";
    for (const AuditTerm& t : r.terms) {
      if (t.rel_error > rel_tol) {
        r.first_mismatch = t.name;
        break;
      }
    }
  }
  return r;
}

std::string format_audit_report(const std::vector<AuditReport>& reports) {
  std::string out = "lambda,epsilon,rel_error_A,rel_error_B,agree,first_mismatch\n";
  for (const AuditReport& r : reports) {
    out += format_double(r.lambda) + "," + format_double(r.epsilon) + "," +
           format_double(static_cast<double>(r.rel_error_a)) + "," +
           format_double(static_cast<double>(r.rel_error_b)) + "," +
           (r.agree ? "yes" : "no") + "," + r.first_mismatch + "\n";
    if (!r.agree) {
      for (const AuditTerm& t : r.terms) {
        out += "  " + t.name + ": closed form " +
               format_double(static_cast<double>(t.closed_form)) + ", matching " +
               format_double(static_cast<double>(t.matching)) + ", rel error " +
               format_double(static_cast<double>(t.rel_error)) + "\n";
      }
    }
  }
  return out;
}

AmplitudePhase amplitude_phase(double a, double b) {
  if (a == 0.0 && b == 0.0) throw Error(Errc::kZeroInput, "(A, B) = (0, 0)");
  return {std::hypot(a, b), std::atan2(b, a)};
}

double limit_amplitude_root() {
  // cos x - x sin x decreases strictly on [0, pi/2].
  double lo = 0.0, hi = std::numbers::pi / 2.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (std::cos(mid) - mid * std::sin(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LambdaSolution find_lambda(double omega, double epsilon, double tau) {
  if (!(omega > 0.0 && omega < 2.0 * std::numbers::pi)) {
    throw Error(Errc::kDomain, "omega must lie in (0, 2 pi)");
  }
  if (!(tau > 0.0)) throw Error(Errc::kDomain, "tau must be positive");
  check_warp_params(1.0, epsilon);
  const double target = 1.0 - omega / (2.0 * std::numbers::pi);
  auto excess = [&](double lambda) {
    const WarpCoefficients ab = warp_AB(lambda, epsilon);
    return std::hypot(ab.a, ab.b) - target;
  };
  double lo = epsilon, hi = limit_amplitude_root();
  if (!(hi > lo) || !(excess(lo) >= 0.0) || !(excess(hi) < 0.0)) {
    throw Error(Errc::kNoRoot, "tail amplitude " + format_double(target) +
                                   " not bracketed for this epsilon");
  }
  int it = 0;
  for (; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (excess(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  LambdaSolution s;
  s.lambda = (std::fabs(excess(lo)) <= std::fabs(excess(hi))) ? lo : hi;
  s.iterations = it;
  s.profile = solve_warp(s.lambda, epsilon);
  s.ab = {s.profile.pieces[2].p, s.profile.pieces[2].q};
  s.amp_phase = amplitude_phase(s.ab.a, s.ab.b);
  s.residual = std::fabs(s.amp_phase.amp - target);
  if (!(std::fabs(s.amp_phase.phi) < tau)) {
    throw Error(Errc::kPhaseExceedsTau,
                "phase " + format_double(s.amp_phase.phi) + " is not below tau");
  }
  return s;
}

double curvature_of_warp(const WarpProfile& profile, double t, std::optional<KnotSide> side) {
  const double f = profile.f(t, side);
  if (f == 0.0) throw Error(Errc::kDomain, "f vanishes at t");
  return -profile.fsecond(t, side) / f;
}

double ode_integrate_check(double lambda, double epsilon, double step) {
  check_warp_params(lambda, epsilon);
  if (!(step > 0.0 && step <= epsilon / 50.0)) {
    throw Error(Errc::kParameterOutOfRange, "step must lie in (0, eps / 50]");
  }
  const WarpProfile w = solve_warp(lambda, epsilon);
  const double end = std::min(std::numbers::pi - 0.1, 10.0 * epsilon + 1.0);
  const std::array<double, 4> knots{0.0, epsilon, 2.0 * epsilon, end};
  const std::array<double, 3> k{1.0, (lambda * lambda) / (epsilon * epsilon), 1.0};
  double f = 0.0, g = 1.0, worst = 0.0;
  for (int seg = 0; seg < 3; ++seg) {
    const double len = knots[seg + 1] - knots[seg];
    const long n = std::max(1L, static_cast<long>(std::ceil(len / step - 1e-9)));
    const double h = len / static_cast<double>(n);
    const double kk = k[seg];
    for (long i = 0; i < n; ++i) {
      const double k1f = g, k1g = -kk * f;
      const double k2f = g + 0.5 * h * k1g, k2g = -kk * (f + 0.5 * h * k1f);
      const double k3f = g + 0.5 * h * k2g, k3g = -kk * (f + 0.5 * h * k2f);
      const double k4f = g + h * k3g, k4g = -kk * (f + h * k3f);
      f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
      g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
      const double t = (i + 1 == n) ? knots[seg + 1] : knots[seg] + (i + 1) * h;
      worst = std::max(worst, std::fabs(f - w.f(t, KnotSide::kLeft)));
    }
  }
  return worst;
}

double cone_circle_length(double omega, double r) {
  if (!(omega > 0.0 && omega < 2.0 * std::numbers::pi)) {
    throw Error(Errc::kDomain, "omega must lie in (0, 2 pi)");
  }
  if (!(r > 0.0 && r < std::numbers::pi)) throw Error(Errc::kDomain, "r must lie in (0, pi)");
  return (1.0 - omega / (2.0 * std::numbers::pi)) * 2.0 * std::numbers::pi * std::sin(r);
}

}  // namespace kpoly
