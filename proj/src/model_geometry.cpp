#include "kpoly/model_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpoly/errors.hpp"

namespace kpoly {

namespace {

std::string sides_str(double a, double b, double c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " +
         std::to_string(c) + ")";
}

// Interior angle opposite side a of a unit-curvature triangle.
double unit_angle(int sign, double a, double b, double c, double small_side) {
  const double sa = 0.5 * (b + c - a);
  const double sb = 0.5 * (a + c - b);
  const double sc = 0.5 * (a + b - c);
  const double s = 0.5 * (a + b + c);
  const double longest = std::max({a, b, c});
  if (sign == 0) {
    return 2.0 * std::atan2(std::sqrt(sb * sc), std::sqrt(s * sa));
  }
  if (sign > 0) {
    if (longest < small_side) {
      return 2.0 * std::atan2(std::sqrt(std::sin(sb) * std::sin(sc)),
                              std::sqrt(std::sin(s) * std::sin(sa)));
    }
    const double cos_alpha = (std::cos(a) - std::cos(b) * std::cos(c)) /
                             (std::sin(b) * std::sin(c));
    return std::acos(std::clamp(cos_alpha, -1.0, 1.0));
  }
  if (longest < small_side) {
    return 2.0 * std::atan2(std::sqrt(std::sinh(sb) * std::sinh(sc)),
                            std::sqrt(std::sinh(s) * std::sinh(sa)));
  }
  const double cos_alpha = (std::cosh(b) * std::cosh(c) - std::cosh(a)) /
                           (std::sinh(b) * std::sinh(c));
  return std::acos(std::clamp(cos_alpha, -1.0, 1.0));
}

}  // namespace

Curvature::Curvature(double kappa) : kappa_(kappa) {
  if (!std::isfinite(kappa)) {
    throw Error(Errc::kDomain, "curvature must be finite");
  }
}

Curvature Curvature::rescaled(double s) const {
  return Curvature(kappa_ / (s * s));
}

bool ModelTriangle::is_valid(Curvature kappa, double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) return false;
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) return false;
  if (!(a < b + c && b < a + c && c < a + b)) return false;
  if (kappa.sign() > 0) {
    const double k = kappa.length_scale();
    const double ua = a * k, ub = b * k, uc = c * k;
    if (!(ua < kPi && ub < kPi && uc < kPi)) return false;
    if (!(ua + ub + uc < kTwoPi)) return false;
  }
  return true;
}

ModelTriangle ModelTriangle::make(Curvature kappa, double a, double b,
                                  double c) {
  if (!is_valid(kappa, a, b, c)) {
    throw Error(Errc::kInvalidTriangle,
                "sides " + sides_str(a, b, c) + " do not form a triangle for "
                "kappa = " + std::to_string(kappa.value()));
  }
  return ModelTriangle{kappa, a, b, c};
}

std::array<double, 3> ModelTriangle::angles() const {
  return {angle_from_sides(kappa, a, b, c), angle_from_sides(kappa, b, c, a),
          angle_from_sides(kappa, c, a, b)};
}

double angle_from_sides(Curvature kappa, double opposite, double adj1,
                        double adj2, const Tolerances& tol) {
  if (adj1 == 0.0 || adj2 == 0.0) {
    throw Error(Errc::kDegenerateInput, "adjacent side of length zero");
  }
  if (!ModelTriangle::is_valid(kappa, opposite, adj1, adj2)) {
    throw Error(Errc::kInvalidTriangle,
                "sides " + sides_str(opposite, adj1, adj2) +
                    " do not form a triangle for kappa = " +
                    std::to_string(kappa.value()));
  }
  const double k = kappa.length_scale();
  const double alpha = unit_angle(kappa.sign(), opposite * k, adj1 * k,
                                  adj2 * k, tol.small_side);
  return std::clamp(alpha, 0.0, kPi);
}

double comparison_angle(Curvature kappa, double d_ab, double d_bc, double d_ac,
                        const Tolerances& tol) {
  return angle_from_sides(kappa, d_ac, d_ab, d_bc, tol);
}

double sigma0(double a, double b, double c) {
  if (!ModelTriangle::is_valid(Curvature(0.0), a, b, c)) {
    throw Error(Errc::kInvalidTriangle,
                "sides " + sides_str(a, b, c) + " violate the triangle inequality");
  }
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double x = s[0], y = s[1], z = s[2];
  // Kahan's ordering keeps needle-shaped triangles accurate.
  const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return 0.25 * std::sqrt(std::max(p, 0.0));
}

double triangle_area(const ModelTriangle& t) {
  ModelTriangle::make(t.kappa, t.a, t.b, t.c);
  const int sign = t.kappa.sign();
  if (sign == 0) return sigma0(t.a, t.b, t.c);
  const double k = t.kappa.length_scale();
  const double a = t.a * k, b = t.b * k, c = t.c * k;
  const double s = 0.5 * (a + b + c);
  const double sa = 0.5 * (b + c - a);
  const double sb = 0.5 * (a + c - b);
  const double sc = 0.5 * (a + b - c);
  double prod;
  if (sign > 0) {
    prod = std::tan(0.5 * s) * std::tan(0.5 * sa) * std::tan(0.5 * sb) *
           std::tan(0.5 * sc);
  } else {
    prod = std::tanh(0.5 * s) * std::tanh(0.5 * sa) * std::tanh(0.5 * sb) *
           std::tanh(0.5 * sc);
  }
  // Spherical excess or hyperbolic defect of the unit-curvature triangle.
  const double e = 4.0 * std::atan(std::sqrt(std::max(prod, 0.0)));
  return e / std::fabs(t.kappa.value());
}

double excess_e0(double alpha, double beta, double gamma) {
  for (double x : {alpha, beta, gamma}) {
    if (!(x > 0.0 && x < kPi)) {
      throw Error(Errc::kDomain, "angle " + std::to_string(x) +
                                     " outside the open interval (0, pi)");
    }
  }
  return alpha + beta + gamma - kPi;
}

// ---------------------------------------------------------------------------

ModelSpace::ModelSpace(Curvature kappa) : kappa_(kappa) {
  radius_ = kappa.sign() == 0 ? 1.0 : 1.0 / kappa.length_scale();
}

Vec3 ModelSpace::origin() const {
  return sign() == 0 ? Vec3{0, 0, 0} : Vec3{0, 0, radius_};
}

double ModelSpace::distance(const Vec3& p, const Vec3& q) const {
  switch (sign()) {
    case 0:
      return norm(p - q);
    case 1:
      return radius_ * std::atan2(norm(cross(p, q)), dot(p, q));
    default: {
      const Vec3 d = p - q;
      const double chord2 = std::max(lorentz_dot(d, d), 0.0);
      return 2.0 * radius_ * std::asinh(std::sqrt(chord2) / (2.0 * radius_));
    }
  }
}

Vec3 ModelSpace::polar(double theta, double r) const {
  const double c = std::cos(theta), s = std::sin(theta);
  switch (sign()) {
    case 0:
      return {r * c, r * s, 0.0};
    case 1: {
      const double u = r / radius_;
      return {radius_ * std::sin(u) * c, radius_ * std::sin(u) * s,
              radius_ * std::cos(u)};
    }
    default: {
      const double u = r / radius_;
      return {radius_ * std::sinh(u) * c, radius_ * std::sinh(u) * s,
              radius_ * std::cosh(u)};
    }
  }
}

double ModelSpace::polar_angle(const Vec3& p) const {
  return std::atan2(p.y, p.x);
}

Vec3 ModelSpace::project(const Vec3& p) const {
  switch (sign()) {
    case 0:
      return {p.x, p.y, 0.0};
    case 1:
      return p * (radius_ / norm(p));
    default:
      return p * (radius_ / std::sqrt(-lorentz_dot(p, p)));
  }
}

Vec3 ModelSpace::along(const Vec3& p, const Vec3& q, double frac) const {
  if (sign() == 0) return p + frac * (q - p);
  const double d = distance(p, q) / radius_;
  if (d < 1e-12) return project(p + frac * (q - p));
  if (sign() > 0) {
    const double sd = std::sin(d);
    return project((std::sin((1.0 - frac) * d) / sd) * p +
                   (std::sin(frac * d) / sd) * q);
  }
  const double sd = std::sinh(d);
  return project((std::sinh((1.0 - frac) * d) / sd) * p +
                 (std::sinh(frac * d) / sd) * q);
}

ModelSpace::Frame ModelSpace::frame(const Vec3& p, const Vec3& q) const {
  Frame f;
  f.p = p;
  switch (sign()) {
    case 0: {
      f.e1 = normalized(q - p);
      f.e2 = {-f.e1.y, f.e1.x, 0.0};
      f.e3 = {0.0, 0.0, 1.0};
      break;
    }
    case 1: {
      f.e3 = p / radius_;
      const Vec3 u = q - dot(q, f.e3) * f.e3;
      f.e1 = normalized(u);
      f.e2 = cross(f.e3, f.e1);
      break;
    }
    default: {
      f.e3 = p / radius_;
      const Vec3 u = q + lorentz_dot(q, f.e3) * f.e3;
      f.e1 = u / std::sqrt(lorentz_dot(u, u));
      const Vec3 w = cross(f.e3, f.e1);
      const Vec3 jw{w.x, w.y, -w.z};
      f.e2 = jw / std::sqrt(lorentz_dot(jw, jw));
      break;
    }
  }
  return f;
}

Vec3 ModelSpace::apply(const Frame& f, const Vec3& local) const {
  if (sign() == 0) return f.p + local.x * f.e1 + local.y * f.e2;
  return local.x * f.e1 + local.y * f.e2 + (local.z / radius_) * f.p;
}

Vec3 ModelSpace::place_third(const Vec3& p, const Vec3& q, double d_pr,
                             double d_qr, int side) const {
  const double d_pq = distance(p, q);
  const double alpha = angle_from_sides(kappa_, d_qr, d_pr, d_pq);
  return project(apply(frame(p, q), polar(side > 0 ? alpha : -alpha, d_pr)));
}

double ModelSpace::orientation(const Vec3& p, const Vec3& q,
                               const Vec3& x) const {
  if (sign() == 0) {
    const Vec3 u = q - p, v = x - p;
    return u.x * v.y - u.y * v.x;
  }
  return det3(p, q, x);
}

std::array<double, 3> ModelSpace::barycentric(const std::array<Vec3, 3>& tri,
                                              const Vec3& x) const {
  std::array<double, 3> w{};
  if (sign() == 0) {
    const Vec3 v0 = tri[1] - tri[0], v1 = tri[2] - tri[0], v2 = x - tri[0];
    const double den = v0.x * v1.y - v1.x * v0.y;
    w[1] = (v2.x * v1.y - v1.x * v2.y) / den;
    w[2] = (v0.x * v2.y - v2.x * v0.y) / den;
    w[0] = 1.0 - w[1] - w[2];
    return w;
  }
  const double den = det3(tri[0], tri[1], tri[2]);
  w[0] = det3(x, tri[1], tri[2]) / den;
  w[1] = det3(tri[0], x, tri[2]) / den;
  w[2] = det3(tri[0], tri[1], x) / den;
  const double sum = w[0] + w[1] + w[2];
  for (double& v : w) v /= sum;
  return w;
}

Vec3 ModelSpace::from_barycentric(const std::array<Vec3, 3>& tri,
                                  const std::array<double, 3>& w) const {
  const Vec3 v = w[0] * tri[0] + w[1] * tri[1] + w[2] * tri[2];
  return project(v);
}

std::array<Vec3, 3> chart_embed(const ModelTriangle& t) {
  ModelTriangle::make(t.kappa, t.a, t.b, t.c);
  const ModelSpace space(t.kappa);
  const double alpha = angle_from_sides(t.kappa, t.a, t.b, t.c);
  return {space.origin(), space.polar(0.0, t.c), space.polar(alpha, t.b)};
}

double theta(Curvature kappa, double A, double B, double C, double s,
             double t) {
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
    throw Error(Errc::kParameterOutOfRange, "s and t must lie in [0, 1]");
  }
  // Vertex a at the origin, b at distance B, c at distance C.
  const auto tri = ModelTriangle::make(kappa, A, C, B);
  const auto pts = chart_embed(tri);
  const ModelSpace space(kappa);
  const Vec3 p = space.along(pts[0], pts[1], s);
  const Vec3 q = space.along(pts[0], pts[2], t);
  return space.distance(p, q);
}

std::vector<double> theta_ratio_table(Curvature kappa, double A, double B,
                                      double C, double s, double t,
                                      std::span<const double> deltas) {
  std::vector<double> out;
  out.reserve(deltas.size());
  for (double d : deltas) {
    if (!(d > 0.0)) {
      throw Error(Errc::kParameterOutOfRange, "scale factors must be positive");
    }
    const double flat = theta(Curvature(0.0), d * A, d * B, d * C, s, t);
    if (flat == 0.0) {
      throw Error(Errc::kDegenerateInput, "Theta^0 vanishes (s = t = 0)");
    }
    out.push_back(theta(kappa, d * A, d * B, d * C, s, t) / flat);
  }
  return out;
}

}  // namespace kpoly
