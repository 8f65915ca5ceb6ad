#pragma once

// Trigonometry of the constant-curvature model surfaces M_kappa: the plane
// (kappa = 0), the sphere of radius 1/sqrt(kappa) and the hyperboloid of
// curvature kappa < 0.
//
// Every formula is evaluated in the unit-curvature model: lengths are
// multiplied by sqrt(|kappa|) on entry, so each sign of kappa has exactly
// one code path.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "kpoly/tolerances.hpp"
#include "kpoly/vec3.hpp"

namespace kpoly {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Curvature {
 public:
  constexpr Curvature() = default;
  explicit Curvature(double kappa);

  constexpr double value() const { return kappa_; }
  constexpr int sign() const { return kappa_ > 0.0 ? 1 : (kappa_ < 0.0 ? -1 : 0); }
  // sqrt(|kappa|); 1 for the plane so lengths pass through unchanged.
  double length_scale() const {
    return kappa_ == 0.0 ? 1.0 : std::sqrt(std::fabs(kappa_));
  }
  // Curvature after multiplying every length by s.
  Curvature rescaled(double s) const;

  friend constexpr bool operator==(Curvature, Curvature) = default;

 private:
  double kappa_ = 0.0;
};

// Geodesic triangle of M_kappa given by its side lengths; side a is opposite
// vertex A, b opposite B, c opposite C.
struct ModelTriangle {
  Curvature kappa;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  // Validates and returns the triangle; throws kInvalidTriangle.
  static ModelTriangle make(Curvature kappa, double a, double b, double c);
  static bool is_valid(Curvature kappa, double a, double b, double c);

  // Interior angles at A, B, C.
  std::array<double, 3> angles() const;
  double max_side() const { return std::fmax(a, std::fmax(b, c)); }
};

double angle_from_sides(Curvature kappa, double opposite, double adj1,
                        double adj2,
                        const Tolerances& tol = kDefaultTolerances);

// Angle at the comparison vertex b~ of the model triangle with the given
// pairwise distances.
double comparison_angle(Curvature kappa, double d_ab, double d_bc, double d_ac,
                        const Tolerances& tol = kDefaultTolerances);

// Area in M_kappa. Heron for the plane, l'Huilier-type excess formulas for
// the sphere and the hyperbolic plane, divided by |kappa|.
double triangle_area(const ModelTriangle& t);

// Area of the Euclidean triangle with sides a, b, c.
double sigma0(double a, double b, double c);

// alpha + beta + gamma - pi.
double excess_e0(double alpha, double beta, double gamma);

// Points of the standard chart of M_kappa: the xy-plane, the sphere
// |p| = 1/sqrt(kappa) or the upper hyperboloid sheet <p,p>_L = 1/kappa.
// The chart origin is (0,0,0) for the plane and (0,0,R) otherwise.
class ModelSpace {
 public:
  explicit ModelSpace(Curvature kappa);

  Curvature curvature() const { return kappa_; }
  int sign() const { return kappa_.sign(); }
  // Radius of the sphere / hyperboloid; 1 for the plane.
  double radius() const { return radius_; }

  Vec3 origin() const;
  double distance(const Vec3& p, const Vec3& q) const;
  // Point at distance r from the origin in direction theta (from +x).
  Vec3 polar(double theta, double r) const;
  // Direction of the geodesic from the origin to p, in (-pi, pi].
  double polar_angle(const Vec3& p) const;
  // Point at fraction frac of the arclength from p to q.
  Vec3 along(const Vec3& p, const Vec3& q, double frac) const;

  // Isometry taking the origin to p and the +x direction to the initial
  // direction of the geodesic p -> q. Linear for the curved models.
  struct Frame {
    Vec3 p, e1, e2, e3;
  };
  Frame frame(const Vec3& p, const Vec3& q) const;
  Vec3 apply(const Frame& f, const Vec3& local) const;

  // Third vertex r with d(p,r) = d_pr and d(q,r) = d_qr, on the left of the
  // directed geodesic p -> q when side > 0 and on its right otherwise.
  Vec3 place_third(const Vec3& p, const Vec3& q, double d_pr, double d_qr,
                   int side) const;

  // Sign of the turn p -> q -> x: positive when x is left of p -> q.
  double orientation(const Vec3& p, const Vec3& q, const Vec3& x) const;

  // Projective barycentric coordinates (gnomonic chart for the sphere,
  // Klein chart for the hyperboloid): weights summing to 1; all positive
  // exactly when x lies inside the geodesic triangle.
  std::array<double, 3> barycentric(const std::array<Vec3, 3>& tri,
                                    const Vec3& x) const;
  Vec3 from_barycentric(const std::array<Vec3, 3>& tri,
                        const std::array<double, 3>& w) const;

  // Projects a nearly-on-model point back onto the model surface.
  Vec3 project(const Vec3& p) const;

 private:
  Curvature kappa_;
  double radius_ = 1.0;
};

// Vertex A at the chart origin, B at distance c along +x, C on the left.
std::array<Vec3, 3> chart_embed(const ModelTriangle& t);

// Distance in M_kappa between p on ab with d(a,p) = s*B and q on ac with
// d(a,q) = t*C, for the triangle with d(b,c) = A, d(a,b) = B, d(a,c) = C.
double theta(Curvature kappa, double A, double B, double C, double s, double t);

// Theta^kappa / Theta^0 on the triangle scaled by each factor in deltas.
std::vector<double> theta_ratio_table(Curvature kappa, double A, double B,
                                      double C, double s, double t,
                                      std::span<const double> deltas);

}  // namespace kpoly
