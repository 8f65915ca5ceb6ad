#pragma once

// Exact development of a small ball B(x, radius) of a kappa-polyhedron.
//
// Points of the ball are addressed by geodesic polar coordinates (r, psi)
// about x, with psi in [0, Theta) and Theta the total angle at x (2 pi off
// the vertices). The ball is isometric to the sector model: two points at
// angular gap g (measured the short way round) are joined inside the
// developed sector of angle g when g < pi, and through x otherwise.
//
// Building the chart checks that the model is valid at the requested
// radius: around a vertex the ball must stay inside the star of the
// vertex; elsewhere no vertex with nonzero curvature may lie in the ball
// and the ball must develop without overlapping itself.

#include <array>
#include <vector>

#include "kpoly/kpolyhedron.hpp"
#include "kpoly/metric_graph.hpp"

namespace kpoly {

struct LocalPoint {
  double r = 0.0;
  double psi = 0.0;
};

class LocalChart {
 public:
  // Throws kParameterOutOfRange when the ball leaves the star of a vertex
  // or wraps onto itself, and kDomain when it contains another point of
  // nonzero curvature.
  static LocalChart build(const KPolyhedron& p, const SurfacePoint& x, double radius,
                          const Tolerances& tol = kDefaultTolerances);

  Curvature curvature() const { return space_.curvature(); }
  double total_angle() const { return theta_; }
  double radius() const { return radius_; }
  bool at_vertex() const { return vertex_ >= 0; }

  // Angular gap between two directions, in [0, Theta / 2].
  double gap(double psi1, double psi2) const;
  double distance(const LocalPoint& a, const LocalPoint& b) const;
  // Point at fraction frac of the arclength of the geodesic a -> b.
  LocalPoint along(const LocalPoint& a, const LocalPoint& b, double frac) const;
  // x lies strictly inside the geodesic triangle: each angular gap between
  // consecutive vertices is below pi.
  bool encloses_center(const std::array<LocalPoint, 3>& tri) const;
  // The surface point with these polar coordinates.
  SurfacePoint to_surface(const LocalPoint& x) const;

 private:
  explicit LocalChart(Curvature kappa) : space_(kappa) {}
  double wrap_psi(double psi) const;

  const KPolyhedron* poly_ = nullptr;
  ModelSpace space_;
  double theta_ = kTwoPi;
  double radius_ = 0.0;
  int vertex_ = -1;

  // Vertex case: one sector per corner of the star, in link order.
  struct Sector {
    int triangle = 0;
    int corner = 0;
    int corner_in = 0;   // corner at the end of the entry edge
    int corner_out = 0;  // corner at the end of the leaving edge
    double psi0 = 0.0;
    double angle = 0.0;
    double len_in = 0.0;
    double len_out = 0.0;
  };
  std::vector<Sector> sectors_;

  // Disk case: developed copies of the triangles meeting the ball, all in
  // one model chart.
  struct Placed {
    int triangle = 0;
    std::array<Vec3, 3> corners;
  };
  std::vector<Placed> placed_;
  ModelSpace::Frame frame_{};
};

// Distance in M_kappa from x to the geodesic segment [s, e].
double point_segment_distance(const ModelSpace& space, const Vec3& x, const Vec3& s,
                              const Vec3& e);

}  // namespace kpoly
