#pragma once

// Polyhedral approximation of analytic target surfaces: geodesic
// triangulations, their Euclidean and M_kappa replacements, and the
// convergence and semicontinuity experiments.

#include <memory>
#include <vector>

#include "kpoly/fixtures.hpp"
#include "kpoly/gh_metric.hpp"
#include "kpoly/kernels.hpp"
#include "kpoly/kpolyhedron.hpp"
#include "kpoly/metric_graph.hpp"

namespace kpoly {

struct GeodesicTriangulation {
  int level = 0;
  std::vector<Sides> sides;  // measured on the target surface
  GluingMap gluing;
  double max_diam = 0.0;
  // Positions of the combinatorial vertices on the target (unit vectors
  // for the sphere, fundamental-domain coordinates for the torus) and the
  // faces over them; faces[t][i] is corner i of triangle t.
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
};

// Icosahedron / octahedron on the unit sphere, each face split 1-to-4 at
// geodesic edge midpoints `level` times. Vertices of level n are the first
// entries of level n + 1.
GeodesicTriangulation sphere_triangulation(int level);
GeodesicTriangulation octant_triangulation(int level);

KPolyhedron replace_euclidean(const GeodesicTriangulation& t);
KPolyhedron replace_kappa(const GeodesicTriangulation& t, Curvature kappa);

// An analytic surface with exact distances and a nested family of
// geodesic triangulations.
class TargetSurface {
 public:
  virtual ~TargetSurface() = default;
  virtual GeodesicTriangulation triangulation(int level) const = 0;
  // Target positions of the first k matched points; the same list for
  // every level.
  virtual std::vector<Vec3> matched_points(int k) const = 0;
  virtual double distance(const Vec3& a, const Vec3& b) const = 0;
  // The point of a replacement polyhedron of triangulation t sitting at the
  // same combinatorial position as target point x.
  virtual SurfacePoint locate(const GeodesicTriangulation& t, const KPolyhedron& p,
                              const Vec3& x) const = 0;
};

// Unit round sphere; matched points are icosphere vertices in level order.
class SphereTarget final : public TargetSurface {
 public:
  GeodesicTriangulation triangulation(int level) const override;
  std::vector<Vec3> matched_points(int k) const override;
  double distance(const Vec3& a, const Vec3& b) const override;
  SurfacePoint locate(const GeodesicTriangulation& t, const KPolyhedron& p,
                      const Vec3& x) const override;
};

// Unit flat square torus triangulated by 2^level x 2^level grids; matched
// points lie on a regular grid in row-major order.
class FlatTorusTarget final : public TargetSurface {
 public:
  GeodesicTriangulation triangulation(int level) const override;
  std::vector<Vec3> matched_points(int k) const override;
  double distance(const Vec3& a, const Vec3& b) const override;
  SurfacePoint locate(const GeodesicTriangulation& t, const KPolyhedron& p,
                      const Vec3& x) const override;
};

struct ConvergenceRow {
  int level = 0;
  double delta = 0.0;
  double gh_upper = 0.0;
  double max_omega = 0.0;
};

std::vector<ConvergenceRow> convergence_experiment(
    const TargetSurface& target, const std::vector<int>& levels, int k, int m,
    ExecutionPolicy policy = ExecutionPolicy::kParallel);

// One 1-to-4 midpoint subdivision of every face. Corner i of triangle t
// becomes corner i of triangle 4t + i, so old vertices keep their corners.
KPolyhedron subdivide(const KPolyhedron& p);

struct SemicontinuityRow {
  int level = 0;
  double omega_p = 0.0;
  // Largest |omega| over vertices created by the refinement.
  double max_new_omega = 0.0;
};

// Refines p `levels` times, tracking the vertex p_vertex; row 0 is p.
std::vector<SemicontinuityRow> semicontinuity_experiment(const KPolyhedron& p,
                                                         int p_vertex, int levels);

}  // namespace kpoly
