#pragma once

// Standard closed polyhedra, and helpers turning an oriented face list into
// a gluing.

#include <array>
#include <functional>
#include <vector>

#include "kpoly/kpolyhedron.hpp"
#include "kpoly/vec3.hpp"

namespace kpoly {

using Face = std::array<int, 3>;

// Pairs every directed edge u->v of a consistently oriented face list with
// its reverse v->u. Throws kOpenEdge for an unmatched half-edge and
// kNonManifoldLink when a directed edge occurs twice.
GluingMap gluing_from_faces(const std::vector<Face>& faces);

// Side lengths (opposite corners 0, 1, 2) from an edge-length function.
std::vector<Sides> sides_from_faces(const std::vector<Face>& faces,
                                    const std::function<double(int, int)>& length);

KPolyhedron polyhedron_from_faces(Curvature kappa, const std::vector<Face>& faces,
                                  const std::function<double(int, int)>& length);

// Faces of the convex hull of a vertex set whose facets are triangles with
// all sides equal to edge; oriented outward.
std::vector<Face> equilateral_hull_faces(const std::vector<Vec3>& vertices, double edge);

std::vector<Vec3> icosahedron_vertices();  // on the unit sphere
std::vector<Vec3> octahedron_vertices();   // +-e_i

KPolyhedron tetrahedron(double side = 1.0);
KPolyhedron cube(double side = 1.0);
KPolyhedron icosahedron(double side = 1.0);
// n x n grid of unit-square-cut-diagonally cells, side `side` overall.
KPolyhedron flat_torus(int n = 1, double side = 1.0);
// Two squares glued along their boundary, each cut into two triangles.
KPolyhedron doubled_square(double side = 1.0);
// The unit sphere as eight spherical octants (kappa = 1).
KPolyhedron octant_sphere();
// Two heptagonal cones of equilateral triangles glued along their rims;
// the apexes carry total angle 7*pi/3, so the gluing fails the Alexandrov
// condition.
KPolyhedron heptagonal_bipyramid(double side = 1.0);

}  // namespace kpoly
