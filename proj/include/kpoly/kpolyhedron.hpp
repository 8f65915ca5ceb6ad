#pragma once

// Closed surfaces glued from geodesic triangles of M_kappa along whole,
// equal-length edges.
//
// Conventions. Triangle corners are 0, 1, 2 (A, B, C); sides are stored as
// (a, b, c) with side i opposite corner i. Edge i is the side opposite
// corner i, traversed from corner (i+1)%3 to corner (i+2)%3, so the three
// edges run A->B (2), B->C (0), C->A (1) around the triangle.

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "kpoly/model_geometry.hpp"
#include "kpoly/tolerances.hpp"

namespace kpoly {

using Sides = std::array<double, 3>;

struct EdgeSlot {
  int triangle = 0;
  int edge = 0;
  friend constexpr bool operator==(EdgeSlot, EdgeSlot) = default;
};

// An identification of two edge slots. With flipped == false the start of
// `first` meets the end of `second` (the orientation-preserving gluing);
// with flipped == true starts meet starts.
struct GluingPair {
  EdgeSlot first;
  EdgeSlot second;
  bool flipped = false;
};

struct GluingMap {
  std::vector<GluingPair> pairs;
};

struct Corner {
  int triangle = 0;
  int corner = 0;
  friend constexpr bool operator==(Corner, Corner) = default;
};

constexpr int edge_start_corner(int edge) { return (edge + 1) % 3; }
constexpr int edge_end_corner(int edge) { return (edge + 2) % 3; }

class KPolyhedron {
 public:
  // Validates the gluing (open edges, length mismatch, link structure) and
  // derives vertex classes, angles and curvatures.
  static KPolyhedron build(Curvature kappa, std::vector<Sides> triangles,
                           GluingMap gluing,
                           const Tolerances& tol = kDefaultTolerances);

  Curvature curvature() const { return kappa_; }
  const std::vector<ModelTriangle>& triangles() const { return triangles_; }
  const ModelTriangle& triangle(int t) const { return triangles_.at(t); }
  const GluingMap& gluing() const { return gluing_; }

  int num_faces() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(gluing_.pairs.size()); }
  int num_vertices() const { return static_cast<int>(vertex_corners_.size()); }
  int euler_characteristic() const {
    return num_vertices() - num_edges() + num_faces();
  }

  int vertex_of(int triangle, int corner) const {
    return corner_vertex_.at(3 * triangle + corner);
  }
  // Corners of vertex class v in cyclic order around the vertex.
  std::span<const Corner> corners_of(int v) const;
  double corner_angle(int triangle, int corner) const {
    return corner_angles_.at(3 * triangle + corner);
  }
  double total_angle(int v) const;
  double omega(int v) const;
  double total_area() const { return total_area_; }

  // The pair index and partner of an edge slot.
  int pair_of(EdgeSlot slot) const { return slot_pair_.at(3 * slot.triangle + slot.edge); }
  EdgeSlot partner(EdgeSlot slot) const;
  bool pair_flipped(int pair) const { return gluing_.pairs.at(pair).flipped; }
  double edge_length(EdgeSlot slot) const;

  // Same side lengths and gluing, reinterpreted in M_kappa for a different
  // kappa. Throws kSphericalSizeOverflow when a triangle becomes too large
  // for a positive kappa.
  KPolyhedron with_curvature(Curvature kappa) const;

  std::vector<Sides> side_lengths() const;

 private:
  friend KPolyhedron rescale(const KPolyhedron& p, double s);

  Curvature kappa_;
  Tolerances tol_;
  std::vector<ModelTriangle> triangles_;
  GluingMap gluing_;
  std::vector<int> slot_pair_;         // 3 * t + e -> pair index
  std::vector<int> corner_vertex_;     // 3 * t + i -> vertex class
  std::vector<double> corner_angles_;  // 3 * t + i -> angle
  std::vector<std::vector<Corner>> vertex_corners_;
  std::vector<double> total_angles_;
  double total_area_ = 0.0;
};

double singular_curvature(const KPolyhedron& p, int v);

struct AlexandrovReport {
  bool pass = true;
  std::vector<int> offending;  // vertices with total angle > 2*pi + slack
};

AlexandrovReport check_alexandrov(const KPolyhedron& p,
                                  const Tolerances& tol = kDefaultTolerances);

// sum(omega) + kappa * area - 2 * pi * chi.
double gauss_bonnet_residual(const KPolyhedron& p);

// Vertices with omega > threshold, by decreasing omega (ties: lower id).
std::vector<std::pair<int, double>> conical_points(const KPolyhedron& p,
                                                   double threshold);

// Global homothety: lengths times s, curvature kappa / s^2.
KPolyhedron rescale(const KPolyhedron& p, double s);

}  // namespace kpoly
