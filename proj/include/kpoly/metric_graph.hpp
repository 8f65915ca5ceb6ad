#pragma once

// Approximate intrinsic metric of a KPolyhedron: shortest paths in the graph
// whose nodes are the vertex classes plus m evenly spaced Steiner points on
// every glued edge, with arcs between all boundary nodes of each triangle
// weighted by the exact within-triangle M_kappa distance.
//
// Path lengths are lengths of actual curves on the surface, so every
// reported distance is an upper bound on the intrinsic one. Refining from m
// to m' with (m + 1) | (m' + 1) keeps all old nodes, so such refinements
// never increase a distance.

#include <array>
#include <span>
#include <variant>
#include <vector>

#include "kpoly/kpolyhedron.hpp"
#include "kpoly/vec3.hpp"

namespace kpoly {

struct VertexAnchor {
  int vertex = 0;
};

// A point on edge slot (triangle, edge) at fraction param in (0, 1) of the
// arclength from the slot's start corner.
struct EdgeAnchor {
  int triangle = 0;
  int edge = 0;
  double param = 0.5;
};

// An interior point of a triangle given by projective barycentric weights
// (all positive, summing to 1) in the triangle's chart_embed chart.
struct FaceAnchor {
  int triangle = 0;
  std::array<double, 3> weights{1.0 / 3, 1.0 / 3, 1.0 / 3};
};

using SurfacePoint = std::variant<VertexAnchor, EdgeAnchor, FaceAnchor>;

// Throws kAnchorInvalid for anchors that do not name a point of p.
void validate_anchor(const KPolyhedron& p, const SurfacePoint& x);

// Combinatorial anchor from projective weights: vertex / edge / face
// depending on which weights vanish (|w| <= 1e-12).
SurfacePoint anchor_from_weights(const KPolyhedron& p, int triangle,
                                 std::array<double, 3> weights);

class MetricGraph {
 public:
  struct Arc {
    int to = 0;
    double weight = 0.0;
  };
  // A node as seen from one triangle: its id and its chart position there.
  struct BoundaryNode {
    int node = 0;
    Vec3 position;
  };

  static MetricGraph build(const KPolyhedron& p, int m);

  int resolution() const { return m_; }
  int num_nodes() const { return num_nodes_; }
  int num_vertices() const { return num_vertices_; }
  std::size_t num_arcs() const { return arcs_.size(); }
  Curvature curvature() const { return kappa_; }

  std::span<const Arc> arcs_from(int node) const {
    return {arcs_.data() + offsets_[node],
            static_cast<std::size_t>(offsets_[node + 1] - offsets_[node])};
  }
  std::span<const BoundaryNode> boundary(int triangle) const {
    return boundary_[triangle];
  }
  const std::array<Vec3, 3>& chart(int triangle) const { return charts_[triangle]; }

  // Node id of the j-th Steiner point (1 <= j <= m) of a gluing pair.
  int steiner_node(int pair, int j) const {
    return num_vertices_ + pair * m_ + (j - 1);
  }
  // Surface point represented by a graph node.
  SurfacePoint node_point(int node) const;

  // Where a surface point sits: the graph node if it is one, and its chart
  // positions in every triangle that contains it.
  struct Placement {
    int triangle = 0;
    Vec3 position;
  };
  struct Location {
    int node = -1;
    std::vector<Placement> placements;
  };
  Location locate(const SurfacePoint& x) const;

  // Single-source shortest paths over the base graph.
  std::vector<double> distances_from_node(int source) const;

 private:
  Curvature kappa_;
  int m_ = 0;
  int num_vertices_ = 0;
  int num_nodes_ = 0;
  std::vector<int> offsets_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<BoundaryNode>> boundary_;
  std::vector<std::array<Vec3, 3>> charts_;
  // Per slot 3*t+e: partner slot, flip flag, pair index, and whether the
  // slot is the pair's first member.
  struct SlotInfo {
    EdgeSlot partner;
    bool flipped = false;
    int pair = 0;
    bool is_first = true;
  };
  std::vector<SlotInfo> slots_;
  std::vector<int> vertex_of_corner_;
  std::vector<GluingPair> pairs_;

  friend class AugmentedMetric;
};

// The base graph augmented with a fixed set of query points as extra nodes
// (joined to the boundary nodes of their host triangles and to each other
// inside shared triangles). Distances among the query points form a metric.
class AugmentedMetric {
 public:
  AugmentedMetric(const MetricGraph& graph, std::span<const SurfacePoint> points);

  int num_points() const { return static_cast<int>(point_nodes_.size()); }
  // Shortest-path distances from query point i to every query point.
  std::vector<double> distances_from_point(int i) const;

 private:
  std::vector<double> dijkstra(int source) const;
  void add_arc(int u, int v, double w);

  const MetricGraph* graph_;
  int total_nodes_ = 0;
  std::vector<int> point_nodes_;
  // Extra arcs: extra_adj_[node] for every node touched by a query point.
  std::vector<std::vector<MetricGraph::Arc>> extra_adj_;
  std::vector<int> extra_index_;  // node -> row in extra_adj_ or -1
};

// Shortest-path distance between two surface points with resolution m.
double distance(const KPolyhedron& p, const SurfacePoint& x,
                const SurfacePoint& y, int m);
double distance(const MetricGraph& g, const SurfacePoint& x, const SurfacePoint& y);

}  // namespace kpoly
