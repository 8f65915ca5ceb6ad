#include "kpoly/metric_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "kpoly/errors.hpp"

namespace kpoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_face_weights(const std::array<double, 3>& w) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x > 0.0)) {
      throw Error(Errc::kAnchorInvalid, "face weights must be strictly positive");
    }
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw Error(Errc::kAnchorInvalid, "face weights must sum to 1");
  }
}

void check_edge_param(double param) {
  if (!(param > 0.0 && param < 1.0)) {
    throw Error(Errc::kAnchorInvalid, "edge parameter must lie in (0, 1)");
  }
}

using Heap = std::priority_queue<std::pair<double, int>,
                                 std::vector<std::pair<double, int>>,
                                 std::greater<>>;

}  // namespace

void validate_anchor(const KPolyhedron& p, const SurfacePoint& x) {
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, VertexAnchor>) {
          if (a.vertex < 0 || a.vertex >= p.num_vertices()) {
            throw Error(Errc::kAnchorInvalid, "no vertex " + std::to_string(a.vertex));
          }
        } else {
          if (a.triangle < 0 || a.triangle >= p.num_faces()) {
            throw Error(Errc::kAnchorInvalid, "no triangle " + std::to_string(a.triangle));
          }
          if constexpr (std::is_same_v<T, EdgeAnchor>) {
            if (a.edge < 0 || a.edge > 2) {
              throw Error(Errc::kAnchorInvalid, "edge index must be 0, 1 or 2");
            }
            check_edge_param(a.param);
          } else {
            check_face_weights(a.weights);
          }
        }
      },
      x);
}

SurfacePoint anchor_from_weights(const KPolyhedron& p, int triangle,
                                 std::array<double, 3> w) {
  constexpr double kZero = 1e-12;
  int zeros = 0, nonzero = 0, zero_at = 0;
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (std::fabs(w[i]) <= kZero) {
      w[i] = 0.0;
      ++zeros;
      zero_at = i;
    } else {
      nonzero = i;
    }
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  if (zeros >= 2) return VertexAnchor{p.vertex_of(triangle, nonzero)};
  if (zeros == 0) return FaceAnchor{triangle, w};
  const ModelTriangle& tri = p.triangle(triangle);
  const ModelSpace space(p.curvature());
  const auto ch = chart_embed(tri);
  const Vec3 x = space.from_barycentric(ch, w);
  const double side = p.edge_length({triangle, zero_at});
  const double param =
      std::clamp(space.distance(ch[edge_start_corner(zero_at)], x) / side, 1e-15,
                 1.0 - 1e-15);
  return EdgeAnchor{triangle, zero_at, param};
}

MetricGraph MetricGraph::build(const KPolyhedron& p, int m) {
  if (m < 0) throw Error(Errc::kParameterOutOfRange, "resolution m must be >= 0");
  MetricGraph g;
  g.kappa_ = p.curvature();
  g.m_ = m;
  g.num_vertices_ = p.num_vertices();
  g.num_nodes_ = p.num_vertices() + p.num_edges() * m;
  g.pairs_ = p.gluing().pairs;
  const ModelSpace space(p.curvature());
  const int nf = p.num_faces();

  g.charts_.reserve(nf);
  for (const auto& t : p.triangles()) g.charts_.push_back(chart_embed(t));

  g.slots_.resize(3 * nf);
  for (int k = 0; k < p.num_edges(); ++k) {
    const GluingPair& pr = g.pairs_[k];
    g.slots_[3 * pr.first.triangle + pr.first.edge] = {pr.second, pr.flipped, k, true};
    g.slots_[3 * pr.second.triangle + pr.second.edge] = {pr.first, pr.flipped, k, false};
  }
  g.vertex_of_corner_.resize(3 * nf);
  for (int t = 0; t < nf; ++t) {
    for (int i = 0; i < 3; ++i) g.vertex_of_corner_[3 * t + i] = p.vertex_of(t, i);
  }

  g.boundary_.resize(nf);
  for (int t = 0; t < nf; ++t) {
    auto& b = g.boundary_[t];
    const auto& ch = g.charts_[t];
    for (int i = 0; i < 3; ++i) b.push_back({p.vertex_of(t, i), ch[i]});
    for (int e = 0; e < 3; ++e) {
      const SlotInfo& s = g.slots_[3 * t + e];
      const Vec3& from = ch[edge_start_corner(e)];
      const Vec3& to = ch[edge_end_corner(e)];
      for (int j = 1; j <= m; ++j) {
        double f = static_cast<double>(j) / (m + 1);
        if (!s.is_first && !s.flipped) f = 1.0 - f;
        b.push_back({g.steiner_node(s.pair, j), space.along(from, to, f)});
      }
    }
  }

  std::vector<std::tuple<int, int, double>> edges;
  for (int t = 0; t < nf; ++t) {
    const auto& b = g.boundary_[t];
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        if (b[i].node == b[j].node) continue;
        const double w = space.distance(b[i].position, b[j].position);
        edges.emplace_back(std::min(b[i].node, b[j].node),
                           std::max(b[i].node, b[j].node), w);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  // Keep the lightest of parallel arcs.
  std::vector<std::tuple<int, int, double>> unique;
  unique.reserve(edges.size());
  for (const auto& e : edges) {
    if (!unique.empty() && std::get<0>(unique.back()) == std::get<0>(e) &&
        std::get<1>(unique.back()) == std::get<1>(e)) {
      continue;
    }
    unique.push_back(e);
  }
  std::vector<int> degree(g.num_nodes_ + 1, 0);
  for (const auto& [u, v, w] : unique) {
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(g.num_nodes_ + 1, 0);
  for (int i = 0; i < g.num_nodes_; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.arcs_.resize(g.offsets_.back());
  std::vector<int> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v, w] : unique) {
    g.arcs_[fill[u]++] = {v, w};
    g.arcs_[fill[v]++] = {u, w};
  }
  return g;
}

SurfacePoint MetricGraph::node_point(int node) const {
  if (node < 0 || node >= num_nodes_) {
    throw Error(Errc::kAnchorInvalid, "no graph node " + std::to_string(node));
  }
  if (node < num_vertices_) return VertexAnchor{node};
  const int k = (node - num_vertices_) / m_;
  const int j = (node - num_vertices_) % m_ + 1;
  const GluingPair& pr = pairs_[k];
  return EdgeAnchor{pr.first.triangle, pr.first.edge, static_cast<double>(j) / (m_ + 1)};
}

MetricGraph::Location MetricGraph::locate(const SurfacePoint& x) const {
  const ModelSpace space(kappa_);
  const int nf = static_cast<int>(charts_.size());
  Location loc;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, VertexAnchor>) {
          if (a.vertex < 0 || a.vertex >= num_vertices_) {
            throw Error(Errc::kAnchorInvalid, "no vertex " + std::to_string(a.vertex));
          }
          loc.node = a.vertex;
        } else {
          if (a.triangle < 0 || a.triangle >= nf) {
            throw Error(Errc::kAnchorInvalid, "no triangle " + std::to_string(a.triangle));
          }
          const auto& ch = charts_[a.triangle];
          if constexpr (std::is_same_v<T, EdgeAnchor>) {
            if (a.edge < 0 || a.edge > 2) {
              throw Error(Errc::kAnchorInvalid, "edge index must be 0, 1 or 2");
            }
            check_edge_param(a.param);
            loc.placements.push_back(
                {a.triangle, space.along(ch[edge_start_corner(a.edge)],
                                         ch[edge_end_corner(a.edge)], a.param)});
            const SlotInfo& s = slots_[3 * a.triangle + a.edge];
            const double f = s.flipped ? a.param : 1.0 - a.param;
            const auto& pc = charts_[s.partner.triangle];
            loc.placements.push_back(
                {s.partner.triangle,
                 space.along(pc[edge_start_corner(s.partner.edge)],
                             pc[edge_end_corner(s.partner.edge)], f)});
          } else {
            check_face_weights(a.weights);
            loc.placements.push_back(
                {a.triangle, space.from_barycentric(ch, a.weights)});
          }
        }
      },
      x);
  return loc;
}

std::vector<double> MetricGraph::distances_from_node(int source) const {
  std::vector<double> dist(num_nodes_, kInf);
  Heap heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const Arc& a : arcs_from(u)) {
      const double nd = d + a.weight;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        heap.emplace(nd, a.to);
      }
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------

AugmentedMetric::AugmentedMetric(const MetricGraph& graph,
                                 std::span<const SurfacePoint> points)
    : graph_(&graph) {
  const ModelSpace space(graph.curvature());
  const int base = graph.num_nodes();
  std::vector<MetricGraph::Location> locs;
  locs.reserve(points.size());
  int extra = 0;
  for (const SurfacePoint& x : points) {
    locs.push_back(graph.locate(x));
    point_nodes_.push_back(locs.back().node >= 0 ? locs.back().node : base + extra++);
  }
  total_nodes_ = base + extra;
  extra_index_.assign(total_nodes_, -1);

  for (std::size_t i = 0; i < locs.size(); ++i) {
    const int u = point_nodes_[i];
    for (const auto& pl : locs[i].placements) {
      for (const auto& b : graph.boundary(pl.triangle)) {
        add_arc(u, b.node, space.distance(pl.position, b.position));
      }
    }
  }
  // Direct arcs between query points sharing a host triangle.
  for (std::size_t i = 0; i < locs.size(); ++i) {
    for (std::size_t j = i + 1; j < locs.size(); ++j) {
      double best = kInf;
      for (const auto& pi : locs[i].placements) {
        for (const auto& pj : locs[j].placements) {
          if (pi.triangle == pj.triangle) {
            best = std::min(best, space.distance(pi.position, pj.position));
          }
        }
      }
      if (best < kInf && point_nodes_[i] != point_nodes_[j]) {
        add_arc(point_nodes_[i], point_nodes_[j], best);
      }
    }
  }
}

void AugmentedMetric::add_arc(int u, int v, double w) {
  for (int x : {u, v}) {
    if (extra_index_[x] == -1) {
      extra_index_[x] = static_cast<int>(extra_adj_.size());
      extra_adj_.emplace_back();
    }
  }
  extra_adj_[extra_index_[u]].push_back({v, w});
  extra_adj_[extra_index_[v]].push_back({u, w});
}

std::vector<double> AugmentedMetric::dijkstra(int source) const {
  const int base = graph_->num_nodes();
  std::vector<double> dist(total_nodes_, kInf);
  Heap heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  auto relax = [&](double d, const MetricGraph::Arc& a) {
    const double nd = d + a.weight;
    if (nd < dist[a.to]) {
      dist[a.to] = nd;
      heap.emplace(nd, a.to);
    }
  };
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u < base) {
      for (const auto& a : graph_->arcs_from(u)) relax(d, a);
    }
    if (extra_index_[u] != -1) {
      for (const auto& a : extra_adj_[extra_index_[u]]) relax(d, a);
    }
  }
  return dist;
}

std::vector<double> AugmentedMetric::distances_from_point(int i) const {
  const auto dist = dijkstra(point_nodes_.at(i));
  std::vector<double> out(point_nodes_.size());
  for (std::size_t j = 0; j < point_nodes_.size(); ++j) out[j] = dist[point_nodes_[j]];
  return out;
}

double distance(const MetricGraph& g, const SurfacePoint& x, const SurfacePoint& y) {
  const std::array<SurfacePoint, 2> pts{x, y};
  const AugmentedMetric am(g, pts);
  return am.distances_from_point(0)[1];
}

double distance(const KPolyhedron& p, const SurfacePoint& x,
                const SurfacePoint& y, int m) {
  validate_anchor(p, x);
  validate_anchor(p, y);
  return distance(MetricGraph::build(p, m), x, y);
}

}  // namespace kpoly
