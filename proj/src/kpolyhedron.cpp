#include "kpoly/kpolyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kpoly/errors.hpp"

namespace kpoly {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Keeps the smaller representative so classes are keyed by their lowest
  // corner.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

std::string slot_str(EdgeSlot s) {
  return "(" + std::to_string(s.triangle) + ", " + std::to_string(s.edge) + ")";
}

double side_of(const ModelTriangle& t, int i) {
  return i == 0 ? t.a : (i == 1 ? t.b : t.c);
}

}  // namespace

KPolyhedron KPolyhedron::build(Curvature kappa, std::vector<Sides> triangles,
                               GluingMap gluing, const Tolerances& tol) {
  KPolyhedron p;
  p.kappa_ = kappa;
  p.tol_ = tol;
  p.gluing_ = std::move(gluing);
  const int nf = static_cast<int>(triangles.size());
  if (nf == 0) throw Error(Errc::kInvalidTriangle, "no triangles");
  p.triangles_.reserve(nf);
  for (const Sides& s : triangles) {
    p.triangles_.push_back(ModelTriangle::make(kappa, s[0], s[1], s[2]));
  }

  p.slot_pair_.assign(3 * nf, -1);
  for (int k = 0; k < static_cast<int>(p.gluing_.pairs.size()); ++k) {
    const GluingPair& g = p.gluing_.pairs[k];
    for (EdgeSlot s : {g.first, g.second}) {
      if (s.triangle < 0 || s.triangle >= nf || s.edge < 0 || s.edge > 2) {
        throw Error(Errc::kOpenEdge, "gluing references missing slot " + slot_str(s));
      }
    }
    if (g.first == g.second) {
      throw Error(Errc::kNonManifoldLink,
                  "slot " + slot_str(g.first) + " glued to itself");
    }
    for (EdgeSlot s : {g.first, g.second}) {
      int& slot = p.slot_pair_[3 * s.triangle + s.edge];
      if (slot != -1) {
        throw Error(Errc::kNonManifoldLink,
                    "slot " + slot_str(s) + " appears in more than one gluing");
      }
      slot = k;
    }
    const double l1 = side_of(p.triangles_[g.first.triangle], g.first.edge);
    const double l2 = side_of(p.triangles_[g.second.triangle], g.second.edge);
    if (std::fabs(l1 - l2) > tol.edge_match * std::max(l1, l2)) {
      throw Error(Errc::kLengthMismatch,
                  "slots " + slot_str(g.first) + " and " + slot_str(g.second) +
                      " have lengths " + std::to_string(l1) + " and " +
                      std::to_string(l2));
    }
  }
  for (int i = 0; i < 3 * nf; ++i) {
    if (p.slot_pair_[i] == -1) {
      throw Error(Errc::kOpenEdge, "slot " + slot_str({i / 3, i % 3}) + " is not glued");
    }
  }

  // Corner identifications induced by each gluing.
  UnionFind uf(3 * nf);
  for (const GluingPair& g : p.gluing_.pairs) {
    const int s1 = 3 * g.first.triangle + edge_start_corner(g.first.edge);
    const int e1 = 3 * g.first.triangle + edge_end_corner(g.first.edge);
    const int s2 = 3 * g.second.triangle + edge_start_corner(g.second.edge);
    const int e2 = 3 * g.second.triangle + edge_end_corner(g.second.edge);
    if (g.flipped) {
      uf.unite(s1, s2);
      uf.unite(e1, e2);
    } else {
      uf.unite(s1, e2);
      uf.unite(e1, s2);
    }
  }
  std::vector<int> rep_to_vertex(3 * nf, -1);
  p.corner_vertex_.assign(3 * nf, -1);
  int nv = 0;
  for (int i = 0; i < 3 * nf; ++i) {
    const int r = uf.find(i);
    if (rep_to_vertex[r] == -1) rep_to_vertex[r] = nv++;
    p.corner_vertex_[i] = rep_to_vertex[r];
  }
  std::vector<int> class_size(nv, 0);
  for (int v : p.corner_vertex_) ++class_size[v];

  // Walk each vertex link; it must be one closed cycle through every corner
  // of the class.
  p.vertex_corners_.assign(nv, {});
  std::vector<char> seen(3 * nf, 0);
  for (int start = 0; start < 3 * nf; ++start) {
    const int v = p.corner_vertex_[start];
    if (!p.vertex_corners_[v].empty()) continue;
    Corner c{start / 3, start % 3};
    int leave = (c.corner + 2) % 3;  // the edge starting at this corner
    const Corner c0 = c;
    const int leave0 = leave;
    auto& link = p.vertex_corners_[v];
    do {
      const int idx = 3 * c.triangle + c.corner;
      if (seen[idx]) {
        throw Error(Errc::kNonManifoldLink,
                    "vertex " + std::to_string(v) + " link revisits a corner");
      }
      seen[idx] = 1;
      link.push_back(c);
      const EdgeSlot out{c.triangle, leave};
      const bool at_start = edge_start_corner(leave) == c.corner;
      const GluingPair& g = p.gluing_.pairs[p.slot_pair_[3 * out.triangle + out.edge]];
      const EdgeSlot other = (g.first == out) ? g.second : g.first;
      const bool other_at_start = g.flipped ? at_start : !at_start;
      const int nc = other_at_start ? edge_start_corner(other.edge)
                                    : edge_end_corner(other.edge);
      c = Corner{other.triangle, nc};
      // Leave through the corner's other edge.
      const int e_a = (nc + 1) % 3, e_b = (nc + 2) % 3;
      leave = (other.edge == e_a) ? e_b : e_a;
    } while (!(c == c0 && leave == leave0));
    if (static_cast<int>(link.size()) != class_size[v]) {
      throw Error(Errc::kNonManifoldLink,
                  "vertex " + std::to_string(v) + " link splits into " +
                      "several cycles");
    }
  }

  p.corner_angles_.resize(3 * nf);
  for (int t = 0; t < nf; ++t) {
    const auto ang = p.triangles_[t].angles();
    for (int i = 0; i < 3; ++i) p.corner_angles_[3 * t + i] = ang[i];
    p.total_area_ += triangle_area(p.triangles_[t]);
  }
  p.total_angles_.assign(nv, 0.0);
  for (int v = 0; v < nv; ++v) {
    for (const Corner& c : p.vertex_corners_[v]) {
      p.total_angles_[v] += p.corner_angles_[3 * c.triangle + c.corner];
    }
  }
  return p;
}

std::span<const Corner> KPolyhedron::corners_of(int v) const {
  if (v < 0 || v >= num_vertices()) {
    throw Error(Errc::kUnknownVertex, "vertex " + std::to_string(v));
  }
  return vertex_corners_[v];
}

double KPolyhedron::total_angle(int v) const {
  if (v < 0 || v >= num_vertices()) {
    throw Error(Errc::kUnknownVertex, "vertex " + std::to_string(v));
  }
  return total_angles_[v];
}

double KPolyhedron::omega(int v) const { return kTwoPi - total_angle(v); }

EdgeSlot KPolyhedron::partner(EdgeSlot slot) const {
  const GluingPair& g = gluing_.pairs.at(pair_of(slot));
  return g.first == slot ? g.second : g.first;
}

double KPolyhedron::edge_length(EdgeSlot slot) const {
  return side_of(triangles_.at(slot.triangle), slot.edge);
}

std::vector<Sides> KPolyhedron::side_lengths() const {
  std::vector<Sides> out;
  out.reserve(triangles_.size());
  for (const auto& t : triangles_) out.push_back({t.a, t.b, t.c});
  return out;
}

KPolyhedron KPolyhedron::with_curvature(Curvature kappa) const {
  for (const auto& t : triangles_) {
    if (!ModelTriangle::is_valid(kappa, t.a, t.b, t.c)) {
      throw Error(Errc::kSphericalSizeOverflow,
                  "triangle too large for kappa = " + std::to_string(kappa.value()));
    }
  }
  return build(kappa, side_lengths(), gluing_, tol_);
}

double singular_curvature(const KPolyhedron& p, int v) { return p.omega(v); }

AlexandrovReport check_alexandrov(const KPolyhedron& p, const Tolerances& tol) {
  AlexandrovReport r;
  for (int v = 0; v < p.num_vertices(); ++v) {
    if (p.total_angle(v) > kTwoPi + tol.alexandrov_slack) {
      r.pass = false;
      r.offending.push_back(v);
    }
  }
  return r;
}

double gauss_bonnet_residual(const KPolyhedron& p) {
  double sum = 0.0;
  for (int v = 0; v < p.num_vertices(); ++v) sum += p.omega(v);
  return sum + p.curvature().value() * p.total_area() -
         kTwoPi * p.euler_characteristic();
}

std::vector<std::pair<int, double>> conical_points(const KPolyhedron& p,
                                                   double threshold) {
  if (!(threshold >= 0.0)) {
    throw Error(Errc::kParameterOutOfRange, "threshold must be non-negative");
  }
  std::vector<std::pair<int, double>> out;
  for (int v = 0; v < p.num_vertices(); ++v) {
    const double w = p.omega(v);
    if (w > threshold) out.emplace_back(v, w);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& l, const auto& r) { return l.second > r.second; });
  return out;
}

KPolyhedron rescale(const KPolyhedron& p, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(Errc::kParameterOutOfRange, "scale factor must be positive");
  }
  const Curvature k = p.curvature().rescaled(s);
  if (k.value() == 0.0) {
    // Euclidean angles are scale invariant; keeping them makes omega
    // commute with rescale exactly.
    KPolyhedron q = p;
    for (ModelTriangle& t : q.triangles_) {
      t.a *= s;
      t.b *= s;
      t.c *= s;
    }
    q.total_area_ *= s * s;
    return q;
  }
  std::vector<Sides> sides = p.side_lengths();
  for (Sides& t : sides) {
    for (double& x : t) x *= s;
    if (!ModelTriangle::is_valid(k, t[0], t[1], t[2])) {
      throw Error(Errc::kSphericalSizeOverflow,
                  "rescaled triangle leaves the spherical size bound");
    }
  }
  return KPolyhedron::build(k, std::move(sides), p.gluing());
}

}  // namespace kpoly
