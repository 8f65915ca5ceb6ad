#include "kpoly/fixtures.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "kpoly/errors.hpp"

namespace kpoly {

GluingMap gluing_from_faces(const std::vector<Face>& faces) {
  std::map<std::pair<int, int>, EdgeSlot> half_edges;
  for (int t = 0; t < static_cast<int>(faces.size()); ++t) {
    for (int e = 0; e < 3; ++e) {
      const std::pair<int, int> key{faces[t][edge_start_corner(e)],
                                    faces[t][edge_end_corner(e)]};
      if (!half_edges.emplace(key, EdgeSlot{t, e}).second) {
        throw Error(Errc::kNonManifoldLink,
                    "directed edge " + std::to_string(key.first) + "->" +
                        std::to_string(key.second) + " occurs twice");
      }
    }
  }
  GluingMap g;
  for (const auto& [key, slot] : half_edges) {
    if (key.first > key.second) continue;
    const auto it = half_edges.find({key.second, key.first});
    if (it == half_edges.end()) {
      throw Error(Errc::kOpenEdge, "edge " + std::to_string(key.first) + "-" +
                                       std::to_string(key.second) + " has one side");
    }
    g.pairs.push_back({slot, it->second, false});
  }
  return g;
}

std::vector<Sides> sides_from_faces(const std::vector<Face>& faces,
                                    const std::function<double(int, int)>& length) {
  std::vector<Sides> out;
  out.reserve(faces.size());
  for (const Face& f : faces) {
    out.push_back({length(f[1], f[2]), length(f[2], f[0]), length(f[0], f[1])});
  }
  return out;
}

KPolyhedron polyhedron_from_faces(Curvature kappa, const std::vector<Face>& faces,
                                  const std::function<double(int, int)>& length) {
  return KPolyhedron::build(kappa, sides_from_faces(faces, length),
                            gluing_from_faces(faces));
}

std::vector<Face> equilateral_hull_faces(const std::vector<Vec3>& v, double edge) {
  const int n = static_cast<int>(v.size());
  auto adjacent = [&](int i, int j) {
    return std::fabs(norm(v[i] - v[j]) - edge) < 1e-9 * edge;
  };
  std::vector<Face> faces;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!adjacent(i, j)) continue;
      for (int k = j + 1; k < n; ++k) {
        if (!adjacent(i, k) || !adjacent(j, k)) continue;
        const Vec3 normal = cross(v[j] - v[i], v[k] - v[i]);
        if (dot(normal, v[i] + v[j] + v[k]) > 0.0) {
          faces.push_back({i, j, k});
        } else {
          faces.push_back({i, k, j});
        }
      }
    }
  }
  return faces;
}

std::vector<Vec3> icosahedron_vertices() {
  const double phi = std::numbers::phi;
  std::vector<Vec3> v;
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-1.0, 1.0}) {
      v.push_back({0.0, s1, s2 * phi});
      v.push_back({s1, s2 * phi, 0.0});
      v.push_back({s2 * phi, 0.0, s1});
    }
  }
  for (Vec3& p : v) p = normalized(p);
  return v;
}

std::vector<Vec3> octahedron_vertices() {
  return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

KPolyhedron tetrahedron(double side) {
  const std::vector<Vec3> v{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  const double edge = 2.0 * std::numbers::sqrt2;
  const auto faces = equilateral_hull_faces(v, edge);
  return polyhedron_from_faces(Curvature(0.0), faces, [&](int, int) { return side; });
}

KPolyhedron icosahedron(double side) {
  const auto v = icosahedron_vertices();
  // Chord of the unit-sphere icosahedron: 4 / sqrt(10 + 2 sqrt 5).
  const double e = 4.0 / std::sqrt(10.0 + 2.0 * std::sqrt(5.0));
  const auto faces = equilateral_hull_faces(v, e);
  return polyhedron_from_faces(Curvature(0.0), faces, [&](int, int) { return side; });
}

KPolyhedron cube(double side) {
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i) {
    v.push_back({(i & 1) ? 0.5 : -0.5, (i & 2) ? 0.5 : -0.5, (i & 4) ? 0.5 : -0.5});
  }
  // Each square face as a 4-cycle, split along the diagonal q0-q2.
  const std::array<std::array<int, 4>, 6> quads{{{0, 1, 3, 2},
                                                 {4, 5, 7, 6},
                                                 {0, 1, 5, 4},
                                                 {2, 3, 7, 6},
                                                 {0, 2, 6, 4},
                                                 {1, 3, 7, 5}}};
  std::vector<Face> faces;
  for (const auto& q : quads) {
    for (const Face f : {Face{q[0], q[1], q[2]}, Face{q[0], q[2], q[3]}}) {
      const Vec3 normal = cross(v[f[1]] - v[f[0]], v[f[2]] - v[f[0]]);
      if (dot(normal, v[f[0]] + v[f[1]] + v[f[2]]) > 0.0) {
        faces.push_back(f);
      } else {
        faces.push_back({f[0], f[2], f[1]});
      }
    }
  }
  return polyhedron_from_faces(Curvature(0.0), faces,
                               [&](int a, int b) { return side * norm(v[a] - v[b]); });
}

KPolyhedron flat_torus(int n, double side) {
  if (n < 1) throw Error(Errc::kParameterOutOfRange, "torus grid needs n >= 1");
  const double h = side / n;
  const double d = h * std::numbers::sqrt2;
  auto lower = [n](int i, int j) {
    return 2 * (((j % n + n) % n) * n + ((i % n + n) % n));
  };
  auto upper = [&](int i, int j) { return lower(i, j) + 1; };
  std::vector<Sides> sides(2 * n * n);
  GluingMap g;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Lower: (i,j), (i+1,j), (i+1,j+1). Upper: (i,j), (i+1,j+1), (i,j+1).
      sides[lower(i, j)] = {h, d, h};
      sides[upper(i, j)] = {h, h, d};
      g.pairs.push_back({{lower(i, j), 1}, {upper(i, j), 2}, false});
      g.pairs.push_back({{upper(i, j), 0}, {lower(i, j + 1), 2}, false});
      g.pairs.push_back({{lower(i, j), 0}, {upper(i + 1, j), 1}, false});
    }
  }
  return KPolyhedron::build(Curvature(0.0), std::move(sides), std::move(g));
}

KPolyhedron doubled_square(double side) {
  const std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  const std::vector<Face> faces{{0, 1, 2}, {0, 2, 3}, {1, 0, 3}, {1, 3, 2}};
  return polyhedron_from_faces(Curvature(0.0), faces,
                               [&](int a, int b) { return side * norm(v[a] - v[b]); });
}

KPolyhedron octant_sphere() {
  const auto v = octahedron_vertices();
  const auto faces = equilateral_hull_faces(v, std::numbers::sqrt2);
  return polyhedron_from_faces(Curvature(1.0), faces,
                               [](int, int) { return std::numbers::pi / 2.0; });
}

KPolyhedron heptagonal_bipyramid(double side) {
  constexpr int k = 7;
  const int north = k, south = k + 1;
  std::vector<Face> faces;
  for (int i = 0; i < k; ++i) {
    const int j = (i + 1) % k;
    faces.push_back({north, i, j});
    faces.push_back({south, j, i});
  }
  return polyhedron_from_faces(Curvature(0.0), faces, [&](int, int) { return side; });
}

}  // namespace kpoly
