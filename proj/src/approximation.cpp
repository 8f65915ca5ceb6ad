#include "kpoly/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "kpoly/errors.hpp"

namespace kpoly {

namespace {

double great_circle(const Vec3& u, const Vec3& v) {
  return std::atan2(norm(cross(u, v)), dot(u, v));
}

GeodesicTriangulation spherical_from_mesh(int level, std::vector<Vec3> vertices,
                                          std::vector<Face> faces) {
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int u, int w) {
      const std::pair<int, int> key{std::min(u, w), std::max(u, w)};
      const auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      vertices.push_back(normalized(vertices[u] + vertices[w]));
      const int id = static_cast<int>(vertices.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Face> next;
    next.reserve(4 * faces.size());
    for (const Face& f : faces) {
      const int ma = mid(f[1], f[2]);
      const int mb = mid(f[2], f[0]);
      const int mc = mid(f[0], f[1]);
      next.push_back({f[0], mc, mb});
      next.push_back({mc, f[1], ma});
      next.push_back({mb, ma, f[2]});
      next.push_back({ma, mb, mc});
    }
    faces = std::move(next);
  }
  GeodesicTriangulation t;
  t.level = level;
  t.sides = sides_from_faces(
      faces, [&](int a, int b) { return great_circle(vertices[a], vertices[b]); });
  t.gluing = gluing_from_faces(faces);
  for (const Sides& s : t.sides) {
    t.max_diam = std::max({t.max_diam, s[0], s[1], s[2]});
  }
  t.vertices = std::move(vertices);
  t.faces = std::move(faces);
  return t;
}

void check_level(int level) {
  if (level < 0) throw Error(Errc::kParameterOutOfRange, "level must be >= 0");
}

}  // namespace

GeodesicTriangulation sphere_triangulation(int level) {
  check_level(level);
  auto v = icosahedron_vertices();
  auto faces = equilateral_hull_faces(v, 4.0 / std::sqrt(10.0 + 2.0 * std::sqrt(5.0)));
  return spherical_from_mesh(level, std::move(v), std::move(faces));
}

GeodesicTriangulation octant_triangulation(int level) {
  check_level(level);
  auto v = octahedron_vertices();
  auto faces = equilateral_hull_faces(v, std::sqrt(2.0));
  return spherical_from_mesh(level, std::move(v), std::move(faces));
}

KPolyhedron replace_euclidean(const GeodesicTriangulation& t) {
  return replace_kappa(t, Curvature(0.0));
}

KPolyhedron replace_kappa(const GeodesicTriangulation& t, Curvature kappa) {
  return KPolyhedron::build(kappa, t.sides, t.gluing);
}

// ---------------------------------------------------------------------------

GeodesicTriangulation SphereTarget::triangulation(int level) const {
  return sphere_triangulation(level);
}

std::vector<Vec3> SphereTarget::matched_points(int k) const {
  if (k < 1) throw Error(Errc::kParameterOutOfRange, "need k >= 1 matched points");
  for (int level = 0;; ++level) {
    auto t = sphere_triangulation(level);
    if (static_cast<int>(t.vertices.size()) >= k) {
      t.vertices.resize(k);
      return t.vertices;
    }
  }
}

double SphereTarget::distance(const Vec3& a, const Vec3& b) const {
  return great_circle(a, b);
}

SurfacePoint SphereTarget::locate(const GeodesicTriangulation& t, const KPolyhedron& p,
                                  const Vec3& x) const {
  int best_t = -1;
  std::array<double, 3> best_w{};
  double best_min = -1e300;
  for (int f = 0; f < static_cast<int>(t.faces.size()); ++f) {
    const Vec3& a = t.vertices[t.faces[f][0]];
    const Vec3& b = t.vertices[t.faces[f][1]];
    const Vec3& c = t.vertices[t.faces[f][2]];
    const double det = det3(a, b, c);
    std::array<double, 3> w{det3(x, b, c) / det, det3(a, x, c) / det, det3(a, b, x) / det};
    const double s = w[0] + w[1] + w[2];
    if (!(s > 0.0)) continue;
    for (double& v : w) v /= s;
    const double mn = std::min({w[0], w[1], w[2]});
    if (mn > best_min) {
      best_min = mn;
      best_t = f;
      best_w = w;
    }
  }
  if (best_t < 0 || best_min < -1e-9) {
    throw Error(Errc::kAnchorInvalid, "point not covered by the triangulation");
  }
  for (double& v : best_w) v = std::max(v, 0.0);
  return anchor_from_weights(p, best_t, best_w);
}

GeodesicTriangulation FlatTorusTarget::triangulation(int level) const {
  check_level(level);
  const int n = 1 << level;
  const KPolyhedron torus = flat_torus(n, 1.0);
  GeodesicTriangulation t;
  t.level = level;
  t.sides = torus.side_lengths();
  t.gluing = torus.gluing();
  for (const Sides& s : t.sides) t.max_diam = std::max({t.max_diam, s[0], s[1], s[2]});
  return t;
}

std::vector<Vec3> FlatTorusTarget::matched_points(int k) const {
  if (k < 1) throw Error(Errc::kParameterOutOfRange, "need k >= 1 matched points");
  const int q = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k))));
  std::vector<Vec3> out;
  for (int j = 0; j < q && static_cast<int>(out.size()) < k; ++j) {
    for (int i = 0; i < q && static_cast<int>(out.size()) < k; ++i) {
      out.push_back({(i + 0.5) / q, (j + 0.5) / q, 0.0});
    }
  }
  return out;
}

double FlatTorusTarget::distance(const Vec3& a, const Vec3& b) const {
  auto wrap = [](double d) {
    d = std::fabs(d);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
  };
  return std::hypot(wrap(a.x - b.x), wrap(a.y - b.y));
}

SurfacePoint FlatTorusTarget::locate(const GeodesicTriangulation& t, const KPolyhedron& p,
                                     const Vec3& x) const {
  const int n = 1 << t.level;
  const double gx = (x.x - std::floor(x.x)) * n;
  const double gy = (x.y - std::floor(x.y)) * n;
  const int i = std::min(static_cast<int>(gx), n - 1);
  const int j = std::min(static_cast<int>(gy), n - 1);
  const double u = gx - i, v = gy - j;
  const int lower = 2 * (j * n + i);
  // Lower triangle (0,0), (1,0), (1,1); upper (0,0), (1,1), (0,1).
  if (v <= u) return anchor_from_weights(p, lower, {1.0 - u, u - v, v});
  return anchor_from_weights(p, lower + 1, {1.0 - v, u, v - u});
}

std::vector<ConvergenceRow> convergence_experiment(const TargetSurface& target,
                                                   const std::vector<int>& levels,
                                                   int k, int m,
                                                   ExecutionPolicy policy) {
  if (k < 2) throw Error(Errc::kParameterOutOfRange, "need k >= 2 matched points");
  const auto pts = target.matched_points(k);
  std::vector<double> dt(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) dt[i * k + j] = dt[j * k + i] = target.distance(pts[i], pts[j]);
  }
  const FiniteMetricSpace y(k, std::move(dt));

  std::vector<ConvergenceRow> rows;
  for (int level : levels) {
    const GeodesicTriangulation t = target.triangulation(level);
    const KPolyhedron p = replace_euclidean(t);
    const MetricGraph g = MetricGraph::build(p, m);
    std::vector<SurfacePoint> anchors;
    anchors.reserve(k);
    for (const Vec3& x : pts) anchors.push_back(target.locate(t, p, x));
    const AugmentedMetric metric(g, anchors);
    const FiniteMetricSpace x(k, pairwise_distances(metric, policy));

    ConvergenceRow row;
    row.level = level;
    row.delta = t.max_diam;
    row.gh_upper = gh_matched_upper(x, y).value;
    for (int v = 0; v < p.num_vertices(); ++v) {
      row.max_omega = std::max(row.max_omega, std::fabs(p.omega(v)));
    }
    rows.push_back(row);
  }
  return rows;
}

KPolyhedron subdivide(const KPolyhedron& p) {
  const ModelSpace space(p.curvature());
  const int nf = p.num_faces();
  std::vector<Sides> sides(4 * nf);
  GluingMap g;
  for (int t = 0; t < nf; ++t) {
    const ModelTriangle& tri = p.triangle(t);
    const auto ch = chart_embed(tri);
    const Vec3 m0 = space.along(ch[1], ch[2], 0.5);
    const Vec3 m1 = space.along(ch[2], ch[0], 0.5);
    const Vec3 m2 = space.along(ch[0], ch[1], 0.5);
    const double d12 = space.distance(m1, m2);
    const double d02 = space.distance(m0, m2);
    const double d01 = space.distance(m0, m1);
    const double a = tri.a / 2, b = tri.b / 2, c = tri.c / 2;
    sides[4 * t + 0] = {d12, b, c};
    sides[4 * t + 1] = {a, d02, c};
    sides[4 * t + 2] = {a, b, d01};
    sides[4 * t + 3] = {d12, d02, d01};
    for (int e = 0; e < 3; ++e) {
      g.pairs.push_back({{4 * t + 3, e}, {4 * t + e, e}, false});
    }
  }
  // Halves of parent edge e of triangle t, from its start to its end.
  auto first = [](EdgeSlot s) {
    static constexpr int child[3] = {1, 2, 0};
    return EdgeSlot{4 * s.triangle + child[s.edge], s.edge};
  };
  auto second = [](EdgeSlot s) {
    static constexpr int child[3] = {2, 0, 1};
    return EdgeSlot{4 * s.triangle + child[s.edge], s.edge};
  };
  for (const GluingPair& pr : p.gluing().pairs) {
    if (pr.flipped) {
      g.pairs.push_back({first(pr.first), first(pr.second), true});
      g.pairs.push_back({second(pr.first), second(pr.second), true});
    } else {
      g.pairs.push_back({first(pr.first), second(pr.second), false});
      g.pairs.push_back({second(pr.first), first(pr.second), false});
    }
  }
  return KPolyhedron::build(p.curvature(), std::move(sides), std::move(g));
}

std::vector<SemicontinuityRow> semicontinuity_experiment(const KPolyhedron& p,
                                                         int p_vertex, int levels) {
  if (levels < 0) throw Error(Errc::kParameterOutOfRange, "levels must be >= 0");
  const Corner anchor = p.corners_of(p_vertex).front();
  std::vector<SemicontinuityRow> rows;
  KPolyhedron cur = p;
  // Corners of the original polyhedron, tracked through refinement.
  std::vector<Corner> original;
  for (int t = 0; t < p.num_faces(); ++t) {
    for (int i = 0; i < 3; ++i) original.push_back({t, i});
  }
  Corner tracked = anchor;
  for (int level = 0; level <= levels; ++level) {
    if (level > 0) {
      cur = subdivide(cur);
      tracked = {4 * tracked.triangle + tracked.corner, tracked.corner};
      for (Corner& c : original) c = {4 * c.triangle + c.corner, c.corner};
    }
    std::vector<char> is_old(cur.num_vertices(), 0);
    for (const Corner& c : original) is_old[cur.vertex_of(c.triangle, c.corner)] = 1;
    SemicontinuityRow row;
    row.level = level;
    row.omega_p = cur.omega(cur.vertex_of(tracked.triangle, tracked.corner));
    for (int v = 0; v < cur.num_vertices(); ++v) {
      if (!is_old[v]) row.max_new_omega = std::max(row.max_new_omega, std::fabs(cur.omega(v)));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace kpoly
