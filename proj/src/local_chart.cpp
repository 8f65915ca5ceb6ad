#include "kpoly/local_chart.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpoly/errors.hpp"

namespace kpoly {

namespace {

double side_between(const KPolyhedron& p, int t, int c1, int c2) {
  // Side joining corners c1 and c2 is the one opposite the third corner.
  return p.edge_length({t, 3 - c1 - c2});
}

}  // namespace

double point_segment_distance(const ModelSpace& space, const Vec3& x, const Vec3& s,
                              const Vec3& e) {
  // The distance to a point moving along a short geodesic is unimodal.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  auto f = [&](double u) { return space.distance(x, space.along(s, e, u)); };
  double m1 = hi - kInvPhi * (hi - lo), m2 = lo + kInvPhi * (hi - lo);
  double f1 = f(m1), f2 = f(m2);
  for (int i = 0; i < 80; ++i) {
    if (f1 < f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - kInvPhi * (hi - lo);
      f1 = f(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + kInvPhi * (hi - lo);
      f2 = f(m2);
    }
  }
  return std::min({f1, f2, space.distance(x, s), space.distance(x, e)});
}

LocalChart LocalChart::build(const KPolyhedron& p, const SurfacePoint& x, double radius,
                             const Tolerances& tol) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(Errc::kParameterOutOfRange, "chart radius must be positive");
  }
  validate_anchor(p, x);
  LocalChart c(p.curvature());
  c.poly_ = &p;
  c.radius_ = radius;
  const ModelSpace& space = c.space_;

  if (const auto* va = std::get_if<VertexAnchor>(&x)) {
    const int v = va->vertex;
    c.vertex_ = v;
    c.theta_ = p.total_angle(v);
    const auto corners = p.corners_of(v);
    int t = corners[0].triangle, k = corners[0].corner;
    int e_in = (k + 1) % 3, e_out = (k + 2) % 3;
    double psi = 0.0;
    for (std::size_t j = 0; j < corners.size(); ++j) {
      if (corners[j].triangle != t || corners[j].corner != k) {
        throw Error(Errc::kNonManifoldLink, "star walk disagrees with the vertex link");
      }
      Sector s;
      s.triangle = t;
      s.corner = k;
      s.corner_in = e_out;  // the corner off the leaving edge lies on the entry edge
      s.corner_out = e_in;
      s.psi0 = psi;
      s.angle = p.corner_angle(t, k);
      s.len_in = side_between(p, t, k, s.corner_in);
      s.len_out = side_between(p, t, k, s.corner_out);
      const Vec3 o = space.origin();
      const double reach = point_segment_distance(space, o, space.polar(0.0, s.len_in),
                                                  space.polar(s.angle, s.len_out));
      if (radius >= reach) {
        throw Error(Errc::kParameterOutOfRange,
                    "radius " + std::to_string(radius) + " leaves the star of vertex " +
                        std::to_string(v) + " (reach " + std::to_string(reach) + ")");
      }
      c.sectors_.push_back(s);
      psi += s.angle;

      const EdgeSlot out{t, e_out};
      const bool at_start = edge_start_corner(e_out) == k;
      const EdgeSlot other = p.partner(out);
      const bool other_at_start = p.pair_flipped(p.pair_of(out)) ? at_start : !at_start;
      k = other_at_start ? edge_start_corner(other.edge) : edge_end_corner(other.edge);
      t = other.triangle;
      e_in = other.edge;
      e_out = (e_in == (k + 1) % 3) ? (k + 2) % 3 : (k + 1) % 3;
    }
    return c;
  }

  // Disk case: develop every triangle meeting the ball into one chart.
  const MetricGraph g = MetricGraph::build(p, 0);
  const MetricGraph::Location loc = g.locate(x);
  const int host = loc.placements.front().triangle;
  const Vec3 center = loc.placements.front().position;
  c.placed_.push_back({host, g.chart(host)});
  c.frame_ = space.frame(center, c.placed_[0].corners[0]);
  const double scale = std::max(1.0, radius);

  for (std::size_t qi = 0; qi < c.placed_.size(); ++qi) {
    const Placed cur = c.placed_[qi];
    for (int i = 0; i < 3; ++i) {
      const Vec3& pc = cur.corners[i];
      if (space.distance(center, pc) < radius &&
          std::fabs(p.omega(p.vertex_of(cur.triangle, i))) > tol.cone_omega) {
        throw Error(Errc::kDomain, "vertex " + std::to_string(p.vertex_of(cur.triangle, i)) +
                                       " with nonzero curvature lies within the radius");
      }
    }
    for (int e = 0; e < 3; ++e) {
      const Vec3& s = cur.corners[edge_start_corner(e)];
      const Vec3& en = cur.corners[edge_end_corner(e)];
      if (point_segment_distance(space, center, s, en) >= radius) continue;
      const EdgeSlot slot{cur.triangle, e};
      const EdgeSlot other = p.partner(slot);
      const bool flipped = p.pair_flipped(p.pair_of(slot));
      Placed next;
      next.triangle = other.triangle;
      const int s2 = edge_start_corner(other.edge), e2 = edge_end_corner(other.edge);
      const int o2 = other.edge;
      next.corners[s2] = flipped ? s : en;
      next.corners[e2] = flipped ? en : s;
      const double side = space.orientation(next.corners[s2], next.corners[e2],
                                            cur.corners[e]) > 0.0 ? -1 : 1;
      next.corners[o2] = space.place_third(next.corners[s2], next.corners[e2],
                                           side_between(p, other.triangle, s2, o2),
                                           side_between(p, other.triangle, e2, o2),
                                           static_cast<int>(side));
      bool duplicate = false;
      for (const Placed& q : c.placed_) {
        if (q.triangle != next.triangle) continue;
        double dev = 0.0;
        for (int i = 0; i < 3; ++i) dev = std::max(dev, space.distance(q.corners[i], next.corners[i]));
        if (dev <= 1e-9 * scale) {
          duplicate = true;
          break;
        }
        throw Error(Errc::kParameterOutOfRange,
                    "the ball of radius " + std::to_string(radius) +
                        " wraps onto itself (triangle " + std::to_string(next.triangle) +
                        " develops twice)");
      }
      if (!duplicate) c.placed_.push_back(next);
    }
  }
  return c;
}

double LocalChart::wrap_psi(double psi) const {
  psi = std::fmod(psi, theta_);
  if (psi < 0.0) psi += theta_;
  return psi;
}

double LocalChart::gap(double psi1, double psi2) const {
  const double d = wrap_psi(psi1 - psi2);
  return std::min(d, theta_ - d);
}

double LocalChart::distance(const LocalPoint& a, const LocalPoint& b) const {
  const double g = gap(a.psi, b.psi);
  if (g >= kPi) return a.r + b.r;
  return space_.distance(space_.polar(0.0, a.r), space_.polar(g, b.r));
}

LocalPoint LocalChart::along(const LocalPoint& a, const LocalPoint& b, double frac) const {
  const double g = gap(a.psi, b.psi);
  if (g >= kPi) {
    const double s = frac * (a.r + b.r);
    return s < a.r ? LocalPoint{a.r - s, a.psi} : LocalPoint{s - a.r, b.psi};
  }
  // The short way from a to b is counterclockwise when the ccw turn is
  // at most half of Theta.
  const double ccw = wrap_psi(b.psi - a.psi);
  const double sign = ccw <= theta_ - ccw ? 1.0 : -1.0;
  const Vec3 pa = space_.polar(0.0, a.r);
  const Vec3 pb = space_.polar(g, b.r);
  const Vec3 q = space_.along(pa, pb, frac);
  const double r = space_.distance(space_.origin(), q);
  const double ang = r > 0.0 ? space_.polar_angle(q) : 0.0;
  return {r, wrap_psi(a.psi + sign * ang)};
}

bool LocalChart::encloses_center(const std::array<LocalPoint, 3>& tri) const {
  std::array<double, 3> psi{wrap_psi(tri[0].psi), wrap_psi(tri[1].psi), wrap_psi(tri[2].psi)};
  std::sort(psi.begin(), psi.end());
  const double g0 = psi[1] - psi[0], g1 = psi[2] - psi[1], g2 = theta_ - (psi[2] - psi[0]);
  return g0 < kPi && g1 < kPi && g2 < kPi && g0 > 0.0 && g1 > 0.0 && g2 > 0.0;
}

SurfacePoint LocalChart::to_surface(const LocalPoint& x) const {
  if (x.r >= radius_) {
    throw Error(Errc::kParameterOutOfRange, "point outside the chart radius");
  }
  const KPolyhedron& p = *poly_;
  if (vertex_ >= 0) {
    if (x.r == 0.0) return VertexAnchor{vertex_};
    const double psi = wrap_psi(x.psi);
    std::size_t j = 0;
    while (j + 1 < sectors_.size() && psi >= sectors_[j + 1].psi0) ++j;
    const Sector& s = sectors_[j];
    const std::array<Vec3, 3> tri{space_.origin(), space_.polar(0.0, s.len_in),
                                  space_.polar(s.angle, s.len_out)};
    const Vec3 q = space_.polar(std::clamp(psi - s.psi0, 0.0, s.angle), x.r);
    const auto w = space_.barycentric(tri, q);
    std::array<double, 3> by_corner{};
    by_corner[s.corner] = w[0];
    by_corner[s.corner_in] = w[1];
    by_corner[s.corner_out] = w[2];
    for (double& v : by_corner) v = std::max(v, 0.0);
    return anchor_from_weights(p, s.triangle, by_corner);
  }
  const Vec3 q = space_.apply(frame_, space_.polar(x.psi, x.r));
  int best = 0;
  double best_min = -1e300;
  std::array<double, 3> best_w{};
  for (std::size_t i = 0; i < placed_.size(); ++i) {
    const auto w = space_.barycentric(placed_[i].corners, q);
    const double mn = std::min({w[0], w[1], w[2]});
    if (mn > best_min) {
      best_min = mn;
      best = static_cast<int>(i);
      best_w = w;
    }
  }
  for (double& v : best_w) v = std::max(v, 0.0);
  return anchor_from_weights(p, placed_[best].triangle, best_w);
}

}  // namespace kpoly
