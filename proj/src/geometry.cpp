#include "u3/geometry.hpp"

#include <algorithm>

namespace u3 {

namespace {

Rat sq_dist(const P2& a, const P2& b) {
  Rat dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

bool on_segment(const P2& p, const P2& a, const P2& b) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

/// Closest point to p on the closed segment [a, b].
P2 closest_on_segment(const P2& p, const P2& a, const P2& b) {
  Rat dx = b.x - a.x, dy = b.y - a.y;
  Rat len2 = dx * dx + dy * dy;
  if (len2 == 0) return a;
  Rat t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return {a.x + t * dx, a.y + t * dy};
}

}  // namespace

std::vector<P2> convex_hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<P2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {  // upper chain
    while (k >= lo && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool point_in_hull(const P2& p, const std::vector<P2>& hull) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return p == hull[0];
  if (hull.size() == 2) return on_segment(p, hull[0], hull[1]);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const P2& a = hull[i];
    const P2& b = hull[(i + 1) % hull.size()];
    if (orient(a, b, p) < 0) return false;
  }
  return true;
}

std::optional<P2> segment_intersection(const P2& a, const P2& b, const P2& c, const P2& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    // Proper crossing: solve for the intersection parameter on [a, b].
    Rat rx = b.x - a.x, ry = b.y - a.y;
    Rat sx = d.x - c.x, sy = d.y - c.y;
    Rat denom = rx * sy - ry * sx;
    Rat t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / denom;
    return P2{a.x + t * rx, a.y + t * ry};
  }
  if (on_segment(c, a, b)) return c;
  if (on_segment(d, a, b)) return d;
  if (on_segment(a, c, d)) return a;
  if (on_segment(b, c, d)) return b;
  return std::nullopt;
}

std::optional<std::vector<std::pair<std::size_t, Rat>>> convex_coefficients(
    const P2& p, const std::vector<P2>& pts) {
  // Single-point and segment certificates first.
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] == p) return std::vector<std::pair<std::size_t, Rat>>{{i, Rat(1)}};
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (!on_segment(p, pts[i], pts[j])) continue;
      const P2 &a = pts[i], &b = pts[j];
      Rat t = (b.x != a.x) ? (p.x - a.x) / (b.x - a.x) : (p.y - a.y) / (b.y - a.y);
      return std::vector<std::pair<std::size_t, Rat>>{{i, 1 - t}, {j, t}};
    }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const P2 &a = pts[i], &b = pts[j], &c = pts[k];
        Rat det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        if (det == 0) continue;
        Rat l1 = ((p.x - a.x) * (c.y - a.y) - (p.y - a.y) * (c.x - a.x)) / det;
        Rat l2 = ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)) / det;
        Rat l0 = 1 - l1 - l2;
        if (l0 >= 0 && l1 >= 0 && l2 >= 0)
          return std::vector<std::pair<std::size_t, Rat>>{{i, l0}, {j, l1}, {k, l2}};
      }
  return std::nullopt;
}

Separation separate_point_sets(const std::vector<AffinePoint>& P,
                               const std::vector<AffinePoint>& Q) {
  if (P.empty() || Q.empty()) throw std::invalid_argument("separate_point_sets needs nonempty sets");
  std::vector<P2> ps, qs;
  ps.reserve(P.size());
  qs.reserve(Q.size());
  for (const auto& p : P) ps.push_back(project(p));
  for (const auto& q : Q) qs.push_back(project(q));
  std::vector<P2> hp = convex_hull(std::move(ps));
  std::vector<P2> hq = convex_hull(std::move(qs));

  for (const P2& v : hp)
    if (point_in_hull(v, hq)) return {AffinePoint(unproject(v))};
  for (const P2& v : hq)
    if (point_in_hull(v, hp)) return {AffinePoint(unproject(v))};
  if (hp.size() >= 2 && hq.size() >= 2) {
    const std::size_t np = hp.size(), nq = hq.size();
    for (std::size_t i = 0; i < (np == 2 ? 1 : np); ++i)
      for (std::size_t j = 0; j < (nq == 2 ? 1 : nq); ++j) {
        auto hit = segment_intersection(hp[i], hp[(i + 1) % np], hq[j], hq[(j + 1) % nq]);
        if (hit) return {AffinePoint(unproject(*hit))};
      }
  }

  // Disjoint hulls: perpendicular bisector of the closest pair separates
  // strictly.
  P2 best_p = hp[0], best_q = hq[0];
  Rat best = sq_dist(best_p, best_q);
  auto consider = [&](const P2& a, const P2& b) {
    Rat d = sq_dist(a, b);
    if (d < best) {
      best = d;
      best_p = a;
      best_q = b;
    }
  };
  for (const P2& v : hp) {
    if (hq.size() == 1)
      consider(v, hq[0]);
    else
      for (std::size_t j = 0; j < hq.size(); ++j)
        consider(v, closest_on_segment(v, hq[j], hq[(j + 1) % hq.size()]));
  }
  for (const P2& v : hq) {
    if (hp.size() == 1)
      consider(hp[0], v);
    else
      for (std::size_t j = 0; j < hp.size(); ++j)
        consider(closest_on_segment(v, hp[j], hp[(j + 1) % hp.size()]), v);
  }

  // Bisector as a line in A: a x + b y = c lifted through the gram map.
  Rat a = 2 * (best_q.x - best_p.x);
  Rat b = 2 * (best_q.y - best_p.y);
  Rat c = best_q.x * best_q.x + best_q.y * best_q.y - best_p.x * best_p.x - best_p.y * best_p.y;
  VecQ m{a - c, b - c, -c};
  Int den = lcm(lcm(denominator(m.x), denominator(m.y)), denominator(m.z));
  VecZ mz{numerator(Rat(m.x * den)), numerator(Rat(m.y * den)), numerator(Rat(m.z * den))};
  return {make_line(ungram(mz))};
}

}  // namespace u3
