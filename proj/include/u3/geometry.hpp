#pragma once

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "u3/root.hpp"
#include "u3/vec.hpp"

namespace u3 {

// ---------------------------------------------------------------------------
// Points and lines in the affine plane A = {x+y+z = 1}.
// ---------------------------------------------------------------------------

/// Point of A, exact rational coordinates summing to 1.
struct AffinePoint {
  VecQ v;

  bool operator==(const AffinePoint&) const = default;
  bool operator<(const AffinePoint& o) const { return v < o.v; }
};

inline AffinePoint affine(VecQ v) {
  if (v.sum() != 1) throw std::invalid_argument("affine point coordinates must sum to 1");
  return {std::move(v)};
}

inline AffinePoint disk_center() { return {{Rat(1, 3), Rat(1, 3), Rat(1, 3)}}; }

/// Rescales a positive root into A by dividing by its height.
inline AffinePoint rescale(const VecZ& root) {
  Int h = root.sum();
  if (h <= 0) throw std::invalid_argument("rescale expects a positive root");
  return {{Rat(root.x, h), Rat(root.y, h), Rat(root.z, h)}};
}

/// Sign of Q at p: negative inside the disk, zero on the boundary circle,
/// positive outside.
inline int disk_position(const AffinePoint& p) { return sign(quad(p.v)); }

/// Coefficient vector of the form against v: gram(v) . x = <v, x>
/// with the Euclidean dot product on the left.
template <class T>
Vec3T<T> gram(const Vec3T<T>& v) {
  return {v.x - v.y - v.z, -v.x + v.y - v.z, -v.x - v.y + v.z};
}

/// Inverse of gram up to a scalar: if m = gram(n) then n is proportional
/// to ungram(m).
inline VecZ ungram(const VecZ& m) { return {m.y + m.z, m.x + m.z, m.x + m.y}; }

/// Line in A of the form {p : <normal, p> = 0}, stored as a primitive
/// integer normal whose first nonzero entry is positive.
struct AffLine {
  VecZ normal;

  bool operator==(const AffLine&) const = default;
  bool operator<(const AffLine& o) const { return normal < o.normal; }
};

inline VecZ canonical_normal(VecZ n) {
  if (is_zero(n)) throw std::invalid_argument("line normal must be nonzero");
  if (n.x == n.y && n.y == n.z)
    throw std::invalid_argument("normal proportional to (1,1,1): the line has no affine trace");
  n = primitive(n);
  const Int& lead = n.x != 0 ? n.x : (n.y != 0 ? n.y : n.z);
  if (lead < 0) n = -n;
  return n;
}

inline AffLine make_line(VecZ normal) { return {canonical_normal(std::move(normal))}; }

inline AffLine make_line(const VecQ& normal) {
  Int d = lcm(lcm(denominator(normal.x), denominator(normal.y)), denominator(normal.z));
  return make_line(VecZ{Int(numerator(normal.x) * (d / denominator(normal.x))),
                        Int(numerator(normal.y) * (d / denominator(normal.y))),
                        Int(numerator(normal.z) * (d / denominator(normal.z)))});
}

inline Rat line_eval(const AffLine& L, const AffinePoint& p) { return inner(p.v, L.normal); }
inline Int line_eval(const AffLine& L, const VecZ& v) { return inner(v, L.normal); }

/// Sign of <normal, O>; the "far" side of a line is the opposite sign.
inline int center_sign(const AffLine& L) { return -sign(L.normal.sum()); }

/// The polar line of p (tangent line at p when p is on the circle).
/// p = O is rejected: its polar is the plane at infinity.
inline AffLine dual_line(const AffinePoint& p) {
  if (p == disk_center()) throw std::invalid_argument("polar undefined: H_O is the plane at infinity");
  return make_line(p.v);
}

/// Pole of a line, when it exists in A (normals with zero coordinate sum
/// have their pole at infinity).
inline std::optional<AffinePoint> pole(const AffLine& L) {
  Int s = L.normal.sum();
  if (s == 0) return std::nullopt;
  return AffinePoint{{Rat(L.normal.x, s), Rat(L.normal.y, s), Rat(L.normal.z, s)}};
}

/// Line through two distinct points of A: the normal is form-orthogonal
/// to both, i.e. the Euclidean kernel vector of {gram(p), gram(q)}.
inline AffLine line_through(const AffinePoint& p, const AffinePoint& q) {
  if (p == q) throw std::invalid_argument("line_through needs two distinct points");
  VecQ m1 = gram(p.v), m2 = gram(q.v);
  Int d = lcm(lcm(lcm(denominator(m1.x), denominator(m1.y)), denominator(m1.z)),
              lcm(lcm(denominator(m2.x), denominator(m2.y)), denominator(m2.z)));
  auto scale = [&](const VecQ& m) {
    return VecZ{numerator(Rat(m.x * d)), numerator(Rat(m.y * d)), numerator(Rat(m.z * d))};
  };
  return make_line(cross(scale(m1), scale(m2)));
}

/// Affine trace of the linear span of two independent vectors.
inline AffLine line_spanned_by(const VecZ& u, const VecZ& v) {
  VecZ n = cross(gram(u), gram(v));
  if (is_zero(n)) throw std::invalid_argument("line_spanned_by needs independent vectors");
  return make_line(n);
}

enum class DiskClass { secant, tangent, exterior };

/// Classifies a line against the disk by the discriminant of Q restricted
/// to the corresponding 2-dimensional subspace.
inline DiskClass classify_line(const AffLine& L) {
  VecZ m = gram(L.normal);
  VecZ u = cross(m, VecZ{1, 0, 0});
  if (is_zero(u)) u = cross(m, VecZ{0, 1, 0});
  VecZ v = cross(m, u);
  Int d = inner(u, v) * inner(u, v) - quad(u) * quad(v);
  if (d > 0) return DiskClass::secant;
  if (d == 0) return DiskClass::tangent;
  return DiskClass::exterior;
}

// ---------------------------------------------------------------------------
// Rational parametrization of a line and its circle intersections.
// ---------------------------------------------------------------------------

/// p(t) = base + t * dir, with dir integral of coordinate sum 0.
/// Q(p(t)) = a t^2 + b t + c with a > 0.
struct LineParam {
  AffinePoint base;
  VecZ dir;
  Rat a, b, c;

  Rat discriminant() const { return b * b - 4 * a * c; }

  /// Parameter of a point known to lie on the line.
  Rat param_of(const AffinePoint& p) const {
    VecQ diff = p.v - base.v;
    if (dir.x != 0) return diff.x / Rat(dir.x);
    if (dir.y != 0) return diff.y / Rat(dir.y);
    return diff.z / Rat(dir.z);
  }

  AffinePoint point_at(const Rat& t) const {
    return {{base.v.x + t * Rat(dir.x), base.v.y + t * Rat(dir.y), base.v.z + t * Rat(dir.z)}};
  }
};

inline LineParam parametrize(const AffLine& L) {
  VecZ m = gram(L.normal);
  VecZ dir = cross(m, VecZ{1, 1, 1});
  Int mm = dot(m, m), m1 = m.sum();
  Int det = 3 * mm - m1 * m1;  // nonzero: m is never proportional to (1,1,1)
  Rat a(-m1, det), b(mm, det);
  AffinePoint base{{a * Rat(m.x) + b, a * Rat(m.y) + b, a * Rat(m.z) + b}};
  LineParam lp{base, dir, Rat(quad(dir)), 2 * inner(base.v, dir), quad(base.v)};
  return lp;
}

/// Point of the boundary circle, represented implicitly as a root of
/// Q(p(t)) = 0 along a line; `upper` picks t = (-b + sqrt(D)) / 2a.
/// Irrational coordinates are never materialized.
struct BoundaryPoint {
  AffLine line;
  bool upper;
};

/// Exact sign of g + h*sqrt(disc) for rationals with disc >= 0.
inline int sign_with_sqrt(const Rat& g, const Rat& h, const Rat& disc) {
  if (disc < 0) throw std::invalid_argument("negative discriminant");
  if (h == 0 || disc == 0) return sign(g);
  if (h > 0) {
    if (g >= 0) return 1;
    return sign(h * h * disc - g * g);
  }
  return -sign_with_sqrt(-g, -h, disc);
}

/// Sign of <normal(A), p> at an implicit boundary point p.
inline int side_of_line(const BoundaryPoint& p, const AffLine& A) {
  LineParam lp = parametrize(p.line);
  Rat disc = lp.discriminant();
  if (disc < 0) throw std::invalid_argument("line does not meet the boundary circle");
  Rat e = inner(lp.base.v, A.normal);
  Rat f = Rat(inner(lp.dir, A.normal));
  // e + f t at t = (-b +- sqrt(disc)) / (2a), numerator sign with a > 0.
  Rat g = 2 * lp.a * e - f * lp.b;
  Rat h = p.upper ? f : -f;
  return sign_with_sqrt(g, h, disc);
}

/// Tangency point of a tangent line (always rational).
inline AffinePoint tangency_point(const AffLine& L) {
  LineParam lp = parametrize(L);
  if (lp.discriminant() != 0) throw std::invalid_argument("line is not tangent to the circle");
  return lp.point_at(-lp.b / (2 * lp.a));
}

// ---------------------------------------------------------------------------
// Exact 2D geometry in the (x, y) chart of A.
// ---------------------------------------------------------------------------

struct P2 {
  Rat x, y;
  bool operator==(const P2&) const = default;
  bool operator<(const P2& o) const { return x != o.x ? x < o.x : y < o.y; }
};

inline P2 project(const AffinePoint& p) { return {p.v.x, p.v.y}; }
inline AffinePoint unproject(const P2& p) { return {{p.x, p.y, 1 - p.x - p.y}}; }

inline int orient(const P2& a, const P2& b, const P2& c) {
  return sign((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

/// Convex hull, counterclockwise, collinear interior points dropped.
std::vector<P2> convex_hull(std::vector<P2> pts);

/// Closed membership test against a hull (point / segment / polygon).
bool point_in_hull(const P2& p, const std::vector<P2>& hull);

/// Some common point of two closed segments, if they meet.
std::optional<P2> segment_intersection(const P2& a, const P2& b, const P2& c, const P2& d);

/// Barycentric certificate: p as a convex combination of at most three of
/// the given points. Returns indices and weights, or nullopt if p is
/// outside the hull.
std::optional<std::vector<std::pair<std::size_t, Rat>>> convex_coefficients(
    const P2& p, const std::vector<P2>& pts);

// ---------------------------------------------------------------------------
// Exact separation of finite point sets.
// ---------------------------------------------------------------------------

/// Either a strictly separating line or a point lying in both hulls.
struct Separation {
  std::variant<AffLine, AffinePoint> result;

  bool separated() const { return result.index() == 0; }
  const AffLine& line() const { return std::get<AffLine>(result); }
  const AffinePoint& witness() const { return std::get<AffinePoint>(result); }
};

/// Exact decision: disjoint convex hulls yield a strictly separating
/// line, intersecting hulls yield a common rational point.
Separation separate_point_sets(const std::vector<AffinePoint>& P,
                               const std::vector<AffinePoint>& Q);

}  // namespace u3
