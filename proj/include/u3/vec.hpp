#pragma once

#include <array>
#include <compare>

#include "u3/numeric.hpp"
#include "u3/word.hpp"

namespace u3 {

/// Coordinate triple in the simple-root basis {a1, a2, a3}.
template <class T>
struct Vec3T {
  T x{}, y{}, z{};

  bool operator==(const Vec3T&) const = default;
  bool operator<(const Vec3T& o) const {  // lexicographic
    if (x != o.x) return x < o.x;
    if (y != o.y) return y < o.y;
    return z < o.z;
  }

  Vec3T operator+(const Vec3T& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3T operator-(const Vec3T& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3T operator-() const { return {-x, -y, -z}; }
  Vec3T operator*(const T& c) const { return {x * c, y * c, z * c}; }

  T sum() const { return x + y + z; }
};

using VecZ = Vec3T<Int>;
using VecQ = Vec3T<Rat>;

inline VecQ to_rat(const VecZ& v) { return {Rat(v.x), Rat(v.y), Rat(v.z)}; }

inline VecZ simple_root(Generator i) {
  switch (i) {
    case 1: return {1, 0, 0};
    case 2: return {0, 1, 0};
    default: return {0, 0, 1};
  }
}

/// Bilinear form with <ai,ai> = 1 and <ai,aj> = -1 for i != j.
template <class T>
T inner(const Vec3T<T>& u, const Vec3T<T>& v) {
  return u.x * v.x + u.y * v.y + u.z * v.z -
         (u.x * v.y + u.x * v.z + u.y * v.x + u.y * v.z + u.z * v.x + u.z * v.y);
}

template <class T>
T inner(const Vec3T<T>& u, const VecZ& v)
  requires(!std::is_same_v<T, Int>)
{
  return inner(u, Vec3T<T>{T(v.x), T(v.y), T(v.z)});
}

/// Quadratic form Q(x) = x^2 + y^2 + z^2 - 2(xy + xz + yz).
template <class T>
T quad(const Vec3T<T>& v) {
  return inner(v, v);
}

/// The form applied against (1,1,1); <v, (1,1,1)> = -(x+y+z).
template <class T>
T inner_with_ones(const Vec3T<T>& v) {
  return -(v.x + v.y + v.z);
}

/// Action of a single generator matrix on a column vector:
///   s1 = [-1 2 2; 0 1 0; 0 0 1], and cyclically for s2, s3.
template <class T>
Vec3T<T> act_gen(Generator g, const Vec3T<T>& v) {
  switch (g) {
    case 1: return {-v.x + 2 * v.y + 2 * v.z, v.y, v.z};
    case 2: return {v.x, 2 * v.x - v.y + 2 * v.z, v.z};
    default: return {v.x, v.y, 2 * v.x + 2 * v.y - v.z};
  }
}

/// w . v, applying the generator matrices right to left.
template <class T>
Vec3T<T> act(const ReducedWord& w, Vec3T<T> v) {
  const auto& letters = w.raw();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) v = act_gen(*it, v);
  return v;
}

/// Integer matrix as columns, for repeated application of one group
/// element to many vectors.
struct Mat3 {
  VecZ col[3];

  static Mat3 of_word(const ReducedWord& w) {
    return {{act(w, simple_root(1)), act(w, simple_root(2)), act(w, simple_root(3))}};
  }

  VecZ apply(const VecZ& v) const {
    return {col[0].x * v.x + col[1].x * v.y + col[2].x * v.z,
            col[0].y * v.x + col[1].y * v.y + col[2].y * v.z,
            col[0].z * v.x + col[1].z * v.y + col[2].z * v.z};
  }
};

/// Euclidean cross product (used for plane normals, not the form).
inline VecZ cross(const VecZ& a, const VecZ& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Int dot(const VecZ& a, const VecZ& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline bool is_zero(const VecZ& v) { return v.x == 0 && v.y == 0 && v.z == 0; }

inline bool all_nonneg(const VecZ& v) { return v.x >= 0 && v.y >= 0 && v.z >= 0; }
inline bool all_nonpos(const VecZ& v) { return v.x <= 0 && v.y <= 0 && v.z <= 0; }

/// Divides by the gcd of the entries; zero vector stays zero.
inline VecZ primitive(VecZ v) {
  Int g = gcd(gcd(v.x, v.y), v.z);
  if (g > 1) {
    v.x /= g;
    v.y /= g;
    v.z /= g;
  }
  return v;
}

}  // namespace u3
