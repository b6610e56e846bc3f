#pragma once

#include <map>
#include <utility>
#include <vector>

#include "u3/geometry.hpp"
#include "u3/root.hpp"

namespace u3 {

/// Face of the Cayley tree embedded in the disk, identified by its
/// rank-2 parabolic coset: the minimal coset representative (empty or
/// ending in a letter outside the pair) and the unordered pair i < j.
struct Face {
  ReducedWord src;
  int i = 1, j = 2;

  bool operator==(const Face&) const = default;
  auto operator<=>(const Face&) const = default;

  int other_index() const { return 6 - i - j; }
};

/// Face containing vertex w with pair {a, b}: strips trailing letters of
/// w lying in the pair to reach the minimal coset representative.
inline Face face_of(ReducedWord w, int a, int b) {
  if (a > b) std::swap(a, b);
  while (!w.empty() && (w.last() == a || w.last() == b)) w = w.parent();
  return {std::move(w), a, b};
}

/// The two faces bordered by the edge of a recorded root.
inline std::pair<Face, Face> faces_of_edge(const Root& r) {
  const int i = r.gen;
  const int a = i == 1 ? 2 : 1;
  const int b = i == 3 ? 2 : 3;
  return {face_of(r.below, i, a), face_of(r.below, i, b)};
}

/// Whether the root is relatively simple in the subsystem of the face,
/// i.e. its edge is incident to the source vertex.
inline bool relatively_simple_in(const Root& r, const Face& f) { return r.below == f.src; }

/// Vertex u_m of a face: positive positions alternate s_i, s_j starting
/// with s_i (the i < j convention), negative positions start with s_j.
inline ReducedWord face_vertex(const Face& f, int m) {
  ReducedWord w = f.src;
  int g = m > 0 ? f.i : f.j;
  for (int step = 0; step < (m > 0 ? m : -m); ++step) {
    w = w.times(g);
    g = (g == f.i) ? f.j : f.i;
  }
  return w;
}

/// One boundary edge of a face: position m != 0, the root, and the edge
/// endpoints ordered away from the source.
struct WindowEntry {
  int pos;
  VecZ root;
  ReducedWord from, to;
};

/// Boundary roots beta_{-k}, ..., beta_{-1}, beta_1, ..., beta_k of a
/// face, in position order.
inline std::vector<WindowEntry> boundary_window(const Face& f, int k) {
  if (k < 1) throw std::invalid_argument("window size must be >= 1");
  std::vector<WindowEntry> out;
  out.reserve(2 * static_cast<std::size_t>(k));
  ReducedWord w = f.src;
  int g = f.j;
  for (int m = 1; m <= k; ++m) {
    ReducedWord next = w.times(g);
    out.push_back({-m, act(w, simple_root(g)), w, next});
    w = std::move(next);
    g = (g == f.i) ? f.j : f.i;
  }
  std::reverse(out.begin(), out.end());
  w = f.src;
  g = f.i;
  for (int m = 1; m <= k; ++m) {
    ReducedWord next = w.times(g);
    out.push_back({m, act(w, simple_root(g)), w, next});
    w = std::move(next);
    g = (g == f.i) ? f.j : f.i;
  }
  return out;
}

/// The boundary root at one position (cheaper than a whole window).
inline VecZ boundary_root(const Face& f, int pos) {
  int m = pos > 0 ? pos : -pos;
  ReducedWord w = face_vertex(f, pos > 0 ? m - 1 : -(m - 1));
  int g;
  if (pos > 0)
    g = (m % 2 == 1) ? f.i : f.j;
  else
    g = (m % 2 == 1) ? f.j : f.i;
  return act(w, simple_root(g));
}

/// Primitive representative of a direction, sign fixed by the first
/// nonzero entry (no affine-trace restriction).
inline VecZ canonical_direction(VecZ v) {
  v = primitive(std::move(v));
  const Int& lead = v.x != 0 ? v.x : (v.y != 0 ? v.y : v.z);
  if (lead < 0) v = -v;
  return v;
}

/// Lazily groups the roots of a table by the linear plane they span with
/// others; keys are canonical Euclidean normals.
class PlaneIndex {
 public:
  explicit PlaneIndex(const RootTable& table) : table_(&table) {}

  const std::vector<int>& in_plane(const VecZ& key) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<int> hits;
    for (std::size_t r = 0; r < table_->size(); ++r)
      if (dot(key, (*table_)[r].vec) == 0) hits.push_back(static_cast<int>(r));
    return cache_.emplace(key, std::move(hits)).first->second;
  }

  static VecZ plane_key(const VecZ& a, const VecZ& b) { return canonical_direction(cross(a, b)); }

  const RootTable& table() const { return *table_; }

 private:
  const RootTable* table_;
  std::map<VecZ, std::vector<int>> cache_;
};

/// Exact nonnegative coordinates of c in the basis {a, b} of their plane,
/// if they exist.
std::optional<std::pair<Rat, Rat>> cone2_coefficients(const VecZ& a, const VecZ& b, const VecZ& c);

/// All positive roots of height <= bound in the nonnegative span of two
/// distinct roots, by brute force over the height-bounded enumeration.
std::vector<VecZ> rank2_cone_roots(PlaneIndex& planes, const VecZ& a, const VecZ& b,
                                   const Int& height_bound);

/// The roots lying on an affine line, ordered by position along it.
struct LineSystem {
  AffLine line;
  std::vector<std::pair<Rat, VecZ>> ordered;  // (parameter, root), ascending

  bool empty() const { return ordered.empty(); }
  std::size_t size() const { return ordered.size(); }

  /// Roots on the line within a table's truncation.
  static LineSystem on_line(const AffLine& L, const RootTable& table);

  /// The 2k boundary roots of a face, on the face's tangent line.
  static LineSystem on_face_line(const Face& f, int k);
};

/// Face whose ideal point is the given boundary-circle point, found by
/// walking the triangle containing it. Throws if no face is found within
/// max_steps (the point is not a Farey vertex of that depth).
Face find_face_at(const AffinePoint& q, int max_steps = 64);

/// Precomputed rank-2 structure of a table: every linear plane carrying
/// at least two roots, with members ordered along the plane's affine
/// line. The nonnegative span of two roots meets the positive system in
/// exactly the order interval between them, which makes closure
/// operators incremental.
///
/// Construction scans all pairs once; coordinates are bounded by the
/// table's height bound, so the plane keys are computed in machine
/// integers (checked).
class ConePlanes {
 public:
  struct Plane {
    std::vector<int> members;  // root indices ordered along the line
    bool tangent = false;      // parabolic subsystem (face boundary line)
  };

  explicit ConePlanes(const RootTable& table);
  explicit ConePlanes(RootTable&& table);  // owning
  ConePlanes(const ConePlanes&) = delete;
  ConePlanes& operator=(const ConePlanes&) = delete;

  const RootTable& table() const { return *table_; }
  const std::vector<Plane>& planes() const { return planes_; }
  const std::vector<int>& planes_of(int root) const { return incident_[root]; }

  /// Index of a root inside a plane's ordered member list.
  int position_in(int plane, int root) const;

 private:
  void build();

  std::optional<RootTable> owned_;
  const RootTable* table_;
  std::vector<Plane> planes_;
  std::vector<std::vector<int>> incident_;  // root -> plane ids
};

}  // namespace u3
