#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "u3/cayley.hpp"
#include "u3/geometry.hpp"
#include "u3/root.hpp"

namespace u3 {

enum class Color { red, blue };

inline Color other(Color c) { return c == Color::red ? Color::blue : Color::red; }

/// Total or partial coloring of the positive roots; nullopt means the
/// root is outside the truncation the coloring knows about.
using ColorFn = std::function<std::optional<Color>(const VecZ&)>;

// ---------------------------------------------------------------------------
// Root sets within a truncation.
// ---------------------------------------------------------------------------

/// Sorted set of roots plus the truncation it lives in. Every predicate
/// on root sets is "within truncation": a necessary condition for the
/// property of the corresponding infinite set, exact for sets that are
/// their own closures within the bound.
struct RootSet {
  std::vector<VecZ> roots;  // sorted, unique
  std::optional<Int> height_bound;
  std::optional<int> depth_bound;

  static RootSet of(std::vector<VecZ> v, std::optional<Int> height_bound = std::nullopt,
                    std::optional<int> depth_bound = std::nullopt);

  bool contains(const VecZ& v) const;
  std::size_t size() const { return roots.size(); }
  bool operator==(const RootSet& o) const { return roots == o.roots; }
};

/// Complement of S within the table roots of height <= N.
std::vector<VecZ> complement_in(const RootSet& S, const RootTable& table, const Int& N);

/// Closure under rank-2 cone intervals, pairwise, within height N.
bool is_closed(const RootSet& S, PlaneIndex& planes, const Int& N);

/// S and its truncation complement are both closed within height N.
bool is_biclosed(const RootSet& S, PlaneIndex& planes, const Int& N);

// ---------------------------------------------------------------------------
// Bipartitions of a depth truncation (edge colorings of the tree).
// ---------------------------------------------------------------------------

struct Bipartition {
  int depth;
  std::set<VecZ> red;
  const RootTable* table;  // depth-enumerated truncation

  std::optional<Color> color(const VecZ& v) const {
    if (!table->contains(v)) return std::nullopt;
    return red.count(v) ? Color::red : Color::blue;
  }
  ColorFn fn() const {
    return [this](const VecZ& v) { return color(v); };
  }
};

/// Every face with a boundary root in the truncation has its blue window
/// consistent with an initial or final segment of the boundary order.
bool is_parabolic_biclosed(const Bipartition& bp, int window);

/// All faces incident to an edge of the truncation.
std::vector<Face> faces_of_truncation(const RootTable& table);

// ---------------------------------------------------------------------------
// Closure operators and joins.
// ---------------------------------------------------------------------------

/// Least fixpoint of S -> S + rank-2 cone intervals of pairs of S,
/// within height M. The pairwise cone of two roots meets the positive
/// system in the order interval between them along their plane, so the
/// fixpoint runs incrementally over the precomputed planes.
RootSet two_closure(std::span<const VecZ> X, const ConePlanes& planes, const Int& M);

/// Same fixpoint, but only over pairs lying in a common face's rank-2
/// parabolic subsystem (the tangent planes).
RootSet parabolic_two_closure(std::span<const VecZ> X, const ConePlanes& planes, const Int& M);

/// {gamma : height <= N, gamma in cone(X)}. Membership is decided by the
/// Caratheodory scan: singles, pairs (interval test in the pair's
/// plane), then triples anchored at X[0]; an exact hull test on the
/// rescaled points screens out non-members first.
RootSet convex_closure(std::span<const VecZ> X, const ConePlanes& planes, const Int& N);

struct JoinResult {
  RootSet set;  // restricted to height <= N
  bool stable;  // re-running at 2M added nothing of height <= N
  std::optional<bool> convex_agrees;
};

/// Join of biclosed truncations: two_closure of the union at work bound
/// M, restricted to height <= N, with the doubling stability check.
/// With verify set, also computes the convex closure and compares.
JoinResult join(const std::vector<RootSet>& sets, const ConePlanes& planes_m,
                const ConePlanes& planes_2m, const Int& N, const Int& M, bool verify);

// ---------------------------------------------------------------------------
// Symbolic parametrization of biclosed sets.
// ---------------------------------------------------------------------------

/// Biclosed subset of a rank-2 positive system: k extreme roots from one
/// end of the boundary order (finite) or the complement (cofinite).
struct Rank2Biclosed {
  enum class Side { left, right };
  enum class Mode { finite, cofinite };
  Side side = Side::left;
  Mode mode = Mode::finite;
  int k = 0;

  /// The empty set is finite(left, 0); the full set is cofinite(left, 0).
  Rank2Biclosed canonical() const {
    Rank2Biclosed r = *this;
    if (r.k == 0) r.side = Side::left;
    return r;
  }
  bool operator==(const Rank2Biclosed& o) const {
    auto a = canonical(), b = o.canonical();
    return a.side == b.side && a.mode == b.mode && a.k == b.k;
  }
};

struct BiclosedDescriptor {
  enum class Kind { finite, cofinite, infinite };
  enum class HalfSide { far, near };  // far = open half-space away from O

  Kind kind = Kind::finite;
  ReducedWord word;  // finite / cofinite
  AffLine line{{1, 0, 0}};
  HalfSide side = HalfSide::far;
  std::optional<Rank2Biclosed> boundary;

  static BiclosedDescriptor finite(ReducedWord w) { return {Kind::finite, std::move(w), {{1, 0, 0}}, HalfSide::far, {}}; }
  static BiclosedDescriptor cofinite(ReducedWord w) { return {Kind::cofinite, std::move(w), {{1, 0, 0}}, HalfSide::far, {}}; }
  static BiclosedDescriptor infinite(AffLine L, HalfSide s, std::optional<Rank2Biclosed> b) {
    return {Kind::infinite, {}, std::move(L), s, std::move(b)};
  }

  bool operator==(const BiclosedDescriptor& o) const;
};

/// Sign of <normal, x> on the requested open half-space. When the line
/// passes through O, "far" is the positive side of the canonical normal.
int half_space_sign(const AffLine& L, BiclosedDescriptor::HalfSide s);

/// Total color oracle for a descriptor. Boundary content is resolved
/// through an explicit line system; on-line roots beyond it are colored
/// by the finite/cofinite rule (extremes have minimal height, so they are
/// always inside an adequate system).
class DescriptorOracle {
 public:
  DescriptorOracle(BiclosedDescriptor d, std::optional<LineSystem> boundary_roots);

  Color color(const VecZ& root) const;
  ColorFn fn() const {
    return [this](const VecZ& v) { return std::optional<Color>(color(v)); };
  }

  const BiclosedDescriptor& descriptor() const { return desc_; }
  const std::optional<LineSystem>& boundary_system() const { return line_roots_; }

 private:
  bool in_boundary_segment(const VecZ& root) const;

  BiclosedDescriptor desc_;
  std::optional<LineSystem> line_roots_;
  int red_sign_ = 0;
};

/// Builds the oracle, resolving tangent boundaries through the owning
/// face's window and secant boundaries through the given table.
DescriptorOracle make_oracle(const BiclosedDescriptor& d, const RootTable& boundary_table,
                             int face_window = 96);

/// Checks the descriptor invariants (line meets the closed disk, boundary
/// present iff the line carries roots, tangent mode constraints).
/// Throws std::invalid_argument with a reason when invalid.
void validate(const BiclosedDescriptor& d, const RootTable& boundary_table, int face_window = 96);

/// Realizes the descriptor within the table's truncation.
RootSet realize(const BiclosedDescriptor& d, const RootTable& table, int face_window = 96);

/// Upper covers in the extended weak order, per the three cover families.
std::vector<BiclosedDescriptor> covers(const BiclosedDescriptor& d);

/// Inv(w) for w != id, and infinite descriptors whose boundary is a
/// proper cofinite subset; nothing else.
bool is_complete_join_irreducible(const BiclosedDescriptor& d);

struct WeakSepLines {
  bool at_infinity = false;  // R empty or full: the separating plane is A_0
  std::vector<AffLine> lines;
};

/// The tangent weakly separating lines of a finite/cofinite set (three of
/// them, from the edges at v_w), or the unique line of an infinite one.
WeakSepLines weak_sep_lines(const BiclosedDescriptor& d);

}  // namespace u3
