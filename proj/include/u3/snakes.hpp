#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "u3/biclosed.hpp"
#include "u3/cayley.hpp"

namespace u3 {

/// Raised when a coloring shows more than two color changes on a face,
/// which certifies the input is not parabolic biclosed.
struct NotParabolicBiclosed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One snake segment: enters the face at its source vertex and leaves at
/// the second color-change vertex, or runs to the circle through the face
/// when there is no second change.
struct SnakeSegment {
  Face face;
  ReducedWord from;                // = src(face)
  std::optional<ReducedWord> to;   // nullopt: segment runs to the boundary
};

/// Closed arc of the boundary circle known to contain a snake's limit
/// point: the points weakly on the far side of `line`. For a boundary
/// segment the line is the face's tangent line (the arc is exactly the
/// ideal point); for a budget-limited snake it is the last crossed edge
/// line.
struct ArcEnclosure {
  AffLine line;
  int far_sign;
};

/// Whether an implicit circle point lies on the (closed) arc.
inline bool arc_contains(const ArcEnclosure& arc, const BoundaryPoint& p) {
  int s = side_of_line(p, arc.line);
  return s == arc.far_sign || s == 0;
}

/// Whether arc `inner` is contained in arc `outer` (endpoint test).
inline bool arc_within(const ArcEnclosure& inner, const ArcEnclosure& outer) {
  return arc_contains(outer, {inner.line, false}) && arc_contains(outer, {inner.line, true});
}

struct SnakePair {
  enum class Outcome {
    meet,       // both heads stop at a common vertex: R or B finite
    limits,     // both snakes run to the boundary through a final face
    exhausted,  // the depth budget or truncation cut the walk short
  };

  Outcome outcome;
  std::vector<SnakeSegment> s1, s2;
  std::optional<ReducedWord> meet_vertex;
  std::optional<ArcEnclosure> arc1, arc2;  // present unless outcome == meet
  int budget = 0;

  /// Vertex words visited by one snake, starting at the identity.
  static std::vector<ReducedWord> vertices(const std::vector<SnakeSegment>& segs);
};

/// Vertex positions (0 = source) of color changes on the face boundary
/// within window k. At most two; any nonempty result contains 0. More
/// than two changes throws NotParabolicBiclosed.
std::vector<int> color_changes(const Face& f, const ColorFn& color, int k);

/// Builds the pair of snakes for a coloring with both colors present at
/// depth 1. Follows each snake until the heads meet, a face runs to the
/// boundary, or the head passes depth_budget. scan_cap bounds the
/// per-face search for the second change (0 picks a default).
SnakePair build_snake_pair(const ColorFn& color, int depth_budget, int scan_cap = 0);

/// Structural checks on a built pair: segments chain, vertex words form
/// strictly increasing weak-order chains, the two snakes share only the
/// identity (and the meet vertex), and in the meet case the enclosed
/// edges are exactly the path from the identity to the meet vertex.
bool snake_manifold_check(const SnakePair& sp, const ColorFn& color);

/// Truncation route of H_snake: the two arc enclosures. Meet outcomes are
/// rejected (use weak_sep_lines on the finite side instead).
std::pair<ArcEnclosure, ArcEnclosure> h_snake(const SnakePair& sp);

/// Descriptor route: the exact separating line.
AffLine h_snake(const BiclosedDescriptor& d);

struct SeparationReport {
  bool ok = false;
  int red_side = 0;  // sign of <normal, beta> for red roots off the line
  std::vector<VecZ> on_line_red, on_line_blue;
};

/// Checks that the line weakly separates R from B: off-line red roots on
/// one strict side, off-line blue roots on the other. Signs are evaluated
/// on the integer root vectors (same sign as the rescaled points).
SeparationReport verify_weak_separation(const std::vector<VecZ>& R, const std::vector<VecZ>& B,
                                        const AffLine& L);

}  // namespace u3
