#include "u3/snakes.hpp"

#include <algorithm>
#include <set>

namespace u3 {

namespace {

/// Walks one side of a face boundary, yielding roots at positions
/// 1, 2, ... (positive = true) or -1, -2, ... (positive = false).
struct SideWalker {
  ReducedWord word;
  int gen;
  const Face* face;

  SideWalker(const Face& f, bool positive)
      : word(f.src), gen(positive ? f.i : f.j), face(&f) {}

  VecZ next_root() {
    VecZ r = act(word, simple_root(gen));
    word = word.times(gen);
    gen = (gen == face->i) ? face->j : face->i;
    return r;
  }
};

struct SnakeEnd {
  enum class Kind { meet, boundary, exhausted, truncated } kind;
  ReducedWord vertex;  // meet vertex, or last head vertex reached
};

constexpr int kDefaultScanCap = 4096;

std::optional<Color> col(const ColorFn& color, const VecZ& v) { return color(v); }

/// Finds the second color change of a face whose source-change is given:
/// scans both sides outward. Returns the signed vertex position, or
/// nullopt when no change shows up before the cap / truncation edge.
std::optional<int> second_change(const Face& f, const ColorFn& color, int cap,
                                 Color pos_color, Color neg_color) {
  SideWalker pos(f, true), neg(f, false);
  pos.next_root();  // position 1 and -1 colors are the inputs
  neg.next_root();
  Color last_pos = pos_color, last_neg = neg_color;
  bool pos_open = true, neg_open = true;
  for (int m = 1; m < cap && (pos_open || neg_open); ++m) {
    if (pos_open) {
      auto c = col(color, pos.next_root());  // root at position m+1
      if (!c)
        pos_open = false;
      else if (*c != last_pos)
        return m;  // change at vertex u_m
    }
    if (neg_open) {
      auto c = col(color, neg.next_root());
      if (!c)
        neg_open = false;
      else if (*c != last_neg)
        return -m;
    }
  }
  return std::nullopt;
}

/// Extends one snake from its first face until it ends.
SnakeEnd extend_snake(Face f, const ColorFn& color, int depth_budget, int cap,
                      std::vector<SnakeSegment>& segs) {
  while (true) {
    ReducedWord src = f.src;
    VecZ b1 = boundary_root(f, 1), bm1 = boundary_root(f, -1);
    auto c1 = col(color, b1), cm1 = col(color, bm1);
    if (!c1 || !cm1) return {SnakeEnd::Kind::truncated, src};
    if (*c1 == *cm1) throw std::logic_error("snake entered a face with no change at its source");

    auto pos = second_change(f, color, cap, *c1, *cm1);
    if (!pos) {
      segs.push_back({f, src, std::nullopt});
      return {SnakeEnd::Kind::boundary, src};
    }
    ReducedWord tar = face_vertex(f, *pos);
    segs.push_back({f, src, tar});

    // Meet test at tar: lower edge vs the two upper edges.
    int m = *pos > 0 ? *pos : -*pos;
    VecZ in_face_upper = boundary_root(f, *pos > 0 ? m + 1 : -(m + 1));
    VecZ outer_upper = act(tar, simple_root(f.other_index()));
    auto c_in = col(color, in_face_upper), c_out = col(color, outer_upper);
    if (!c_in || !c_out) return {SnakeEnd::Kind::truncated, tar};
    if (*c_in == *c_out) return {SnakeEnd::Kind::meet, tar};

    if (static_cast<int>(tar.length()) >= depth_budget) return {SnakeEnd::Kind::exhausted, tar};
    // Continue into the face spanned by the two upper edges at tar.
    int last = tar.last();
    int a = last == 1 ? 2 : 1, b = last == 3 ? 2 : 3;
    f = Face{tar, a, b};
  }
}

/// Arc cut off by the line of the last crossed edge (the lower edge of
/// the head vertex), or by the final face's tangent line for boundary
/// segments.
ArcEnclosure arc_for(const SnakeEnd& end, const std::vector<SnakeSegment>& segs) {
  if (end.kind == SnakeEnd::Kind::boundary) {
    const Face& f = segs.back().face;
    AffLine L = line_through(rescale(boundary_root(f, 1)), rescale(boundary_root(f, -1)));
    int fs = -center_sign(L);
    return {L, fs != 0 ? fs : 1};
  }
  const ReducedWord& head = end.vertex;
  if (head.empty()) throw std::logic_error("no crossed edge: snake never left the identity");
  VecZ lower = act(head.parent(), simple_root(head.last()));
  AffLine L = make_line(lower);
  int fs = -center_sign(L);
  return {L, fs != 0 ? fs : 1};
}

}  // namespace

std::vector<ReducedWord> SnakePair::vertices(const std::vector<SnakeSegment>& segs) {
  std::vector<ReducedWord> out;
  out.push_back(segs.empty() ? ReducedWord{} : segs.front().from);
  for (const SnakeSegment& s : segs)
    if (s.to) out.push_back(*s.to);
  return out;
}

std::vector<int> color_changes(const Face& f, const ColorFn& color, int k) {
  auto window = boundary_window(f, k);
  std::vector<int> changes;
  // Adjacent window entries share a vertex; a color difference there is a
  // change at that vertex.
  for (std::size_t idx = 0; idx + 1 < window.size(); ++idx) {
    auto a = color(window[idx].root), b = color(window[idx + 1].root);
    if (!a || !b) continue;
    if (*a != *b) {
      int pa = window[idx].pos;
      changes.push_back(pa < 0 ? pa + 1 : pa);  // vertex between positions
    }
  }
  if (changes.size() > 2)
    throw NotParabolicBiclosed("more than two color changes on face boundary: input not parabolic biclosed");
  return changes;
}

SnakePair build_snake_pair(const ColorFn& color, int depth_budget, int scan_cap) {
  if (scan_cap <= 0) scan_cap = kDefaultScanCap;
  std::optional<Color> c[4];
  for (Generator g = 1; g <= 3; ++g) {
    c[g] = color(simple_root(g));
    if (!c[g]) throw std::invalid_argument("coloring does not cover the simple roots");
  }
  if (c[1] == c[2] && c[2] == c[3])
    throw std::invalid_argument("R or B empty at truncation: all depth-1 edges share a color");

  std::vector<Face> start;
  for (auto [a, b] : {std::pair{1, 2}, {1, 3}, {2, 3}})
    if (*c[a] != *c[b]) start.push_back(Face{{}, a, b});
  if (start.size() != 2) throw std::logic_error("expected exactly two starting faces");

  SnakePair sp{SnakePair::Outcome::exhausted, {}, {}, std::nullopt, {}, {}, depth_budget};
  SnakeEnd e1 = extend_snake(start[0], color, depth_budget, scan_cap, sp.s1);
  SnakeEnd e2 = extend_snake(start[1], color, depth_budget, scan_cap, sp.s2);

  if (e1.kind == SnakeEnd::Kind::meet && e2.kind == SnakeEnd::Kind::meet) {
    if (!(e1.vertex == e2.vertex))
      throw NotParabolicBiclosed("snake heads meet at different vertices: input not parabolic biclosed");
    sp.outcome = SnakePair::Outcome::meet;
    sp.meet_vertex = e1.vertex;
    return sp;
  }
  if (e1.kind == SnakeEnd::Kind::meet || e2.kind == SnakeEnd::Kind::meet) {
    // One head stopped at a vertex while the other ran out of budget or
    // truncation first; a boundary segment on the other side would
    // contradict parabolic biclosedness.
    const SnakeEnd& oth = e1.kind == SnakeEnd::Kind::meet ? e2 : e1;
    if (oth.kind == SnakeEnd::Kind::boundary)
      throw NotParabolicBiclosed("one head meets, the other runs to the boundary: input not parabolic biclosed");
  }
  sp.arc1 = arc_for(e1, sp.s1);
  sp.arc2 = arc_for(e2, sp.s2);
  sp.outcome = (e1.kind == SnakeEnd::Kind::boundary && e2.kind == SnakeEnd::Kind::boundary)
                   ? SnakePair::Outcome::limits
                   : SnakePair::Outcome::exhausted;
  return sp;
}

bool snake_manifold_check(const SnakePair& sp, const ColorFn& color) {
  auto chain_ok = [](const std::vector<SnakeSegment>& segs) {
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (!(segs[i].from == segs[i].face.src)) return false;
      if (i + 1 < segs.size()) {
        if (!segs[i].to || !(*segs[i].to == segs[i + 1].from)) return false;
      }
    }
    // Vertices strictly increase in length and form a weak-order chain
    // (each word extends the previous one).
    auto verts = SnakePair::vertices(segs);
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      if (verts[i + 1].length() <= verts[i].length()) return false;
      if (!(verts[i + 1].prefix(verts[i].length()) == verts[i])) return false;
    }
    return true;
  };
  if (!chain_ok(sp.s1) || !chain_ok(sp.s2)) return false;

  // The two snakes share only the identity vertex (plus the meet vertex).
  auto v1 = SnakePair::vertices(sp.s1), v2 = SnakePair::vertices(sp.s2);
  std::set<ReducedWord> set1(v1.begin(), v1.end());
  for (const ReducedWord& w : v2) {
    if (w.empty()) continue;
    if (sp.meet_vertex && w == *sp.meet_vertex) continue;
    if (set1.count(w)) return false;
  }

  if (sp.outcome == SnakePair::Outcome::meet) {
    // Enclosed edges are the path from the identity to the meet vertex:
    // every path edge has one color, and the remaining edges at path
    // vertices have the other.
    auto path = inversion_set(*sp.meet_vertex);
    auto c0 = color(path.front());
    if (!c0) return false;
    for (const VecZ& e : path) {
      auto ce = color(e);
      if (!ce || *ce != *c0) return false;
    }
    for (std::size_t k = 0; k <= sp.meet_vertex->length(); ++k) {
      ReducedWord v = sp.meet_vertex->prefix(k);
      for (Generator g = 1; g <= 3; ++g) {
        if (!v.empty() && v.last() == g) continue;
        if (k < sp.meet_vertex->length() && g == sp.meet_vertex->letter(k)) continue;
        auto ce = color(act(v, simple_root(g)));
        if (ce && *ce == *c0) return false;
      }
    }
  }
  return true;
}

std::pair<ArcEnclosure, ArcEnclosure> h_snake(const SnakePair& sp) {
  if (sp.outcome == SnakePair::Outcome::meet)
    throw std::invalid_argument("finite case: use weak_sep_lines on the inversion set");
  return {*sp.arc1, *sp.arc2};
}

AffLine h_snake(const BiclosedDescriptor& d) {
  if (d.kind != BiclosedDescriptor::Kind::infinite)
    throw std::invalid_argument("finite case: use weak_sep_lines on the inversion set");
  return d.line;
}

SeparationReport verify_weak_separation(const std::vector<VecZ>& R, const std::vector<VecZ>& B,
                                        const AffLine& L) {
  SeparationReport rep;
  int rs = 0, bs = 0;
  bool consistent = true;
  for (const VecZ& v : R) {
    int s = sign(inner(v, L.normal));
    if (s == 0)
      rep.on_line_red.push_back(v);
    else if (rs == 0)
      rs = s;
    else if (s != rs)
      consistent = false;
  }
  for (const VecZ& v : B) {
    int s = sign(inner(v, L.normal));
    if (s == 0)
      rep.on_line_blue.push_back(v);
    else if (bs == 0)
      bs = s;
    else if (s != bs)
      consistent = false;
  }
  rep.red_side = rs;
  rep.ok = consistent && (rs == 0 || bs == 0 || rs != bs);
  return rep;
}

}  // namespace u3
