#include "u3/biclosed.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace u3 {

RootSet RootSet::of(std::vector<VecZ> v, std::optional<Int> height_bound,
                    std::optional<int> depth_bound) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return {std::move(v), std::move(height_bound), depth_bound};
}

bool RootSet::contains(const VecZ& v) const {
  return std::binary_search(roots.begin(), roots.end(), v);
}

std::vector<VecZ> complement_in(const RootSet& S, const RootTable& table, const Int& N) {
  std::vector<VecZ> out;
  for (const Root& r : table)
    if (r.height <= N && !S.contains(r.vec)) out.push_back(r.vec);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool closed_within(const std::vector<VecZ>& roots, PlaneIndex& planes, const Int& N) {
  auto member = [&](const VecZ& v) { return std::binary_search(roots.begin(), roots.end(), v); };
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      for (const VecZ& g : rank2_cone_roots(planes, roots[i], roots[j], N))
        if (!member(g)) return false;
  return true;
}

}  // namespace

bool is_closed(const RootSet& S, PlaneIndex& planes, const Int& N) {
  return closed_within(S.roots, planes, N);
}

bool is_biclosed(const RootSet& S, PlaneIndex& planes, const Int& N) {
  if (!closed_within(S.roots, planes, N)) return false;
  return closed_within(complement_in(S, planes.table(), N), planes, N);
}

std::vector<Face> faces_of_truncation(const RootTable& table) {
  std::set<Face> seen;
  for (const Root& r : table) {
    auto [f1, f2] = faces_of_edge(r);
    seen.insert(f1);
    seen.insert(f2);
  }
  return {seen.begin(), seen.end()};
}

bool is_parabolic_biclosed(const Bipartition& bp, int window) {
  // Order key along the boundary line: position j maps to 1/j, so the
  // sequence -1, -2, ..., 2, 1 is ascending. Blue must be consistent with
  // an initial or final segment of that order among observed positions.
  for (const Face& f : faces_of_truncation(*bp.table)) {
    std::optional<Rat> max_red, min_red, max_blue, min_blue;
    for (const WindowEntry& e : boundary_window(f, window)) {
      auto c = bp.color(e.root);
      if (!c) continue;
      Rat key(1, e.pos);
      auto& mx = (*c == Color::red) ? max_red : max_blue;
      auto& mn = (*c == Color::red) ? min_red : min_blue;
      if (!mx || key > *mx) mx = key;
      if (!mn || key < *mn) mn = key;
    }
    if (!max_red || !max_blue) continue;  // monochromatic window
    bool blue_final = *max_red < *min_blue;
    bool blue_initial = *max_blue < *min_red;
    if (!blue_final && !blue_initial) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Closures.
// ---------------------------------------------------------------------------

namespace {

/// Interval-closure fixpoint over the precomputed planes. Worklist of
/// planes whose member interval grew; closing a plane adds every member
/// of height <= M between the present extremes.
std::vector<VecZ> closure_fixpoint(std::span<const VecZ> X, const ConePlanes& planes, const Int& M,
                                   bool tangent_only) {
  const RootTable& table = planes.table();
  const std::size_t np = planes.planes().size();
  std::vector<char> present(table.size(), 0);
  // Interval state per plane: positions of the extreme present members.
  std::vector<int> lo(np, -1), hi(np, -1);
  std::vector<char> dirty(np, 0);
  std::vector<int> work;
  std::vector<int> added;

  auto add_root = [&](int idx) {
    if (present[idx]) return;
    present[idx] = 1;
    added.push_back(idx);
    for (int p : planes.planes_of(idx)) {
      if (tangent_only && !planes.planes()[p].tangent) continue;
      int pos = planes.position_in(p, idx);
      bool grew = false;
      if (lo[p] < 0) {
        lo[p] = hi[p] = pos;
      } else {
        if (pos < lo[p]) {
          lo[p] = pos;
          grew = true;
        }
        if (pos > hi[p]) {
          hi[p] = pos;
          grew = true;
        }
        if (grew && lo[p] < hi[p] && !dirty[p]) {
          dirty[p] = 1;
          work.push_back(p);
        }
      }
    }
  };

  for (const VecZ& v : X) {
    if (v.sum() > M) throw std::invalid_argument("closure input exceeds the work bound");
    int idx = table.find(v);
    if (idx < 0) throw std::invalid_argument("closure input missing from the work table");
    add_root(idx);
  }
  while (!work.empty()) {
    int p = work.back();
    work.pop_back();
    dirty[p] = 0;
    const auto& m = planes.planes()[p].members;
    for (int k = lo[p] + 1; k < hi[p]; ++k) {
      int idx = m[k];
      if (!present[idx] && table[idx].height <= M) add_root(idx);
    }
  }

  std::vector<VecZ> out;
  out.reserve(added.size());
  for (int idx : added) out.push_back(table[idx].vec);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RootSet two_closure(std::span<const VecZ> X, const ConePlanes& planes, const Int& M) {
  return RootSet{closure_fixpoint(X, planes, M, false), M, std::nullopt};
}

RootSet parabolic_two_closure(std::span<const VecZ> X, const ConePlanes& planes, const Int& M) {
  return RootSet{closure_fixpoint(X, planes, M, true), M, std::nullopt};
}

RootSet convex_closure(std::span<const VecZ> X, const ConePlanes& planes, const Int& N) {
  if (X.empty()) return RootSet{{}, N, std::nullopt};
  const RootTable& table = planes.table();
  std::vector<P2> pts;
  pts.reserve(X.size());
  for (const VecZ& v : X) pts.push_back(project(rescale(v)));
  std::vector<P2> hull = convex_hull(pts);

  // Interval state of X per plane, for the pair certificates.
  const std::size_t np = planes.planes().size();
  std::vector<int> lo(np, -1), hi(np, -1);
  std::vector<char> in_x(table.size(), 0);
  for (const VecZ& v : X) {
    int idx = table.find(v);
    if (idx < 0) throw std::invalid_argument("convex_closure input missing from the table");
    in_x[idx] = 1;
    for (int p : planes.planes_of(idx)) {
      int pos = planes.position_in(p, idx);
      if (lo[p] < 0) {
        lo[p] = hi[p] = pos;
      } else {
        lo[p] = std::min(lo[p], pos);
        hi[p] = std::max(hi[p], pos);
      }
    }
  }

  auto pair_certificate = [&](int idx) {
    for (int p : planes.planes_of(idx)) {
      if (lo[p] < 0 || lo[p] >= hi[p]) continue;
      int pos = planes.position_in(p, idx);
      if (lo[p] <= pos && pos <= hi[p]) return true;
    }
    return false;
  };

  auto det3 = [](const VecZ& u, const VecZ& v, const VecZ& w) { return dot(u, cross(v, w)); };
  auto anchored_triple = [&](const VecZ& g) {
    const VecZ& a = X[0];
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t j = i + 1; j < X.size(); ++j) {
        Int d = det3(a, X[i], X[j]);
        if (d == 0) continue;
        Rat c1(det3(g, X[i], X[j]), d), c2(det3(a, g, X[j]), d), c3(det3(a, X[i], g), d);
        if (c1 >= 0 && c2 >= 0 && c3 >= 0) return true;
      }
    return false;
  };

  std::vector<VecZ> out;
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const Root& r = table[idx];
    if (r.height > N) continue;
    if (!point_in_hull(project(rescale(r.vec)), hull)) continue;
    if (!in_x[idx] && !pair_certificate(static_cast<int>(idx)) && !anchored_triple(r.vec))
      throw std::logic_error("hull accepts a root the Caratheodory scan rejects");
    out.push_back(r.vec);
  }
  std::sort(out.begin(), out.end());
  return RootSet{std::move(out), N, std::nullopt};
}

JoinResult join(const std::vector<RootSet>& sets, const ConePlanes& planes_m,
                const ConePlanes& planes_2m, const Int& N, const Int& M, bool verify) {
  std::vector<VecZ> uni;
  for (const RootSet& s : sets) uni.insert(uni.end(), s.roots.begin(), s.roots.end());
  std::sort(uni.begin(), uni.end());
  uni.erase(std::unique(uni.begin(), uni.end()), uni.end());

  auto restrict_to = [&](const RootSet& s, const Int& bound) {
    std::vector<VecZ> v;
    for (const VecZ& r : s.roots)
      if (r.sum() <= bound) v.push_back(r);
    return v;
  };

  RootSet at_m = two_closure(uni, planes_m, M);
  RootSet at_2m = two_closure(uni, planes_2m, 2 * M);
  JoinResult jr{RootSet{restrict_to(at_m, N), N, std::nullopt},
                restrict_to(at_m, N) == restrict_to(at_2m, N), std::nullopt};
  if (verify) {
    RootSet conv = convex_closure(uni, planes_m, N);
    jr.convex_agrees = (conv.roots == jr.set.roots);
  }
  return jr;
}

// ---------------------------------------------------------------------------
// Descriptors.
// ---------------------------------------------------------------------------

bool BiclosedDescriptor::operator==(const BiclosedDescriptor& o) const {
  if (kind != o.kind) return false;
  if (kind != Kind::infinite) return word == o.word;
  if (!(line == o.line) || side != o.side) return false;
  if (boundary.has_value() != o.boundary.has_value()) return false;
  return !boundary || *boundary == *o.boundary;
}

int half_space_sign(const AffLine& L, BiclosedDescriptor::HalfSide s) {
  int cs = center_sign(L);
  if (cs == 0) return s == BiclosedDescriptor::HalfSide::far ? 1 : -1;
  return s == BiclosedDescriptor::HalfSide::far ? -cs : cs;
}

DescriptorOracle::DescriptorOracle(BiclosedDescriptor d, std::optional<LineSystem> boundary_roots)
    : desc_(std::move(d)), line_roots_(std::move(boundary_roots)) {
  if (desc_.kind == BiclosedDescriptor::Kind::infinite)
    red_sign_ = half_space_sign(desc_.line, desc_.side);
}

bool DescriptorOracle::in_boundary_segment(const VecZ& root) const {
  if (!desc_.boundary) return false;
  if (!line_roots_) throw std::logic_error("descriptor has a boundary but no line system was resolved");
  const Rank2Biclosed b = desc_.boundary->canonical();
  const auto& ordered = line_roots_->ordered;
  std::size_t n = ordered.size();
  std::size_t pos = n;
  for (std::size_t i = 0; i < n; ++i)
    if (ordered[i].second == root) {
      pos = i;
      break;
    }
  bool among_extremes;
  if (pos == n) {
    // On the line but beyond the enumerated system; extremes have minimal
    // height, so such a root is never among them.
    among_extremes = false;
  } else if (b.side == Rank2Biclosed::Side::left) {
    among_extremes = pos < static_cast<std::size_t>(b.k);
  } else {
    among_extremes = pos + static_cast<std::size_t>(b.k) >= n;
  }
  return (b.mode == Rank2Biclosed::Mode::finite) == among_extremes;
}

Color DescriptorOracle::color(const VecZ& root) const {
  switch (desc_.kind) {
    case BiclosedDescriptor::Kind::finite:
      return is_inversion(desc_.word, root) ? Color::red : Color::blue;
    case BiclosedDescriptor::Kind::cofinite:
      return is_inversion(desc_.word, root) ? Color::blue : Color::red;
    case BiclosedDescriptor::Kind::infinite: {
      int s = sign(inner(root, desc_.line.normal));
      if (s == red_sign_) return Color::red;
      if (s != 0) return Color::blue;
      if (!desc_.boundary) throw std::logic_error("root on a line declared to carry no roots");
      return in_boundary_segment(root) ? Color::red : Color::blue;
    }
  }
  throw std::logic_error("bad descriptor kind");
}

DescriptorOracle make_oracle(const BiclosedDescriptor& d, const RootTable& boundary_table,
                             int face_window) {
  if (d.kind != BiclosedDescriptor::Kind::infinite) return DescriptorOracle(d, std::nullopt);
  DiskClass cls = classify_line(d.line);
  if (cls == DiskClass::exterior)
    throw std::invalid_argument("invalid descriptor: line exterior to the disk");
  std::optional<LineSystem> sys;
  if (cls == DiskClass::tangent) {
    Face f = find_face_at(tangency_point(d.line));
    sys = LineSystem::on_face_line(f, face_window);
  } else {
    sys = LineSystem::on_line(d.line, boundary_table);
  }
  if (sys->empty()) sys.reset();
  return DescriptorOracle(d, std::move(sys));
}

void validate(const BiclosedDescriptor& d, const RootTable& boundary_table, int face_window) {
  if (d.kind != BiclosedDescriptor::Kind::infinite) return;
  DiskClass cls = classify_line(d.line);
  if (cls == DiskClass::exterior)
    throw std::invalid_argument("invalid descriptor: line exterior to the disk");
  DescriptorOracle oracle = make_oracle(d, boundary_table, face_window);
  bool has_roots = oracle.boundary_system().has_value();
  if (has_roots != d.boundary.has_value())
    throw std::invalid_argument(d.boundary
                                    ? "invalid descriptor: boundary given but the line carries no roots"
                                    : "invalid descriptor: line carries roots but no boundary given");
  if (!d.boundary) return;
  if (d.boundary->k < 0) throw std::invalid_argument("invalid descriptor: negative boundary size");
  if (cls == DiskClass::tangent) {
    bool far = d.side == BiclosedDescriptor::HalfSide::far;
    bool cof = d.boundary->mode == Rank2Biclosed::Mode::cofinite;
    if (far && !cof)
      throw std::invalid_argument("invalid descriptor: tangent far side needs a cofinite boundary");
    if (!far && cof)
      throw std::invalid_argument("invalid descriptor: tangent near side needs a finite boundary");
  } else if (d.boundary->k > 0) {
    // Secant boundary: the k extremes must be visible on their side of
    // the chord within the boundary table.
    const LineSystem& sys = *oracle.boundary_system();
    LineParam lp = parametrize(sys.line);
    auto left_of_chord = [&](const Rat& t) {
      return lp.a * t * t + lp.b * t + lp.c > 0 && 2 * lp.a * t + lp.b < 0;
    };
    std::size_t lefts = 0;
    for (const auto& [t, v] : sys.ordered)
      if (left_of_chord(t)) ++lefts;
    std::size_t need = static_cast<std::size_t>(d.boundary->k);
    std::size_t have = d.boundary->side == Rank2Biclosed::Side::left ? lefts : sys.size() - lefts;
    if (have < need)
      throw std::invalid_argument("invalid descriptor: boundary truncation too small for k extremes");
  }
}

RootSet realize(const BiclosedDescriptor& d, const RootTable& table, int face_window) {
  DescriptorOracle oracle = make_oracle(d, table, face_window);
  std::vector<VecZ> reds;
  for (const Root& r : table)
    if (oracle.color(r.vec) == Color::red) reds.push_back(r.vec);
  std::sort(reds.begin(), reds.end());
  return RootSet{std::move(reds), table.height_bound(), table.depth_bound()};
}

std::vector<BiclosedDescriptor> covers(const BiclosedDescriptor& d) {
  using Kind = BiclosedDescriptor::Kind;
  std::vector<BiclosedDescriptor> out;
  switch (d.kind) {
    case Kind::finite:
      for (Generator g = 1; g <= 3; ++g)
        if (d.word.empty() || d.word.last() != g)
          out.push_back(BiclosedDescriptor::finite(d.word.times(g)));
      break;
    case Kind::cofinite:
      if (!d.word.empty()) out.push_back(BiclosedDescriptor::cofinite(d.word.parent()));
      break;
    case Kind::infinite: {
      if (!d.boundary) break;
      Rank2Biclosed b = d.boundary->canonical();
      auto with_boundary = [&](Rank2Biclosed nb) {
        return BiclosedDescriptor::infinite(d.line, d.side, nb.canonical());
      };
      if (b.mode == Rank2Biclosed::Mode::finite) {
        if (b.k == 0) {
          out.push_back(with_boundary({Rank2Biclosed::Side::left, b.mode, 1}));
          out.push_back(with_boundary({Rank2Biclosed::Side::right, b.mode, 1}));
        } else {
          out.push_back(with_boundary({b.side, b.mode, b.k + 1}));
        }
      } else if (b.k >= 1) {
        out.push_back(with_boundary({b.side, b.mode, b.k - 1}));
      }
      break;
    }
  }
  return out;
}

bool is_complete_join_irreducible(const BiclosedDescriptor& d) {
  using Kind = BiclosedDescriptor::Kind;
  if (d.kind == Kind::finite) return !d.word.empty();
  if (d.kind == Kind::cofinite) return false;
  return d.boundary && d.boundary->mode == Rank2Biclosed::Mode::cofinite && d.boundary->k >= 1;
}

WeakSepLines weak_sep_lines(const BiclosedDescriptor& d) {
  using Kind = BiclosedDescriptor::Kind;
  if (d.kind == Kind::infinite) return {false, {d.line}};
  if (d.word.empty()) return {true, {}};
  const ReducedWord& w = d.word;
  VecZ lower = act(w.parent(), simple_root(w.last()));
  std::vector<VecZ> uppers;
  for (Generator g = 1; g <= 3; ++g)
    if (g != w.last()) uppers.push_back(act(w, simple_root(g)));
  return {false,
          {line_spanned_by(uppers[0], uppers[1]), line_spanned_by(uppers[0], lower),
           line_spanned_by(uppers[1], lower)}};
}

}  // namespace u3
