#include "u3/checks.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "u3/biclosed.hpp"
#include "u3/cayley.hpp"
#include "u3/geometry.hpp"
#include "u3/io.hpp"
#include "u3/render.hpp"
#include "u3/root.hpp"
#include "u3/snakes.hpp"

namespace u3 {

namespace {

using Clock = std::chrono::steady_clock;

// Shared truncations; the acceptance suite reuses them across checks.
const RootTable& depth_table(int d) {
  static std::map<int, std::unique_ptr<RootTable>> cache;
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<RootTable>(RootTable::by_depth(d));
  return *slot;
}

const RootTable& height_table(long long h) {
  static std::map<long long, std::unique_ptr<RootTable>> cache;
  auto& slot = cache[h];
  if (!slot) slot = std::make_unique<RootTable>(RootTable::by_height(Int(h)));
  return *slot;
}

const ConePlanes& cone_planes(long long h) {
  static std::map<long long, std::unique_ptr<ConePlanes>> cache;
  auto& slot = cache[h];
  if (!slot) slot = std::make_unique<ConePlanes>(height_table(h));
  return *slot;
}

std::vector<ReducedWord> words_up_to(int maxlen, bool include_id = false) {
  std::vector<ReducedWord> out;
  if (include_id) out.push_back({});
  std::vector<ReducedWord> layer;
  for (Generator g = 1; g <= 3; ++g) layer.push_back(ReducedWord{g});
  for (int len = 1; len <= maxlen; ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    std::vector<ReducedWord> next;
    for (const ReducedWord& w : layer)
      for (Generator g = 1; g <= 3; ++g)
        if (g != w.last()) next.push_back(w.times(g));
    layer = std::move(next);
  }
  return out;
}

// Deterministic helpers (uniform_int_distribution is not portable).
std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

ReducedWord random_word(std::mt19937_64& rng, int maxlen) {
  int len = static_cast<int>(pick(rng, static_cast<std::size_t>(maxlen) + 1));
  ReducedWord w;
  for (int i = 0; i < len; ++i) {
    Generator g;
    do {
      g = static_cast<Generator>(1 + pick(rng, 3));
    } while (!w.empty() && w.last() == g);
    w = w.times(g);
  }
  return w;
}

/// Random valid infinite descriptor; secant ones come from lines through
/// two rescaled roots, tangent ones from face boundary lines.
std::optional<BiclosedDescriptor> random_infinite(std::mt19937_64& rng, const RootTable& pool,
                                                  const RootTable& boundary_table,
                                                  bool require_secant) {
  using HalfSide = BiclosedDescriptor::HalfSide;
  for (int attempt = 0; attempt < 64; ++attempt) {
    HalfSide side = pick(rng, 2) ? HalfSide::far : HalfSide::near;
    int k = static_cast<int>(pick(rng, 4));
    bool want_tangent = !require_secant && pick(rng, 3) == 0;
    std::optional<BiclosedDescriptor> cand;
    if (want_tangent) {
      const Root& r = pool[pick(rng, pool.size())];
      auto [f1, f2] = faces_of_edge(r);
      const Face& f = pick(rng, 2) ? f2 : f1;
      AffLine L = line_through(rescale(boundary_root(f, 1)), rescale(boundary_root(f, -1)));
      auto mode = side == HalfSide::far ? Rank2Biclosed::Mode::cofinite : Rank2Biclosed::Mode::finite;
      auto bside = pick(rng, 2) ? Rank2Biclosed::Side::right : Rank2Biclosed::Side::left;
      cand = BiclosedDescriptor::infinite(L, side, Rank2Biclosed{bside, mode, k}.canonical());
    } else {
      const Root& a = pool[pick(rng, pool.size())];
      const Root& b = pool[pick(rng, pool.size())];
      if (a.vec == b.vec) continue;
      AffLine L = line_through(rescale(a.vec), rescale(b.vec));
      if (classify_line(L) != DiskClass::secant) continue;
      auto mode = pick(rng, 2) ? Rank2Biclosed::Mode::cofinite : Rank2Biclosed::Mode::finite;
      auto bside = pick(rng, 2) ? Rank2Biclosed::Side::right : Rank2Biclosed::Side::left;
      cand = BiclosedDescriptor::infinite(L, side, Rank2Biclosed{bside, mode, k}.canonical());
    }
    try {
      validate(*cand, boundary_table);
      return cand;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  return std::nullopt;
}

BiclosedDescriptor random_descriptor(std::mt19937_64& rng, const RootTable& pool,
                                     const RootTable& boundary_table) {
  while (true) {
    switch (pick(rng, 10)) {
      case 0:
      case 1:
      case 2:
        return BiclosedDescriptor::finite(random_word(rng, 6));
      case 3:
        return BiclosedDescriptor::cofinite(random_word(rng, 6));
      default:
        if (auto d = random_infinite(rng, pool, boundary_table, false)) return *d;
    }
  }
}

Bipartition realize_bipartition(const BiclosedDescriptor& d, const RootTable& table, int depth) {
  RootSet rs = realize(d, table);
  return Bipartition{depth, std::set<VecZ>(rs.roots.begin(), rs.roots.end()), &table};
}

/// Rescaled table roots, cached, for the separation checks.
const std::vector<AffinePoint>& rescaled_points(const RootTable& table) {
  static std::map<const RootTable*, std::vector<AffinePoint>> cache;
  auto& slot = cache[&table];
  if (slot.empty()) {
    slot.reserve(table.size());
    for (const Root& r : table) slot.push_back(rescale(r.vec));
  }
  return slot;
}

struct Failures {
  CheckResult& res;
  void operator()(const std::string& msg) {
    if (res.failures.size() < 10) res.failures.push_back(msg);
    res.pass = false;
  }
};

// ---------------------------------------------------------------------------
// Criterion 1: root engine and the height/norm identity.
// ---------------------------------------------------------------------------

void check_heightnorm(CheckResult& res, const CheckOptions& opts) {
  int depth = opts.depth.value_or(10);
  const RootTable& t = depth_table(depth);
  Failures fail{res};

  long long expected = 3 * ((1LL << depth) - 1);
  if (static_cast<long long>(t.size()) != expected)
    fail("root count mismatch: got " + std::to_string(t.size()) + " expected " +
         std::to_string(expected));

  std::vector<long long> per_depth(depth + 1, 0);
  for (const Root& r : t) {
    ++per_depth[r.depth];
    if (quad(r.vec) != 1) fail("Q != 1 at root " + to_json(r.vec).dump());
    if (!all_nonneg(r.vec) || is_zero(r.vec)) fail("coordinates not positive at " + to_json(r.vec).dump());
    if (r.height != r.vec.sum()) fail("cached height wrong at " + to_json(r.vec).dump());
    // height(beta)^2 * Q(rescale(beta)) == 1, exactly.
    if (Rat(r.height) * Rat(r.height) * quad(rescale(r.vec).v) != 1)
      fail("heightnorm identity fails at " + to_json(r.vec).dump());
    if (r.parent >= 0 && t[r.parent].height >= r.height)
      fail("height not monotone along tree at " + to_json(r.vec).dump());
    ++res.checked;
  }
  for (int d = 1; d <= depth; ++d)
    if (per_depth[d] != 3 * (1LL << (d - 1))) fail("layer count wrong at depth " + std::to_string(d));
  res.detail = std::to_string(t.size()) + " roots, depth <= " + std::to_string(depth);
}

// ---------------------------------------------------------------------------
// Criterion 2: inversion sets, matrix route vs tree-path route.
// ---------------------------------------------------------------------------

void check_inv_consistency(CheckResult& res, const CheckOptions& opts) {
  int maxlen = opts.depth.value_or(8);
  const RootTable& t = depth_table(maxlen);
  Failures fail{res};
  for (const ReducedWord& w : words_up_to(maxlen, true)) {
    auto path = inversion_set(w);
    if (path.size() != w.length()) fail("|Inv(w)| != length at " + w.str());
    std::set<VecZ> path_set(path.begin(), path.end());
    if (path_set.size() != path.size()) fail("repeated root on geodesic of " + w.str());
    Mat3 winv = Mat3::of_word(w.inverse());
    std::size_t matrix_count = 0;
    for (const Root& r : t) {
      bool neg = all_nonpos(winv.apply(r.vec));
      if (neg) ++matrix_count;
      if (neg != path_set.count(r.vec)) fail("matrix/path disagree at " + w.str());
    }
    if (matrix_count != w.length()) fail("matrix inversion count wrong at " + w.str());
    ++res.checked;
  }
  res.detail = std::to_string(res.checked) + " words of length <= " + std::to_string(maxlen);
}

// ---------------------------------------------------------------------------
// Criterion 3: each root in exactly two faces, relatively simple in one.
// ---------------------------------------------------------------------------

void check_rank2_parabolics(CheckResult& res, const CheckOptions& opts) {
  int depth = opts.depth.value_or(8);
  const RootTable& t = depth_table(depth);
  Failures fail{res};

  // Independent route: rebuild root->face incidence from face windows.
  std::map<VecZ, std::vector<std::pair<Face, int>>> incidence;
  for (const Face& f : faces_of_truncation(t)) {
    int k = depth - static_cast<int>(f.src.length());
    if (k < 1) continue;
    for (const WindowEntry& e : boundary_window(f, k))
      if (t.contains(e.root)) incidence[e.root].emplace_back(f, e.pos);
  }

  for (const Root& r : t) {
    auto it = incidence.find(r.vec);
    if (it == incidence.end()) {
      fail("no face incidence found for " + to_json(r.vec).dump());
      continue;
    }
    const auto& faces = it->second;
    if (faces.size() != 2) {
      fail("root in " + std::to_string(faces.size()) + " faces: " + to_json(r.vec).dump());
      continue;
    }
    int rel_simple = 0;
    for (const auto& [f, pos] : faces)
      if (pos == 1 || pos == -1) ++rel_simple;
    bool simple = r.depth == 1;
    if (simple && rel_simple != 2) fail("simple root not relatively simple twice");
    if (!simple && rel_simple != 1)
      fail("non-simple root relatively simple in " + std::to_string(rel_simple) + " faces: " +
           to_json(r.vec).dump());
    // Cross-check against the direct construction.
    auto [f1, f2] = faces_of_edge(r);
    std::set<Face> direct{f1, f2}, windowed{faces[0].first, faces[1].first};
    if (direct != windowed) fail("faces_of_edge disagrees with window incidence at " + to_json(r.vec).dump());
    ++res.checked;
  }
  res.detail = std::to_string(res.checked) + " roots, depth <= " + std::to_string(depth);
}

// ---------------------------------------------------------------------------
// Criterion 4: at most two color changes per face, source among them.
// ---------------------------------------------------------------------------

void check_change_at_source(CheckResult& res, const CheckOptions& opts) {
  int depth = opts.depth.value_or(8);
  int window = opts.window.value_or(6);
  int samples = opts.samples.value_or(50);
  std::mt19937_64 rng(opts.seed);
  const RootTable& t = depth_table(depth);
  const RootTable& pool = depth_table(5);
  Failures fail{res};

  auto faces = faces_of_truncation(t);
  for (int s = 0; s < samples; ++s) {
    BiclosedDescriptor d = random_descriptor(rng, pool, t);
    Bipartition bp = realize_bipartition(d, t, depth);
    if (!is_parabolic_biclosed(bp, window)) {
      fail("realized coloring not parabolic biclosed: sample " + std::to_string(s));
      continue;
    }
    for (const Face& f : faces) {
      try {
        auto changes = color_changes(f, bp.fn(), window);
        if (changes.size() > 2) fail("more than two changes at sample " + std::to_string(s));
        if (!changes.empty() && std::find(changes.begin(), changes.end(), 0) == changes.end())
          fail("changes avoid the source at sample " + std::to_string(s) + " face src " + f.src.str());
        ++res.checked;
      } catch (const NotParabolicBiclosed& e) {
        fail(std::string("diagnostic thrown: ") + e.what());
      }
    }
  }
  res.detail = std::to_string(samples) + " colorings at depth " + std::to_string(depth) +
               ", window " + std::to_string(window);
}

// ---------------------------------------------------------------------------
// Criterion 5: finite snakes meet at v_w and enclose the geodesic.
// ---------------------------------------------------------------------------

void check_finite_snake(CheckResult& res, const CheckOptions& opts) {
  int maxlen = opts.depth.value_or(6);
  int budget = opts.budget.value_or(24);
  const RootTable& t = depth_table(std::max(8, maxlen + 2));
  Failures fail{res};
  for (const ReducedWord& w : words_up_to(maxlen)) {
    BiclosedDescriptor d = BiclosedDescriptor::finite(w);
    Bipartition bp = realize_bipartition(d, t, t.depth_bound().value());
    SnakePair sp;
    try {
      sp = build_snake_pair(bp.fn(), budget);
    } catch (const std::exception& e) {
      fail("snake failed at " + w.str() + ": " + e.what());
      continue;
    }
    if (sp.outcome != SnakePair::Outcome::meet || !(sp.meet_vertex && *sp.meet_vertex == w)) {
      fail("no meet at " + w.str());
      continue;
    }
    if (!snake_manifold_check(sp, bp.fn())) fail("manifold check failed at " + w.str());
    ++res.checked;
  }
  res.detail = std::to_string(res.checked) + " words of length 1.." + std::to_string(maxlen);
}

// ---------------------------------------------------------------------------
// Criterion 6: weak separability at desk scale (Theorem main).
// ---------------------------------------------------------------------------

void check_theorem_main(CheckResult& res, const CheckOptions& opts) {
  int depth = opts.depth.value_or(10);
  int maxlen = 6;
  int samples = opts.samples.value_or(100);
  std::mt19937_64 rng(opts.seed);
  const RootTable& t = depth_table(depth);
  const RootTable& pool = depth_table(5);
  const auto& pts = rescaled_points(t);
  Failures fail{res};

  auto run_split = [&](const std::vector<char>& red, const AffLine* drop_line, const std::string& what) {
    std::vector<AffinePoint> P, Q;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (drop_line && inner(t[i].vec, drop_line->normal) == 0) continue;
      (red[i] ? P : Q).push_back(pts[i]);
    }
    if (P.empty() || Q.empty()) return;  // nothing to separate at this truncation
    Separation sep = separate_point_sets(P, Q);
    if (!sep.separated()) {
      fail("witness returned for " + what);
      return;
    }
    // The certificate must actually separate, strictly.
    const AffLine& L = sep.line();
    int sp = 0, sq = 0;
    for (const auto& p : P) {
      int s = sign(line_eval(L, p));
      if (s == 0 || (sp != 0 && s != sp)) fail("weak or inconsistent P side for " + what);
      sp = s;
    }
    for (const auto& q : Q) {
      int s = sign(line_eval(L, q));
      if (s == 0 || (sq != 0 && s != sq)) fail("weak or inconsistent Q side for " + what);
      sq = s;
    }
    if (sp == sq) fail("same side for " + what);
    ++res.checked;
  };

  for (const ReducedWord& w : words_up_to(maxlen)) {
    std::vector<char> red(t.size(), 0);
    Mat3 winv = Mat3::of_word(w.inverse());
    for (std::size_t i = 0; i < t.size(); ++i) red[i] = all_nonpos(winv.apply(t[i].vec));
    run_split(red, nullptr, "Inv(" + w.str() + ")");
    for (auto& c : red) c = !c;
    run_split(red, nullptr, "complement of Inv(" + w.str() + ")");
  }

  for (int s = 0; s < samples; ++s) {
    auto d = random_infinite(rng, pool, t, false);
    if (!d) {
      fail("sampler exhausted");
      break;
    }
    DescriptorOracle oracle = make_oracle(*d, t);
    std::vector<char> red(t.size(), 0);
    for (std::size_t i = 0; i < t.size(); ++i) red[i] = oracle.color(t[i].vec) == Color::red;
    const AffLine* drop = d->kind == BiclosedDescriptor::Kind::infinite ? &d->line : nullptr;
    run_split(red, drop, "infinite sample " + std::to_string(s));
  }
  res.detail = std::to_string(res.checked) + " separations at depth " + std::to_string(depth);
}

// ---------------------------------------------------------------------------
// Criterion 7: arc enclosures of H_snake against the exact line.
// ---------------------------------------------------------------------------

void check_h_snake(CheckResult& res, const CheckOptions& opts) {
  int samples = opts.samples.value_or(50);
  std::mt19937_64 rng(opts.seed);
  const RootTable& pool = depth_table(5);
  const RootTable& bt = depth_table(10);
  Failures fail{res};
  const int budgets[3] = {8, 16, 24};

  for (int s = 0; s < samples; ++s) {
    auto d = random_infinite(rng, pool, bt, true);
    if (!d) {
      fail("sampler exhausted");
      break;
    }
    DescriptorOracle oracle = make_oracle(*d, bt);
    BoundaryPoint p_lo{d->line, false}, p_hi{d->line, true};

    std::optional<SnakePair> prev;
    bool bad = false;
    for (int budget : budgets) {
      SnakePair sp;
      try {
        sp = build_snake_pair(oracle.fn(), budget);
      } catch (const std::exception& e) {
        fail("snake failed on sample " + std::to_string(s) + ": " + e.what());
        bad = true;
        break;
      }
      if (sp.outcome == SnakePair::Outcome::meet) {
        fail("secant descriptor produced a meet on sample " + std::to_string(s));
        bad = true;
        break;
      }
      auto [a1, a2] = h_snake(sp);
      bool direct = arc_contains(a1, p_lo) && arc_contains(a2, p_hi);
      bool swapped = arc_contains(a1, p_hi) && arc_contains(a2, p_lo);
      if (!direct && !swapped) {
        fail("arcs miss the exact intersection points: sample " + std::to_string(s) + " budget " +
             std::to_string(budget));
        bad = true;
        break;
      }
      if (prev) {
        auto [b1, b2] = h_snake(*prev);
        if (!arc_within(a1, b1) || !arc_within(a2, b2)) {
          fail("arcs fail to shrink with budget: sample " + std::to_string(s));
          bad = true;
          break;
        }
      }
      prev = sp;
    }
    if (!bad) ++res.checked;
  }
  res.detail = std::to_string(res.checked) + " secant descriptors, budgets {8,16,24}";
}

// ---------------------------------------------------------------------------
// Criterion 8: joins are 2-closures of unions (Theorem main2).
// ---------------------------------------------------------------------------

void check_theorem_main2(CheckResult& res, const CheckOptions& opts) {
  long long N = opts.N.value_or(20), M = opts.M.value_or(60);
  int samples = opts.samples.value_or(200);
  std::mt19937_64 rng(opts.seed);
  const RootTable& tN = height_table(N);
  const RootTable& pool = depth_table(5);
  const ConePlanes& cpM = cone_planes(M);
  const ConePlanes& cp2M = cone_planes(2 * M);
  Failures fail{res};

  int stable_count = 0;
  for (int s = 0; s < samples; ++s) {
    int arity = 2 + static_cast<int>(pick(rng, 2));
    std::vector<RootSet> sets;
    for (int i = 0; i < arity; ++i)
      sets.push_back(realize(random_descriptor(rng, pool, tN), tN));
    JoinResult jr = join(sets, cpM, cp2M, N, M, true);
    if (jr.stable) {
      ++stable_count;
      if (!jr.convex_agrees.value_or(false)) {
        fail("stable sample disagrees with convex closure: " + std::to_string(s));
        continue;
      }
    } else {
      // Re-run at the doubled work bound and require agreement there.
      std::vector<VecZ> uni;
      for (const RootSet& rs : sets) uni.insert(uni.end(), rs.roots.begin(), rs.roots.end());
      std::sort(uni.begin(), uni.end());
      uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
      RootSet deep = two_closure(uni, cp2M, 2 * M);
      std::vector<VecZ> deepN;
      for (const VecZ& v : deep.roots)
        if (v.sum() <= N) deepN.push_back(v);
      RootSet conv = convex_closure(uni, cpM, N);
      if (deepN != conv.roots) {
        fail("unstable sample disagrees after re-run: " + std::to_string(s));
        continue;
      }
    }
    ++res.checked;
  }
  double rate = samples ? static_cast<double>(stable_count) / samples : 1.0;
  if (rate < 0.95) fail("stability rate " + std::to_string(rate) + " below 0.95");
  std::ostringstream detail;
  detail << res.checked << " joins at N=" << N << " M=" << M << ", stability "
         << stable_count << "/" << samples;
  res.detail = detail.str();
}

// ---------------------------------------------------------------------------
// Criterion 9: parabolic 2-closure of the simple roots fills the system.
// ---------------------------------------------------------------------------

void check_close_delta(CheckResult& res, const CheckOptions& opts) {
  long long M = opts.M.value_or(40), N = opts.N.value_or(20);
  const ConePlanes& cp = cone_planes(M);
  Failures fail{res};
  std::vector<VecZ> delta{simple_root(1), simple_root(2), simple_root(3)};
  RootSet closure = parabolic_two_closure(delta, cp, Int(M));
  for (const Root& r : height_table(N)) {
    if (r.height > N) continue;
    if (!closure.contains(r.vec)) fail("missing root " + to_json(r.vec).dump());
    ++res.checked;
  }
  res.detail = "parabolic 2-closure of Delta at M=" + std::to_string(M) + " covers height <= " +
               std::to_string(N);
}

// ---------------------------------------------------------------------------
// Criterion 10a: cover relations add exactly one root.
// ---------------------------------------------------------------------------

void check_covers(CheckResult& res, const CheckOptions& opts) {
  int depth = opts.depth.value_or(12);
  int infinite_samples = opts.samples.value_or(20);
  std::mt19937_64 rng(opts.seed);
  const RootTable& t = depth_table(depth);
  const RootTable& pool = depth_table(5);
  const RootTable& bt = depth_table(8);
  Failures fail{res};

  auto check_pair = [&](const BiclosedDescriptor& d, const std::string& what) {
    RootSet base = realize(d, t);
    for (const BiclosedDescriptor& up : covers(d)) {
      RootSet above = realize(up, t);
      std::vector<VecZ> diff;
      std::set_difference(above.roots.begin(), above.roots.end(), base.roots.begin(),
                          base.roots.end(), std::back_inserter(diff));
      std::vector<VecZ> missing;
      std::set_difference(base.roots.begin(), base.roots.end(), above.roots.begin(),
                          above.roots.end(), std::back_inserter(missing));
      if (diff.size() != 1 || !missing.empty())
        fail("cover difference not a single root for " + what);
      ++res.checked;
    }
  };

  for (const ReducedWord& w : words_up_to(4, true)) {
    check_pair(BiclosedDescriptor::finite(w), "Inv(" + w.str() + ")");
    check_pair(BiclosedDescriptor::cofinite(w), "co-Inv(" + w.str() + ")");
  }
  for (int s = 0; s < infinite_samples; ++s) {
    auto d = random_infinite(rng, pool, bt, false);
    if (!d) {
      fail("sampler exhausted");
      break;
    }
    check_pair(*d, "infinite sample " + std::to_string(s));
  }
  res.detail = std::to_string(res.checked) + " cover pairs at depth " + std::to_string(depth);
}

// ---------------------------------------------------------------------------
// Criterion 10b: the complete join-irreducible classifier.
// ---------------------------------------------------------------------------

/// Symbolic lower covers (the inverse cover families).
std::vector<BiclosedDescriptor> lower_covers(const BiclosedDescriptor& d) {
  using Kind = BiclosedDescriptor::Kind;
  std::vector<BiclosedDescriptor> out;
  switch (d.kind) {
    case Kind::finite:
      if (!d.word.empty()) out.push_back(BiclosedDescriptor::finite(d.word.parent()));
      break;
    case Kind::cofinite:
      for (Generator g = 1; g <= 3; ++g)
        if (d.word.empty() || d.word.last() != g)
          out.push_back(BiclosedDescriptor::cofinite(d.word.times(g)));
      break;
    case Kind::infinite: {
      if (!d.boundary) break;
      Rank2Biclosed b = d.boundary->canonical();
      if (b.mode == Rank2Biclosed::Mode::finite && b.k >= 1)
        out.push_back(BiclosedDescriptor::infinite(d.line, d.side,
                                                   Rank2Biclosed{b.side, b.mode, b.k - 1}.canonical()));
      if (b.mode == Rank2Biclosed::Mode::cofinite)
        out.push_back(BiclosedDescriptor::infinite(d.line, d.side,
                                                   Rank2Biclosed{b.side, b.mode, b.k + 1}.canonical()));
      break;
    }
  }
  return out;
}

void check_join_irr(CheckResult& res, const CheckOptions& opts) {
  int infinite_samples = opts.samples.value_or(20);
  std::mt19937_64 rng(opts.seed);
  const RootTable& t = depth_table(8);
  const RootTable& pool = depth_table(5);
  const RootTable& wpool = depth_table(4);
  Failures fail{res};

  // Finite cases: direct definition check. Biclosed strict subsets of
  // Inv(w) are inversion sets of proper prefixes; the unique lower cover
  // must absorb them all, i.e. none may contain the removed root.
  for (const ReducedWord& w : words_up_to(4, true)) {
    bool classified = is_complete_join_irreducible(BiclosedDescriptor::finite(w));
    bool direct;
    if (w.empty()) {
      direct = false;  // no lower cover at the bottom
    } else {
      VecZ added = act(w.parent(), simple_root(w.last()));
      direct = true;
      for (std::size_t k = 0; k < w.length(); ++k) {
        auto inv = inversion_set(w.prefix(k));
        if (std::find(inv.begin(), inv.end(), added) != inv.end()) direct = false;
      }
    }
    if (classified != direct) fail("finite classifier mismatch at " + w.str());
    // Cofinite sets cover two or three elements, never one.
    if (is_complete_join_irreducible(BiclosedDescriptor::cofinite(w)))
      fail("cofinite classified join-irreducible at " + w.str());
    if (lower_covers(BiclosedDescriptor::cofinite(w)).size() < 2)
      fail("cofinite with unique lower cover at " + w.str());
    ++res.checked;
  }

  // Infinite cases: unique lower cover plus a witness search. A witness
  // is a strictly smaller biclosed set still containing the root added
  // over the lower cover; finding one disproves join-irreducibility.
  auto realize_colors = [&](const BiclosedDescriptor& d) {
    DescriptorOracle o = make_oracle(d, t);
    std::vector<char> red(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) red[i] = o.color(t[i].vec) == Color::red;
    return red;
  };

  for (int s = 0; s < infinite_samples; ++s) {
    auto dopt = random_infinite(rng, pool, t, false);
    if (!dopt) {
      fail("sampler exhausted");
      break;
    }
    const BiclosedDescriptor& d = *dopt;
    bool classified = is_complete_join_irreducible(d);

    auto lowers = lower_covers(d);
    bool direct = lowers.size() == 1;
    std::optional<VecZ> added;
    if (direct) {
      RootSet base = realize(d, t), below = realize(lowers[0], t);
      std::vector<VecZ> diff;
      std::set_difference(base.roots.begin(), base.roots.end(), below.roots.begin(),
                          below.roots.end(), std::back_inserter(diff));
      if (diff.size() != 1) {
        fail("lower cover difference not a single root: sample " + std::to_string(s));
        continue;
      }
      added = diff[0];
    }

    if (direct && added) {
      // Witness candidates: same-line descriptors with smaller boundary,
      // and half-space descriptors through the added root's rescaling.
      auto base_red = realize_colors(d);
      bool witness_found = false;
      auto try_witness = [&](const BiclosedDescriptor& cand) {
        if (witness_found || cand == d) return;
        std::vector<char> red;
        try {
          validate(cand, t);
          red = realize_colors(cand);
        } catch (const std::exception&) {
          return;
        }
        bool subset = true, strict = false, has_added = false;
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (red[i] && !base_red[i]) subset = false;
          if (!red[i] && base_red[i]) strict = true;
          if (red[i] && t[i].vec == *added) has_added = true;
        }
        if (subset && strict && has_added) witness_found = true;
      };

      for (auto side : {Rank2Biclosed::Side::left, Rank2Biclosed::Side::right})
        for (auto mode : {Rank2Biclosed::Mode::finite, Rank2Biclosed::Mode::cofinite})
          for (int k = 0; k <= 4; ++k)
            try_witness(BiclosedDescriptor::infinite(d.line, d.side,
                                                     Rank2Biclosed{side, mode, k}.canonical()));
      AffinePoint ahat = rescale(*added);
      for (const Root& g : wpool) {
        if (witness_found) break;
        if (g.vec == *added) continue;
        AffLine L2;
        try {
          L2 = line_through(ahat, rescale(g.vec));
        } catch (const std::exception&) {
          continue;
        }
        if (classify_line(L2) != DiskClass::secant) continue;
        LineSystem sys = LineSystem::on_line(L2, t);
        for (std::size_t pos = 0; pos < sys.size(); ++pos) {
          if (!(sys.ordered[pos].second == *added)) continue;
          int from_left = static_cast<int>(pos) + 1;
          int from_right = static_cast<int>(sys.size() - pos);
          for (auto hs : {BiclosedDescriptor::HalfSide::far, BiclosedDescriptor::HalfSide::near}) {
            try_witness(BiclosedDescriptor::infinite(
                L2, hs, Rank2Biclosed{Rank2Biclosed::Side::left, Rank2Biclosed::Mode::finite, from_left}));
            try_witness(BiclosedDescriptor::infinite(
                L2, hs,
                Rank2Biclosed{Rank2Biclosed::Side::right, Rank2Biclosed::Mode::finite, from_right}));
          }
        }
      }
      direct = !witness_found;
    }

    if (classified != direct)
      fail("infinite classifier mismatch on sample " + std::to_string(s) + ": " +
           to_json(d).dump());
    ++res.checked;
  }
  res.detail = std::to_string(res.checked) + " cases (finite length <= 4 plus " +
               std::to_string(infinite_samples) + " infinite)";
}

// ---------------------------------------------------------------------------
// Criterion 11: CLI/SVG determinism and structure.
// ---------------------------------------------------------------------------

long long count_occurrences(const std::string& hay, const std::string& needle) {
  long long n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

void check_svg(CheckResult& res, const CheckOptions& opts) {
  int depth = opts.depth.value_or(5);
  const RootTable& t = depth_table(depth);
  Failures fail{res};

  auto run_case = [&](const BiclosedDescriptor& d, const std::string& what) {
    Bipartition bp = realize_bipartition(d, t, depth);
    SnakePair sp = build_snake_pair(bp.fn(), 24);
    RenderSpec spec;
    spec.depth = depth;
    ColorFn fn = bp.fn();
    std::string svg1 = render_svg(spec, t, &fn, &sp);
    std::string svg2 = render_svg(spec, t, &fn, &sp);
    if (svg1 != svg2) fail("SVG not byte-stable for " + what);
    if (count_occurrences(svg1, "class=\"snake\"") != 2)
      fail("expected one polyline per snake in " + what);
    long long reds = count_occurrences(svg1, "class=\"edge red\"");
    long long blues = count_occurrences(svg1, "class=\"edge blue\"");
    if (reds != static_cast<long long>(bp.red.size()))
      fail("red chord count mismatch in " + what);
    if (reds + blues != static_cast<long long>(t.size()))
      fail("colored chord count mismatch in " + what);
    ++res.checked;
  };

  run_case(BiclosedDescriptor::finite(ReducedWord{1, 2}), "Finite([1,2])");

  // One secant descriptor: the half-system of the first simple root.
  run_case(BiclosedDescriptor::infinite(make_line(VecZ{1, 0, 0}), BiclosedDescriptor::HalfSide::far,
                                        std::nullopt),
           "secant half-system");
  res.detail = "2 figures, byte-stable, structural counts";
}

using CheckFn = void (*)(CheckResult&, const CheckOptions&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> reg{
      {"heightnorm", check_heightnorm},
      {"inv-consistency", check_inv_consistency},
      {"rank2-parabolics", check_rank2_parabolics},
      {"change-at-source", check_change_at_source},
      {"finite-snake", check_finite_snake},
      {"theorem-main", check_theorem_main},
      {"h-snake", check_h_snake},
      {"theorem-main2", check_theorem_main2},
      {"close-delta", check_close_delta},
      {"covers", check_covers},
      {"join-irr", check_join_irr},
      {"svg", check_svg},
  };
  return reg;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

CheckResult run_check(const std::string& name, const CheckOptions& opts) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    CheckResult res;
    res.name = name;
    res.pass = true;
    auto t0 = Clock::now();
    fn(res, opts);
    res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
  }
  throw std::invalid_argument("unknown property: " + name);
}

}  // namespace u3
