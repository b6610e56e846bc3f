#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "u3/biclosed.hpp"
#include "u3/io.hpp"

using namespace u3;

namespace {

RootSet set_of(std::vector<VecZ> v, long long bound) { return RootSet::of(std::move(v), Int(bound)); }

std::vector<VecZ> all_roots(const RootTable& t, const Int& bound) {
  std::vector<VecZ> v;
  for (const Root& r : t)
    if (r.height <= bound) v.push_back(r.vec);
  std::sort(v.begin(), v.end());
  return v;
}

/// Reference pairwise fixpoint (the oracle for the interval engine).
std::vector<VecZ> naive_two_closure(std::vector<VecZ> X, PlaneIndex& planes, const Int& M,
                                    bool parabolic, const RootTable& t) {
  std::set<VecZ> s(X.begin(), X.end());
  std::vector<VecZ> elems(s.begin(), s.end());
  for (std::size_t j = 1; j < elems.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (parabolic) {
        auto [a1, a2] = faces_of_edge(t.at(elems[i]));
        auto [b1, b2] = faces_of_edge(t.at(elems[j]));
        if (!(a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2)) continue;
      }
      for (const VecZ& g : rank2_cone_roots(planes, elems[i], elems[j], M))
        if (s.insert(g).second) elems.push_back(g);
    }
  std::vector<VecZ> out(s.begin(), s.end());
  return out;
}

}  // namespace

TEST_CASE("closed and biclosed predicates") {
  RootTable t = RootTable::by_height(3);
  PlaneIndex planes(t);
  CHECK(t.size() == 9);

  CHECK(is_biclosed(set_of({}, 3), planes, 3));
  CHECK(is_biclosed(set_of(all_roots(t, 3), 3), planes, 3));
  CHECK(!is_closed(set_of({{1, 0, 0}, {0, 1, 0}}, 3), planes, 3));
  CHECK(is_biclosed(set_of({{1, 0, 0}, {2, 1, 0}}, 3), planes, 3));  // Inv(s1 s2)
}

TEST_CASE("all subsets of the height-3 truncation") {
  // Brute-force oracle over all 512 subsets of the 9 roots: the sets
  // biclosed within the truncation are exactly the truncations of
  // inversion sets, their complements, and infinite descriptors; all of
  // them are weakly separable at this scale.
  RootTable t = RootTable::by_height(3);
  PlaneIndex planes(t);
  std::vector<VecZ> roots = all_roots(t, 3);
  REQUIRE(roots.size() == 9);

  std::set<std::vector<VecZ>> biclosed_subsets;
  for (unsigned mask = 0; mask < 512; ++mask) {
    std::vector<VecZ> sel;
    for (unsigned b = 0; b < 9; ++b)
      if (mask & (1u << b)) sel.push_back(roots[b]);
    RootSet S = set_of(sel, 3);
    if (is_biclosed(S, planes, 3)) biclosed_subsets.insert(S.roots);
  }

  // Frozen by this enumeration (the oracle *is* the brute force).
  CHECK(biclosed_subsets.size() == 58);

  // Weak separability of every biclosed subset.
  for (const auto& sel : biclosed_subsets) {
    RootSet S = set_of(sel, 3);
    std::vector<AffinePoint> P, Q;
    for (const VecZ& v : roots) (S.contains(v) ? P : Q).push_back(rescale(v));
    if (P.empty() || Q.empty()) continue;
    CHECK(separate_point_sets(P, Q).separated());
  }

  // Truncated inversion sets and their complements all appear.
  std::set<std::vector<VecZ>> realized;
  std::vector<ReducedWord> layer{{}};
  for (int len = 0; len <= 8; ++len) {
    std::vector<ReducedWord> next;
    for (const ReducedWord& w : layer) {
      for (const BiclosedDescriptor& d :
           {BiclosedDescriptor::finite(w), BiclosedDescriptor::cofinite(w)}) {
        realized.insert(realize(d, t).roots);
      }
      for (Generator g = 1; g <= 3; ++g)
        if (w.empty() || w.last() != g) next.push_back(w.times(g));
    }
    layer = std::move(next);
  }
  for (const auto& inv : realized) CHECK(biclosed_subsets.count(inv));

  // Infinite descriptors: tangent lines of shallow faces and secant
  // lines through pairs of rescaled roots, with every valid boundary.
  std::vector<Face> faces;
  for (const Root& r : RootTable::by_depth(2)) {
    auto [f1, f2] = faces_of_edge(r);
    faces.push_back(f1);
    faces.push_back(f2);
  }
  std::vector<BiclosedDescriptor> family;
  for (const Face& f : faces) {
    AffLine L = line_through(rescale(boundary_root(f, 1)), rescale(boundary_root(f, -1)));
    for (int k = 0; k <= 4; ++k)
      for (auto side : {Rank2Biclosed::Side::left, Rank2Biclosed::Side::right}) {
        family.push_back(BiclosedDescriptor::infinite(
            L, BiclosedDescriptor::HalfSide::far,
            Rank2Biclosed{side, Rank2Biclosed::Mode::cofinite, k}.canonical()));
        family.push_back(BiclosedDescriptor::infinite(
            L, BiclosedDescriptor::HalfSide::near,
            Rank2Biclosed{side, Rank2Biclosed::Mode::finite, k}.canonical()));
      }
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      AffLine L = line_through(rescale(roots[i]), rescale(roots[j]));
      if (classify_line(L) != DiskClass::secant) continue;
      for (auto hs : {BiclosedDescriptor::HalfSide::far, BiclosedDescriptor::HalfSide::near})
        for (int k = 0; k <= 2; ++k)
          for (auto side : {Rank2Biclosed::Side::left, Rank2Biclosed::Side::right})
            for (auto mode : {Rank2Biclosed::Mode::finite, Rank2Biclosed::Mode::cofinite})
              family.push_back(BiclosedDescriptor::infinite(
                  L, hs, Rank2Biclosed{side, mode, k}.canonical()));
    }
  for (const Root& r : t) {
    AffLine L = dual_line(rescale(r.vec));
    if (classify_line(L) != DiskClass::secant) continue;
    for (auto hs : {BiclosedDescriptor::HalfSide::far, BiclosedDescriptor::HalfSide::near})
      family.push_back(BiclosedDescriptor::infinite(L, hs, std::nullopt));
  }
  for (const BiclosedDescriptor& d : family) {
    try {
      validate(d, t);
    } catch (const std::invalid_argument&) {
      continue;
    }
    realized.insert(realize(d, t).roots);
    CHECK(biclosed_subsets.count(realize(d, t).roots));
  }
  // The generated families reach every biclosed subset of the truncation.
  CHECK(realized.size() == biclosed_subsets.size());
}

TEST_CASE("parabolic biclosedness of windows") {
  RootTable t = RootTable::by_depth(6);
  // A genuine biclosed set passes.
  RootSet inv = realize(BiclosedDescriptor::finite(ReducedWord{1, 2, 1}), t);
  Bipartition bp{6, {inv.roots.begin(), inv.roots.end()}, &t};
  CHECK(is_parabolic_biclosed(bp, 5));

  // Alternating colors on a face fail.
  Bipartition bad{6, {VecZ{1, 0, 0}, VecZ{3, 2, 0}}, &t};
  CHECK(!is_parabolic_biclosed(bad, 5));
}

TEST_CASE("two_closure examples and engine/oracle agreement") {
  ConePlanes cp20(RootTable::by_height(20));
  CHECK(two_closure(std::vector<VecZ>{{1, 0, 0}}, cp20, 20).roots == std::vector<VecZ>{{1, 0, 0}});

  // Single-pair fixpoint equals the pair cone.
  RootTable t20 = RootTable::by_height(20);
  PlaneIndex planes20(t20);
  auto pair_cone = rank2_cone_roots(planes20, VecZ{1, 0, 0}, VecZ{1, 2, 0}, 20);
  CHECK(two_closure(std::vector<VecZ>{{1, 0, 0}, {1, 2, 0}}, cp20, 20).roots == pair_cone);

  // Delta fills every root up to the target bound, with slack.
  ConePlanes cp60(RootTable::by_height(60));
  std::vector<VecZ> delta{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  RootSet full = two_closure(delta, cp60, 60);
  for (const VecZ& v : all_roots(t20, 20)) CHECK(full.contains(v));

  // Engine agrees with the naive pairwise fixpoint.
  RootTable t30 = RootTable::by_height(30);
  PlaneIndex planes30(t30);
  ConePlanes cp30(t30);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<VecZ> X;
    for (int i = 0; i < 3 + static_cast<int>(rng() % 3); ++i)
      X.push_back(t30[rng() % t30.size()].vec);
    auto naive = naive_two_closure(X, planes30, 30, false, t30);
    CHECK(two_closure(X, cp30, 30).roots == naive);
  }
}

TEST_CASE("parabolic two-closure matches the face-restricted fixpoint") {
  RootTable t30 = RootTable::by_height(30);
  PlaneIndex planes30(t30);
  ConePlanes cp30(t30);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<VecZ> X;
    for (int i = 0; i < 3; ++i) X.push_back(t30[rng() % t30.size()].vec);
    auto naive = naive_two_closure(X, planes30, 30, true, t30);
    CHECK(parabolic_two_closure(X, cp30, 30).roots == naive);
  }
  // Lemma closeDelta at small scale: the parabolic closure of the simple
  // roots covers every root of height <= 10 at work bound 30.
  std::vector<VecZ> delta{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  RootSet closure = parabolic_two_closure(delta, cp30, 30);
  for (const Root& r : RootTable::by_height(10)) CHECK(closure.contains(r.vec));
}

TEST_CASE("convex closure") {
  RootTable t20 = RootTable::by_height(20);
  ConePlanes cp20(t20);
  std::vector<VecZ> delta{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(convex_closure(delta, cp20, 20).roots == all_roots(t20, 20));
  CHECK(convex_closure(std::vector<VecZ>{{1, 0, 0}}, cp20, 20).roots ==
        std::vector<VecZ>{{1, 0, 0}});

  // Inv(s1) + Inv(s2) spans the standard dihedral strip.
  std::vector<VecZ> expect;
  for (const Root& r : t20)
    if (r.vec.z == 0) expect.push_back(r.vec);
  std::sort(expect.begin(), expect.end());
  CHECK(convex_closure(std::vector<VecZ>{{1, 0, 0}, {0, 1, 0}}, cp20, 20).roots == expect);

  // Unrestricted-triple oracle agrees with the anchored production scan.
  std::mt19937_64 rng(31);
  auto det3 = [](const VecZ& u, const VecZ& v, const VecZ& w) { return dot(u, cross(v, w)); };
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<VecZ> X;
    for (int i = 0; i < 4 + static_cast<int>(rng() % 3); ++i)
      X.push_back(t20[rng() % t20.size()].vec);
    RootSet production = convex_closure(X, cp20, 20);
    for (const Root& r : t20) {
      bool member = false;  // unrestricted scan over singles/pairs/triples
      for (const VecZ& x : X) member = member || x == r.vec;
      for (std::size_t i = 0; i < X.size() && !member; ++i)
        for (std::size_t j = i + 1; j < X.size() && !member; ++j)
          member = cone2_coefficients(X[i], X[j], r.vec).has_value();
      for (std::size_t i = 0; i < X.size() && !member; ++i)
        for (std::size_t j = i + 1; j < X.size() && !member; ++j)
          for (std::size_t k = j + 1; k < X.size() && !member; ++k) {
            Int d = det3(X[i], X[j], X[k]);
            if (d == 0) continue;
            Rat c1(det3(r.vec, X[j], X[k]), d), c2(det3(X[i], r.vec, X[k]), d),
                c3(det3(X[i], X[j], r.vec), d);
            member = c1 >= 0 && c2 >= 0 && c3 >= 0;
          }
      CHECK(member == production.contains(r.vec));
    }
  }
}

TEST_CASE("two-closure is contained in convex closure") {
  RootTable t20 = RootTable::by_height(20);
  ConePlanes cp20(t20);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<VecZ> X;
    for (int i = 0; i < 3; ++i) X.push_back(t20[rng() % t20.size()].vec);
    RootSet two = two_closure(X, cp20, 20), conv = convex_closure(X, cp20, 20);
    for (const VecZ& v : two.roots) CHECK(conv.contains(v));
  }
}

TEST_CASE("join: examples and the main theorem at desk scale") {
  RootTable t20 = RootTable::by_height(20);
  ConePlanes cpM(RootTable::by_height(60));
  ConePlanes cp2M(RootTable::by_height(120));

  RootSet inv1 = realize(BiclosedDescriptor::finite(ReducedWord{1}), t20);
  RootSet inv2 = realize(BiclosedDescriptor::finite(ReducedWord{2}), t20);
  RootSet inv12 = realize(BiclosedDescriptor::finite(ReducedWord{1, 2}), t20);

  JoinResult single = join({inv1}, cpM, cp2M, 20, 60, true);
  CHECK(single.set.roots == inv1.roots);
  CHECK(single.stable);
  CHECK(single.convex_agrees.value());

  std::vector<VecZ> strip;
  for (const Root& r : t20)
    if (r.vec.z == 0) strip.push_back(r.vec);
  std::sort(strip.begin(), strip.end());

  JoinResult both = join({inv1, inv2}, cpM, cp2M, 20, 60, true);
  CHECK(both.set.roots == strip);
  CHECK(both.stable);
  CHECK(both.convex_agrees.value());

  JoinResult mixed = join({inv12, inv2}, cpM, cp2M, 20, 60, true);
  CHECK(mixed.set.roots == strip);
  CHECK(mixed.convex_agrees.value());
}

TEST_CASE("realize: spec examples") {
  RootTable t = RootTable::by_height(20);

  CHECK(realize(BiclosedDescriptor::finite(ReducedWord{1, 2}), t).roots ==
        std::vector<VecZ>{{1, 0, 0}, {2, 1, 0}});

  // Tangent line, far side, full boundary: the whole dihedral strip.
  AffLine strip_line = make_line(VecZ{1, 1, 0});
  BiclosedDescriptor full_strip = BiclosedDescriptor::infinite(
      strip_line, BiclosedDescriptor::HalfSide::far,
      Rank2Biclosed{Rank2Biclosed::Side::left, Rank2Biclosed::Mode::cofinite, 0});
  std::vector<VecZ> strip;
  for (const Root& r : t)
    if (r.vec.z == 0) strip.push_back(r.vec);
  std::sort(strip.begin(), strip.end());
  CHECK(realize(full_strip, t).roots == strip);

  // Secant half-system of the first simple root.
  BiclosedDescriptor half =
      BiclosedDescriptor::infinite(make_line(VecZ{1, 0, 0}), BiclosedDescriptor::HalfSide::far,
                                   std::nullopt);
  RootSet hs = realize(half, t);
  for (const Root& r : t) {
    int s = sign(inner(r.vec, VecZ{1, 0, 0}));
    CHECK(s != 0);
    CHECK(hs.contains(r.vec) == (s > 0));
  }
  CHECK(hs.contains(VecZ{1, 0, 0}));

  // Realizations of valid descriptors are biclosed within the truncation.
  RootTable t9 = RootTable::by_height(9);
  PlaneIndex planes9(t9);
  for (const BiclosedDescriptor& d : {full_strip, half})
    CHECK(is_biclosed(set_of(realize(d, t9).roots, 9), planes9, 9));
}

TEST_CASE("descriptor validation") {
  RootTable t = RootTable::by_height(20);
  // Exterior lines are rejected.
  AffinePoint interior = affine({Rat(1, 2), Rat(1, 4), Rat(1, 4)});
  CHECK_THROWS_AS(validate(BiclosedDescriptor::infinite(dual_line(interior),
                                                        BiclosedDescriptor::HalfSide::far, {}),
                           t),
                  std::invalid_argument);
  // Tangent far side requires a cofinite boundary.
  AffLine strip_line = make_line(VecZ{1, 1, 0});
  CHECK_THROWS_AS(
      validate(BiclosedDescriptor::infinite(
                   strip_line, BiclosedDescriptor::HalfSide::far,
                   Rank2Biclosed{Rank2Biclosed::Side::left, Rank2Biclosed::Mode::finite, 2}),
               t),
      std::invalid_argument);
  // A line carrying roots needs a boundary.
  CHECK_THROWS_AS(
      validate(BiclosedDescriptor::infinite(strip_line, BiclosedDescriptor::HalfSide::far, {}), t),
      std::invalid_argument);
  // The half-system line carries no roots: boundary must be absent.
  CHECK_NOTHROW(validate(
      BiclosedDescriptor::infinite(make_line(VecZ{1, 0, 0}), BiclosedDescriptor::HalfSide::near, {}),
      t));
}

TEST_CASE("covers and join-irreducibility") {
  auto cf = covers(BiclosedDescriptor::finite(ReducedWord{}));
  REQUIRE(cf.size() == 3);
  for (const auto& d : cf) CHECK(d.word.length() == 1);

  CHECK(covers(BiclosedDescriptor::finite(ReducedWord{1, 2})).size() == 2);
  CHECK(covers(BiclosedDescriptor::cofinite(ReducedWord{1, 2})).size() == 1);
  CHECK(covers(BiclosedDescriptor::cofinite(ReducedWord{})).empty());

  CHECK(!is_complete_join_irreducible(BiclosedDescriptor::finite(ReducedWord{})));
  CHECK(is_complete_join_irreducible(BiclosedDescriptor::finite(ReducedWord{1, 3})));
  CHECK(!is_complete_join_irreducible(BiclosedDescriptor::cofinite(ReducedWord{1, 3})));

  AffLine strip_line = make_line(VecZ{1, 1, 0});
  BiclosedDescriptor cji = BiclosedDescriptor::infinite(
      strip_line, BiclosedDescriptor::HalfSide::far,
      Rank2Biclosed{Rank2Biclosed::Side::right, Rank2Biclosed::Mode::cofinite, 1});
  CHECK(is_complete_join_irreducible(cji));
  BiclosedDescriptor full_strip = BiclosedDescriptor::infinite(
      strip_line, BiclosedDescriptor::HalfSide::far,
      Rank2Biclosed{Rank2Biclosed::Side::left, Rank2Biclosed::Mode::cofinite, 0});
  CHECK(!is_complete_join_irreducible(full_strip));

  // Cover realizations differ by exactly one root.
  RootTable t = RootTable::by_depth(8);
  for (const BiclosedDescriptor& d :
       {BiclosedDescriptor::finite(ReducedWord{1, 2}), cji, full_strip,
        BiclosedDescriptor::cofinite(ReducedWord{2, 1})}) {
    RootSet base = realize(d, t);
    for (const BiclosedDescriptor& up : covers(d)) {
      RootSet above = realize(up, t);
      std::vector<VecZ> diff;
      std::set_difference(above.roots.begin(), above.roots.end(), base.roots.begin(),
                          base.roots.end(), std::back_inserter(diff));
      CHECK(diff.size() == 1);
      CHECK(above.roots.size() == base.roots.size() + 1);
    }
  }
}

TEST_CASE("weakly separating lines") {
  auto ws = weak_sep_lines(BiclosedDescriptor::finite(ReducedWord{1}));
  CHECK(!ws.at_infinity);
  REQUIRE(ws.lines.size() == 3);
  for (const AffLine& L : ws.lines) CHECK(classify_line(L) == DiskClass::tangent);

  CHECK(weak_sep_lines(BiclosedDescriptor::finite(ReducedWord{})).at_infinity);
  BiclosedDescriptor half =
      BiclosedDescriptor::infinite(make_line(VecZ{1, 0, 0}), BiclosedDescriptor::HalfSide::far,
                                   std::nullopt);
  auto wi = weak_sep_lines(half);
  REQUIRE(wi.lines.size() == 1);
  CHECK(wi.lines[0] == half.line);
}
