#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "u3/root.hpp"
#include "u3/vec.hpp"
#include "u3/word.hpp"

using namespace u3;

TEST_CASE("reduce cancels adjacent involutions") {
  CHECK(ReducedWord{1, 2, 2, 3} == ReducedWord{1, 3});
  CHECK(ReducedWord{1, 1} == ReducedWord{});
  CHECK(ReducedWord{1, 2, 1, 2}.length() == 4);  // no braid relations
  // Nested cancellation collapses fully.
  CHECK(ReducedWord{1, 2, 3, 3, 2, 1} == ReducedWord{});
  CHECK(ReducedWord::parse("1221").length() == 0);
}

TEST_CASE("word algebra") {
  ReducedWord w{1, 2, 3};
  CHECK((w * w.inverse()).empty());
  CHECK(w.inverse() == ReducedWord{3, 2, 1});
  CHECK(w.parent() == ReducedWord{1, 2});
  CHECK(w.prefix(2) == ReducedWord{1, 2});
  CHECK(w.str() == "s1 s2 s3");
}

TEST_CASE("generator matrices act as reflections") {
  CHECK(act(ReducedWord{1}, simple_root(1)) == VecZ{-1, 0, 0});
  CHECK(act(ReducedWord{}, simple_root(2)) == VecZ{0, 1, 0});
  CHECK(act(ReducedWord{1}, simple_root(2)) == VecZ{2, 1, 0});
  CHECK(act(ReducedWord{1, 2}, simple_root(1)) == VecZ{3, 2, 0});
  CHECK(act(ReducedWord{3}, simple_root(1)) == VecZ{1, 0, 2});
  CHECK(act(ReducedWord{3}, simple_root(2)) == VecZ{0, 1, 2});
  // Reflection formula r_v(x) = x - 2<v,x>v for all generators.
  for (Generator g = 1; g <= 3; ++g) {
    VecZ v = simple_root(g);
    VecZ x{5, -2, 7};
    VecZ expect = x - v * (2 * inner(v, x));
    CHECK(act(ReducedWord{g}, x) == expect);
  }
}

TEST_CASE("bilinear form and quadratic form") {
  CHECK(inner(simple_root(1), simple_root(1)) == 1);
  CHECK(inner(simple_root(1), simple_root(2)) == -1);
  CHECK(quad(VecZ{1, 1, 0}) == 0);  // Q(a1 + a2) = 0
  CHECK(quad(VecZ{2, 1, 0}) == 1);
  // Q(x a1 + y a2) = (x - y)^2
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      CHECK(quad(VecZ{x, y, 0}) == Int(x - y) * Int(x - y));
  // The action preserves the form.
  ReducedWord w{1, 2, 3, 1};
  VecZ a{1, 2, 3}, b{-1, 0, 4};
  CHECK(inner(act(w, a), act(w, b)) == inner(a, b));
}

TEST_CASE("positive_root_of_edge") {
  CHECK(positive_root_of_edge(ReducedWord{}, 1) == VecZ{1, 0, 0});
  CHECK(positive_root_of_edge(ReducedWord{1}, 2) == VecZ{2, 1, 0});
  CHECK(positive_root_of_edge(ReducedWord{1, 2}, 1) == VecZ{3, 2, 0});
  CHECK_THROWS_AS(positive_root_of_edge(ReducedWord{1}, 1), std::invalid_argument);
}

TEST_CASE("inversion sets match the geodesic") {
  CHECK(inversion_set(ReducedWord{}).empty());
  CHECK(inversion_set(ReducedWord{1}) == std::vector<VecZ>{{1, 0, 0}});
  CHECK(inversion_set(ReducedWord{1, 2}) == std::vector<VecZ>{{1, 0, 0}, {2, 1, 0}});

  // Matrix route agrees with the path route for short words.
  RootTable t = RootTable::by_depth(5);
  std::vector<ReducedWord> words{{1, 2, 1}, {2, 3, 1, 2}, {1, 3, 1, 3, 1}};
  for (const auto& w : words) {
    auto path = inversion_set(w);
    std::set<VecZ> path_set(path.begin(), path.end());
    CHECK(path_set.size() == w.length());
    std::size_t count = 0;
    for (const Root& r : t) {
      bool m = is_inversion(w, r.vec);
      CHECK(m == (path_set.count(r.vec) > 0));
      count += m;
    }
    CHECK(count == w.length());
  }
}

TEST_CASE("enumeration counts and layers") {
  auto out = enumerate_roots(2);
  CHECK(out.size() == 9);
  RootTable t1 = RootTable::by_depth(1);
  CHECK(t1.size() == 3);
  RootTable t2 = RootTable::by_depth(2);
  std::multiset<Int> hs;
  for (const Root& r : t2)
    if (r.depth == 2) hs.insert(r.height);
  CHECK(hs.size() == 6);
  CHECK(*hs.begin() == 3);
  CHECK(*hs.rbegin() == 3);  // all six depth-2 roots have height 3
  for (int d = 1; d <= 8; ++d) {
    RootTable t = RootTable::by_depth(d);
    CHECK(static_cast<long long>(t.size()) == 3 * ((1LL << d) - 1));
  }
}

TEST_CASE("height-pruned enumeration agrees with depth filtering") {
  RootTable pruned = RootTable::by_height(9);
  RootTable deep = RootTable::by_depth(6);  // heights at depth 6 exceed 9
  std::set<VecZ> expect;
  for (const Root& r : deep)
    if (r.height <= 9) expect.insert(r.vec);
  std::set<VecZ> got;
  for (const Root& r : pruned) got.insert(r.vec);
  CHECK(got == expect);
  // Minimal heights grow with depth, so the pruned table is complete.
  for (const Root& r : pruned) CHECK(r.height <= 9);
}

TEST_CASE("roots are fresh and Q-normalized for depth <= 10") {
  RootTable t = RootTable::by_depth(10);
  CHECK(t.size() == 3069);
  for (const Root& r : t) {
    CHECK(quad(r.vec) == 1);
    CHECK(all_nonneg(r.vec));
    if (r.parent >= 0) CHECK(t[r.parent].height < r.height);
  }
}
