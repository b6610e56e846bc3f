#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "u3/cayley.hpp"

using namespace u3;

TEST_CASE("edge endpoints") {
  RootTable t = RootTable::by_depth(4);
  auto [a, b] = t.endpoints(VecZ{0, 1, 0});
  CHECK(a == ReducedWord{});
  CHECK(b == ReducedWord{2});
  auto [c, d] = t.endpoints(VecZ{2, 1, 0});
  CHECK(c == ReducedWord{1});
  CHECK(d == ReducedWord{1, 2});
  auto [e, f] = t.endpoints(VecZ{3, 2, 0});
  CHECK(e == ReducedWord{1, 2});
  CHECK(f == ReducedWord{1, 2, 1});
  CHECK_THROWS_AS(t.endpoints(VecZ{7, 7, 7}), std::out_of_range);
}

TEST_CASE("faces of an edge") {
  RootTable t = RootTable::by_depth(4);

  auto [f1, f2] = faces_of_edge(t.at(VecZ{1, 0, 0}));
  CHECK(f1 == Face{{}, 1, 2});
  CHECK(f2 == Face{{}, 1, 3});
  CHECK(relatively_simple_in(t.at(VecZ{1, 0, 0}), f1));
  CHECK(relatively_simple_in(t.at(VecZ{1, 0, 0}), f2));

  auto [g1, g2] = faces_of_edge(t.at(VecZ{2, 1, 0}));
  CHECK(g1 == Face{{}, 1, 2});
  CHECK(g2 == Face{ReducedWord{1}, 2, 3});
  CHECK(!relatively_simple_in(t.at(VecZ{2, 1, 0}), g1));
  CHECK(relatively_simple_in(t.at(VecZ{2, 1, 0}), g2));

  auto [h1, h2] = faces_of_edge(t.at(VecZ{3, 2, 0}));
  CHECK(h1 == Face{{}, 1, 2});
  CHECK(h2 == Face{ReducedWord{1, 2}, 1, 3});
  CHECK(relatively_simple_in(t.at(VecZ{3, 2, 0}), h2));
}

TEST_CASE("boundary windows") {
  Face f{{}, 1, 2};
  auto win = boundary_window(f, 2);
  REQUIRE(win.size() == 4);
  CHECK(win[0].pos == -2);
  CHECK(win[0].root == VecZ{1, 2, 0});
  CHECK(win[1].pos == -1);
  CHECK(win[1].root == VecZ{0, 1, 0});
  CHECK(win[2].pos == 1);
  CHECK(win[2].root == VecZ{1, 0, 0});
  CHECK(win[3].pos == 2);
  CHECK(win[3].root == VecZ{2, 1, 0});
  CHECK(win[2].from == ReducedWord{});
  CHECK(win[2].to == ReducedWord{1});
  CHECK(win[3].from == ReducedWord{1});
  CHECK(win[3].to == ReducedWord{1, 2});

  Face g{ReducedWord{3}, 1, 2};
  auto gwin = boundary_window(g, 1);
  CHECK(gwin[1].root == VecZ{1, 0, 2});
  CHECK(gwin[0].root == VecZ{0, 1, 2});
}

TEST_CASE("window roots are collinear in the stated order") {
  for (Face f : {Face{{}, 1, 2}, Face{ReducedWord{3}, 1, 2}, Face{ReducedWord{1, 3}, 2, 3}}) {
    auto win = boundary_window(f, 5);
    AffLine L = line_through(rescale(boundary_root(f, 1)), rescale(boundary_root(f, -1)));
    CHECK(classify_line(L) == DiskClass::tangent);
    LineParam lp = parametrize(L);
    // All rescaled window roots on the line, ordered -1, -2, ..., 2, 1.
    std::vector<Rat> params;
    for (const WindowEntry& e : win) {
      CHECK(inner(rescale(e.root).v, L.normal) == 0);
      params.push_back(lp.param_of(rescale(e.root)));
    }
    // Window order is -5..-1, 1..5; the line order keys are 1/pos.
    std::vector<std::pair<Rat, Rat>> keyed;
    for (std::size_t i = 0; i < win.size(); ++i)
      keyed.emplace_back(Rat(1, win[i].pos), params[i]);
    std::sort(keyed.begin(), keyed.end());
    bool increasing = true, decreasing = true;
    for (std::size_t i = 0; i + 1 < keyed.size(); ++i) {
      if (keyed[i].second >= keyed[i + 1].second) increasing = false;
      if (keyed[i].second <= keyed[i + 1].second) decreasing = false;
    }
    CHECK((increasing || decreasing));
  }
}

TEST_CASE("windows extend consistently") {
  Face f{ReducedWord{2}, 1, 3};
  auto w3 = boundary_window(f, 3), w5 = boundary_window(f, 5);
  // w3 is the middle slice of w5.
  for (const WindowEntry& e : w3) {
    bool found = false;
    for (const WindowEntry& e5 : w5)
      if (e5.pos == e.pos && e5.root == e.root && e5.from == e.from && e5.to == e.to) found = true;
    CHECK(found);
  }
}

TEST_CASE("rank2_cone_roots: spec examples") {
  RootTable t = RootTable::by_height(25);
  PlaneIndex planes(t);
  CHECK(rank2_cone_roots(planes, VecZ{1, 0, 0}, VecZ{0, 1, 0}, 3) ==
        std::vector<VecZ>{{0, 1, 0}, {1, 0, 0}, {1, 2, 0}, {2, 1, 0}});
  CHECK(rank2_cone_roots(planes, VecZ{1, 0, 0}, VecZ{2, 1, 0}, 20) ==
        std::vector<VecZ>{{1, 0, 0}, {2, 1, 0}});
  // cone(a1, (1,2,0)) covers the standard dihedral strip except a2.
  auto got = rank2_cone_roots(planes, VecZ{1, 0, 0}, VecZ{1, 2, 0}, 20);
  std::vector<VecZ> expect;
  for (const Root& r : t)
    if (r.vec.z == 0 && r.height <= 20 && !(r.vec == VecZ{0, 1, 0})) expect.push_back(r.vec);
  std::sort(expect.begin(), expect.end());
  CHECK(got == expect);
}

TEST_CASE("cone roots contain the generators and respect heights") {
  RootTable t = RootTable::by_height(20);
  PlaneIndex planes(t);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Root& a = t[rng() % t.size()];
    const Root& b = t[rng() % t.size()];
    if (a.vec == b.vec) continue;
    auto cone = rank2_cone_roots(planes, a.vec, b.vec, 20);
    CHECK(std::binary_search(cone.begin(), cone.end(), a.vec));
    CHECK(std::binary_search(cone.begin(), cone.end(), b.vec));
    Int m = std::min(a.height, b.height);
    for (const VecZ& g : cone)
      if (!(g == a.vec) && !(g == b.vec)) CHECK(g.sum() > m);
  }
}

TEST_CASE("cone of a pair is the order interval of its plane") {
  // Justifies the interval-based closure engine against the brute-force
  // enumeration route.
  RootTable t = RootTable::by_height(30);
  PlaneIndex planes(t);
  ConePlanes cp(t);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    int ia = static_cast<int>(rng() % t.size()), ib = static_cast<int>(rng() % t.size());
    if (ia == ib) continue;
    auto brute = rank2_cone_roots(planes, t[ia].vec, t[ib].vec, 30);
    // Locate the shared plane in ConePlanes.
    int shared = -1;
    for (int p : cp.planes_of(ia))
      for (int q : cp.planes_of(ib))
        if (p == q) shared = p;
    REQUIRE(shared >= 0);
    int pa = cp.position_in(shared, ia), pb = cp.position_in(shared, ib);
    std::vector<VecZ> interval;
    for (int k = std::min(pa, pb); k <= std::max(pa, pb); ++k)
      interval.push_back(t[cp.planes()[shared].members[k]].vec);
    std::sort(interval.begin(), interval.end());
    CHECK(brute == interval);
  }
}

TEST_CASE("every pair of distinct roots spans a disk-meeting plane") {
  RootTable t = RootTable::by_depth(4);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Root& a = t[rng() % t.size()];
    const Root& b = t[rng() % t.size()];
    if (a.vec == b.vec) continue;
    CHECK(classify_line(line_spanned_by(a.vec, b.vec)) != DiskClass::exterior);
  }
}

TEST_CASE("face boundary lines are tangent, generic pairs secant") {
  RootTable t = RootTable::by_depth(6);
  for (const Root& r : t) {
    auto [f1, f2] = faces_of_edge(r);
    for (const Face& f : {f1, f2}) {
      AffLine L = line_through(rescale(boundary_root(f, 1)), rescale(boundary_root(f, -1)));
      CHECK(classify_line(L) == DiskClass::tangent);
    }
  }
}

TEST_CASE("find_face_at recovers the face of its ideal point") {
  for (Face f : {Face{{}, 1, 2}, Face{{}, 2, 3}, Face{ReducedWord{3}, 1, 2},
                 Face{ReducedWord{1, 2}, 1, 3}, Face{ReducedWord{2, 1, 3}, 1, 3}}) {
    AffLine L = line_through(rescale(boundary_root(f, 1)), rescale(boundary_root(f, -1)));
    CHECK(find_face_at(tangency_point(L)) == f);
  }
  CHECK_THROWS(find_face_at(disk_center()));
}

TEST_CASE("line systems agree between face windows and table scans") {
  Face f{{}, 1, 2};
  LineSystem via_face = LineSystem::on_face_line(f, 10);
  RootTable t = RootTable::by_height(21);
  LineSystem via_table = LineSystem::on_line(via_face.line, t);
  std::set<VecZ> a, b;
  for (const auto& [tt, v] : via_face.ordered)
    if (v.sum() <= 21) a.insert(v);
  for (const auto& [tt, v] : via_table.ordered) b.insert(v);
  CHECK(a == b);
  // Both orders ascend in parameter.
  for (std::size_t i = 0; i + 1 < via_table.ordered.size(); ++i)
    CHECK(via_table.ordered[i].first < via_table.ordered[i + 1].first);
}
