#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "u3/io.hpp"
#include "u3/render.hpp"

using namespace u3;

TEST_CASE("root and word serialization") {
  VecZ v{3, 2, 0};
  CHECK(vec_from_json(to_json(v)) == v);
  CHECK(to_json(v).dump() == "[3,2,0]");

  ReducedWord w{1, 2, 1};
  CHECK(word_from_json(to_json(w)) == w);
  CHECK_THROWS_AS(word_from_json(json::parse("[1,1]")), std::invalid_argument);
  CHECK_THROWS_AS(word_from_json(json::parse("[4]")), std::invalid_argument);
  CHECK_THROWS_AS(vec_from_json(json::parse("[1,2]")), std::invalid_argument);
}

TEST_CASE("lines and affine points") {
  AffLine L = make_line(VecZ{2, 2, 0});
  CHECK(L.normal == VecZ{1, 1, 0});  // canonical primitive form
  CHECK(line_from_json(to_json(L)) == L);
  CHECK(to_json(rescale(VecZ{2, 1, 0})).dump() == "[\"2/3\",\"1/3\",\"0\"]");
}

TEST_CASE("descriptor round trips") {
  std::vector<BiclosedDescriptor> ds{
      BiclosedDescriptor::finite(ReducedWord{1, 2, 3}),
      BiclosedDescriptor::cofinite(ReducedWord{}),
      BiclosedDescriptor::infinite(make_line(VecZ{1, 0, 0}), BiclosedDescriptor::HalfSide::far,
                                   std::nullopt),
      BiclosedDescriptor::infinite(
          make_line(VecZ{1, 1, 0}), BiclosedDescriptor::HalfSide::near,
          Rank2Biclosed{Rank2Biclosed::Side::right, Rank2Biclosed::Mode::finite, 2}),
  };
  for (const auto& d : ds) CHECK(descriptor_from_json(to_json(d)) == d);

  json j = to_json(ds[3]);
  CHECK(j["kind"] == "infinite");
  CHECK(j["side"] == "near");
  CHECK(j["boundary"]["mode"] == "finite");
  CHECK(j["boundary"]["k"] == 2);

  CHECK_THROWS_AS(descriptor_from_json(json::parse("{\"kind\":\"weird\"}")),
                  std::invalid_argument);
}

TEST_CASE("rootset round trip") {
  RootSet s = RootSet::of({{1, 0, 0}, {2, 1, 0}}, Int(20));
  json j = to_json(s);
  CHECK(j["height_bound"] == 20);
  RootSet back = rootset_from_json(j);
  CHECK(back.roots == s.roots);
  CHECK(back.height_bound == s.height_bound);
}

TEST_CASE("snake input parsing") {
  SnakeInput d = snake_input_from_json(json::parse(R"({"kind":"finite","word":[1,2]})"));
  REQUIRE(d.descriptor.has_value());
  CHECK(d.descriptor->word == ReducedWord{1, 2});

  SnakeInput b = snake_input_from_json(
      json::parse(R"({"kind":"bipartition","depth":3,"red":[[1,0,0]]})"));
  REQUIRE(b.bipartition.has_value());
  CHECK(b.bipartition->first == 3);
  CHECK(b.bipartition->second == std::vector<VecZ>{{1, 0, 0}});
}

TEST_CASE("snake trace export") {
  RootTable t = RootTable::by_depth(6);
  RootSet rs = realize(BiclosedDescriptor::finite(ReducedWord{1, 2}), t);
  Bipartition bp{6, {rs.roots.begin(), rs.roots.end()}, &t};
  SnakePair sp = build_snake_pair(bp.fn(), 24);
  json j = snake_trace_json(sp);
  CHECK(j["outcome"] == "meet");
  CHECK(j["meet_vertex"] == json::parse("[1,2]"));
  CHECK(j["snake1"].is_array());
  for (const auto& seg : j["snake1"]) {
    CHECK(seg.contains("face"));
    CHECK(seg.contains("from"));
    CHECK(seg.contains("to"));
  }
}

TEST_CASE("SVG output is deterministic and structured") {
  RootTable t = RootTable::by_depth(4);
  RootSet rs = realize(BiclosedDescriptor::finite(ReducedWord{2, 1}), t);
  Bipartition bp{4, {rs.roots.begin(), rs.roots.end()}, &t};
  SnakePair sp = build_snake_pair(bp.fn(), 24);
  RenderSpec spec;
  spec.tessellation = true;
  spec.rescaled_roots = true;
  ColorFn fn = bp.fn();
  std::string a = render_svg(spec, t, &fn, &sp);
  std::string b = render_svg(spec, t, &fn, &sp);
  CHECK(a == b);
  CHECK(a.find("<svg") == 0);
  CHECK(a.find("class=\"disk\"") != std::string::npos);
  CHECK(a.find("class=\"snake\"") != std::string::npos);
  CHECK(a.find("class=\"edge red\"") != std::string::npos);
  CHECK(a.find("class=\"edge blue\"") != std::string::npos);
  // Uncolored render still works.
  std::string plain = render_svg(RenderSpec{}, t, nullptr, nullptr);
  CHECK(plain.find("class=\"edge\"") != std::string::npos);
}
