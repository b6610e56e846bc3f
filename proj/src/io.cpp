#include "u3/io.hpp"

#include <limits>
#include <stdexcept>

namespace u3 {

namespace {

long long to_ll(const Int& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::out_of_range("integer too large for JSON serialization");
  return v.convert_to<long long>();
}

std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

}  // namespace

json to_json(const VecZ& v) { return json::array({to_ll(v.x), to_ll(v.y), to_ll(v.z)}); }

VecZ vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("root must be a triple [x,y,z]");
  return {Int(j[0].get<long long>()), Int(j[1].get<long long>()), Int(j[2].get<long long>())};
}

json to_json(const ReducedWord& w) {
  json a = json::array();
  for (Generator g : w.letters()) a.push_back(g);
  return a;
}

ReducedWord word_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("word must be an array of generator indices");
  std::vector<Generator> letters;
  for (const auto& e : j) letters.push_back(e.get<int>());
  ReducedWord w{std::span<const Generator>(letters)};
  if (w.length() != letters.size()) throw std::invalid_argument("word is not reduced");
  return w;
}

json to_json(const AffLine& L) { return to_json(L.normal); }

AffLine line_from_json(const json& j) { return make_line(vec_from_json(j)); }

json to_json(const AffinePoint& p) {
  return json::array({rat_str(p.v.x), rat_str(p.v.y), rat_str(p.v.z)});
}

json to_json(const Face& f) { return {{"src", to_json(f.src)}, {"pair", {f.i, f.j}}}; }

json to_json(const RootSet& s) {
  json roots = json::array();
  for (const VecZ& v : s.roots) roots.push_back(to_json(v));
  json j{{"roots", roots}};
  if (s.height_bound) j["height_bound"] = to_ll(*s.height_bound);
  if (s.depth_bound) j["depth_bound"] = *s.depth_bound;
  return j;
}

RootSet rootset_from_json(const json& j) {
  std::vector<VecZ> roots;
  for (const auto& e : j.at("roots")) roots.push_back(vec_from_json(e));
  std::optional<Int> hb;
  std::optional<int> db;
  if (j.contains("height_bound")) hb = Int(j["height_bound"].get<long long>());
  if (j.contains("depth_bound")) db = j["depth_bound"].get<int>();
  return RootSet::of(std::move(roots), hb, db);
}

json to_json(const BiclosedDescriptor& d) {
  using Kind = BiclosedDescriptor::Kind;
  switch (d.kind) {
    case Kind::finite:
      return {{"kind", "finite"}, {"word", to_json(d.word)}};
    case Kind::cofinite:
      return {{"kind", "cofinite"}, {"word", to_json(d.word)}};
    case Kind::infinite: {
      json b = nullptr;
      if (d.boundary) {
        Rank2Biclosed r = d.boundary->canonical();
        b = {{"side", r.side == Rank2Biclosed::Side::left ? "left" : "right"},
             {"mode", r.mode == Rank2Biclosed::Mode::finite ? "finite" : "cofinite"},
             {"k", r.k}};
      }
      return {{"kind", "infinite"},
              {"line", to_json(d.line)},
              {"side", d.side == BiclosedDescriptor::HalfSide::far ? "far" : "near"},
              {"boundary", b}};
    }
  }
  throw std::logic_error("bad descriptor kind");
}

BiclosedDescriptor descriptor_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite") return BiclosedDescriptor::finite(word_from_json(j.at("word")));
  if (kind == "cofinite") return BiclosedDescriptor::cofinite(word_from_json(j.at("word")));
  if (kind != "infinite") throw std::invalid_argument("unknown descriptor kind: " + kind);

  AffLine L = line_from_json(j.at("line"));
  std::string side = j.at("side").get<std::string>();
  if (side != "far" && side != "near") throw std::invalid_argument("descriptor side must be far or near");
  std::optional<Rank2Biclosed> boundary;
  if (j.contains("boundary") && !j["boundary"].is_null()) {
    const json& b = j["boundary"];
    std::string bs = b.at("side").get<std::string>();
    std::string bm = b.at("mode").get<std::string>();
    int k = b.at("k").get<int>();
    if (k < 0) throw std::invalid_argument("boundary k must be nonnegative");
    boundary = Rank2Biclosed{bs == "left" ? Rank2Biclosed::Side::left : Rank2Biclosed::Side::right,
                             bm == "finite" ? Rank2Biclosed::Mode::finite : Rank2Biclosed::Mode::cofinite,
                             k}
                   .canonical();
  }
  return BiclosedDescriptor::infinite(
      L, side == "far" ? BiclosedDescriptor::HalfSide::far : BiclosedDescriptor::HalfSide::near,
      boundary);
}

json snake_trace_json(const SnakePair& sp) {
  auto trace = [](const std::vector<SnakeSegment>& segs) {
    json a = json::array();
    for (const SnakeSegment& s : segs) {
      json e{{"face", to_json(s.face)}, {"from", to_json(s.from)}};
      e["to"] = s.to ? to_json(*s.to) : json("boundary");
      a.push_back(e);
    }
    return a;
  };
  json j{{"snake1", trace(sp.s1)}, {"snake2", trace(sp.s2)}};
  switch (sp.outcome) {
    case SnakePair::Outcome::meet:
      j["outcome"] = "meet";
      j["meet_vertex"] = to_json(*sp.meet_vertex);
      break;
    case SnakePair::Outcome::limits:
      j["outcome"] = "limits";
      break;
    case SnakePair::Outcome::exhausted:
      j["outcome"] = "exhausted";
      j["budget"] = sp.budget;
      break;
  }
  if (sp.arc1) j["arc1"] = {{"line", to_json(sp.arc1->line)}, {"far_sign", sp.arc1->far_sign}};
  if (sp.arc2) j["arc2"] = {{"line", to_json(sp.arc2->line)}, {"far_sign", sp.arc2->far_sign}};
  return j;
}

SnakeInput snake_input_from_json(const json& j) {
  SnakeInput in;
  if (j.contains("kind") && j["kind"] == "bipartition") {
    std::vector<VecZ> red;
    for (const auto& e : j.at("red")) red.push_back(vec_from_json(e));
    in.bipartition = {j.at("depth").get<int>(), std::move(red)};
  } else {
    in.descriptor = descriptor_from_json(j);
  }
  return in;
}

}  // namespace u3
