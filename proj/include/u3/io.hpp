#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "u3/biclosed.hpp"
#include "u3/snakes.hpp"

namespace u3 {

using json = nlohmann::json;

// Roots serialize as exact integer triples [x,y,z], words as arrays of
// generator indices, lines as primitive integer normals [a,b,c], affine
// points as exact rational strings "p/q".

json to_json(const VecZ& v);
VecZ vec_from_json(const json& j);

json to_json(const ReducedWord& w);
ReducedWord word_from_json(const json& j);

json to_json(const AffLine& L);
AffLine line_from_json(const json& j);

json to_json(const AffinePoint& p);

json to_json(const Face& f);

json to_json(const RootSet& s);
RootSet rootset_from_json(const json& j);

json to_json(const BiclosedDescriptor& d);
BiclosedDescriptor descriptor_from_json(const json& j);

/// Snake trace: ordered segments {"face":..., "from":[...], "to":[...]|"boundary"}.
json snake_trace_json(const SnakePair& sp);

/// Input accepted by the snake pipeline: a descriptor, or an explicit
/// bipartition {"kind":"bipartition","depth":D,"red":[[x,y,z],...]}.
struct SnakeInput {
  std::optional<BiclosedDescriptor> descriptor;
  std::optional<std::pair<int, std::vector<VecZ>>> bipartition;
};

SnakeInput snake_input_from_json(const json& j);

}  // namespace u3
