#pragma once

#include <string>

#include "u3/biclosed.hpp"
#include "u3/snakes.hpp"

namespace u3 {

/// Figure settings. Output is deterministic: identical inputs give
/// byte-identical SVG.
struct RenderSpec {
  int depth = 4;
  bool tessellation = false;
  bool cayley = true;
  bool snakes = true;
  bool rescaled_roots = false;
  int width = 840;
  int height = 840;
  std::string red = "#d62728";
  std::string blue = "#1f77b4";
  std::string green = "#2ca02c";
};

/// Renders the disk, the triangle Conv(Delta), optional tessellation
/// chords, colored Cayley edges (when a coloring is given), snake
/// polylines and rescaled root dots. All geometry is exact until the
/// final conversion to fixed-precision decimals here.
std::string render_svg(const RenderSpec& spec, const RootTable& table,
                       const ColorFn* color = nullptr, const SnakePair* snakes = nullptr);

}  // namespace u3
