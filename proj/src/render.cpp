#include "u3/render.hpp"

#include <charconv>
#include <cmath>

namespace u3 {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt6 = 2.449489742783178;
constexpr double kDiskRadius = 0.4082482904638631;  // sqrt(1/6)

struct Canvas {
  double cx, cy, scale;

  /// Isometric chart of A centered at O; Y points up on screen.
  std::pair<double, double> map(double x, double y, double z) const {
    double dx = x - 1.0 / 3, dy = y - 1.0 / 3, dz = z - 1.0 / 3;
    double X = (dx - dy) / kSqrt2;
    double Y = (dx + dy - 2 * dz) / kSqrt6;
    return {cx + X * scale, cy - Y * scale};
  }
  std::pair<double, double> map(const AffinePoint& p) const {
    return map(p.v.x.convert_to<double>(), p.v.y.convert_to<double>(), p.v.z.convert_to<double>());
  }
};

std::string fixed4(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 4);
  return std::string(buf, end);
}

void line_elem(std::string& svg, const Canvas& cv, const AffinePoint& a, const AffinePoint& b,
               const std::string& cls, const std::string& color, double width) {
  auto [x1, y1] = cv.map(a);
  auto [x2, y2] = cv.map(b);
  svg += "<line class=\"" + cls + "\" x1=\"" + fixed4(x1) + "\" y1=\"" + fixed4(y1) + "\" x2=\"" +
         fixed4(x2) + "\" y2=\"" + fixed4(y2) + "\" stroke=\"" + color + "\" stroke-width=\"" +
         fixed4(width) + "\"/>\n";
}

/// Vertex embedding v_w = (w . O) rescaled into A; exact rationals.
AffinePoint vertex_point(const ReducedWord& w) {
  VecQ v = act(w, disk_center().v);
  Rat s = v.sum();
  return {{v.x / s, v.y / s, v.z / s}};
}

/// Ideal point of a face: tangency point of its boundary line (exact).
AffinePoint face_ideal_point(const Face& f) {
  return tangency_point(line_through(rescale(boundary_root(f, 1)), rescale(boundary_root(f, -1))));
}

/// Circle intersections of a chord line, in doubles (render-only).
bool chord_endpoints(const AffLine& L, double out[4]) {
  LineParam lp = parametrize(L);
  double a = lp.a.convert_to<double>(), b = lp.b.convert_to<double>(), c = lp.c.convert_to<double>();
  double disc = b * b - 4 * a * c;
  if (disc < 0) return false;
  double r = std::sqrt(disc);
  double t1 = (-b - r) / (2 * a), t2 = (-b + r) / (2 * a);
  auto at = [&](double t, int k) {
    out[k] = lp.base.v.x.convert_to<double>() + t * lp.dir.x.convert_to<double>();
    out[k + 1] = lp.base.v.y.convert_to<double>() + t * lp.dir.y.convert_to<double>();
  };
  at(t1, 0);
  at(t2, 2);
  return true;
}

}  // namespace

std::string render_svg(const RenderSpec& spec, const RootTable& table, const ColorFn* color,
                       const SnakePair* snakes) {
  const double margin = 0.92;
  Canvas cv{spec.width / 2.0, spec.height / 2.0,
            std::min(spec.width, spec.height) / 2.0 * margin / (2 * kDiskRadius)};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Triangle Conv(Delta).
  for (auto [a, b] : {std::pair{1, 2}, {2, 3}, {3, 1}})
    line_elem(svg, cv, rescale(simple_root(a)), rescale(simple_root(b)), "triangle", "#bbbbbb", 1.0);

  // Boundary circle.
  svg += "<circle class=\"disk\" cx=\"" + fixed4(cv.cx) + "\" cy=\"" + fixed4(cv.cy) + "\" r=\"" +
         fixed4(kDiskRadius * cv.scale) + "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1.5\"/>\n";

  if (spec.tessellation) {
    for (const Root& r : table) {
      double q[4];
      if (!chord_endpoints(make_line(r.vec), q)) continue;
      auto [x1, y1] = cv.map(q[0], q[1], 1 - q[0] - q[1]);
      auto [x2, y2] = cv.map(q[2], q[3], 1 - q[2] - q[3]);
      svg += "<line class=\"chord\" x1=\"" + fixed4(x1) + "\" y1=\"" + fixed4(y1) + "\" x2=\"" +
             fixed4(x2) + "\" y2=\"" + fixed4(y2) + "\" stroke=\"#dddddd\" stroke-width=\"0.7\"/>\n";
    }
  }

  if (spec.cayley) {
    for (const Root& r : table) {
      std::string cls = "edge", col = "#888888";
      if (color) {
        auto c = (*color)(r.vec);
        if (c) {
          cls = *c == Color::red ? "edge red" : "edge blue";
          col = *c == Color::red ? spec.red : spec.blue;
        }
      }
      line_elem(svg, cv, vertex_point(r.below), vertex_point(r.below.times(r.gen)), cls, col, 1.8);
    }
  }

  if (spec.rescaled_roots) {
    for (const Root& r : table) {
      auto [x, y] = cv.map(rescale(r.vec));
      svg += "<circle class=\"root\" cx=\"" + fixed4(x) + "\" cy=\"" + fixed4(y) +
             "\" r=\"2.2\" fill=\"#555555\"/>\n";
    }
  }

  if (spec.snakes && snakes) {
    for (const auto* segs : {&snakes->s1, &snakes->s2}) {
      if (segs->empty()) continue;
      std::string pts;
      auto add = [&](const AffinePoint& p) {
        auto [x, y] = cv.map(p);
        if (!pts.empty()) pts += ' ';
        pts += fixed4(x) + "," + fixed4(y);
      };
      for (const SnakeSegment& s : *segs) {
        AffinePoint from_pt = vertex_point(s.from);
        AffinePoint ideal = face_ideal_point(s.face);
        add(from_pt);
        if (s.to) {
          // Route through a point pulled toward the face's ideal vertex;
          // cosmetic only.
          AffinePoint to_pt = vertex_point(*s.to);
          AffinePoint via{{(from_pt.v.x + to_pt.v.x + ideal.v.x) / 3,
                           (from_pt.v.y + to_pt.v.y + ideal.v.y) / 3,
                           (from_pt.v.z + to_pt.v.z + ideal.v.z) / 3}};
          add(via);
          if (&s == &segs->back()) add(to_pt);
        } else {
          add(ideal);
        }
      }
      svg += "<polyline class=\"snake\" points=\"" + pts + "\" fill=\"none\" stroke=\"" +
             spec.green + "\" stroke-width=\"2.5\"/>\n";
    }
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace u3
