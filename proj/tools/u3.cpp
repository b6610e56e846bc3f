// u3: exact root-system and extended-weak-order computations for the
// rank-3 universal Coxeter group.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "u3/checks.hpp"
#include "u3/io.hpp"
#include "u3/render.hpp"

namespace {

using namespace u3;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  json j;
  in >> j;
  return j;
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << body;
}

RootTable table_for(int max_depth, long long max_height) {
  if (max_height > 0 && max_depth > 0)
    return RootTable::by_depth_and_height(max_depth, Int(max_height));
  if (max_height > 0) return RootTable::by_height(Int(max_height));
  if (max_depth <= 0) max_depth = 6;
  return RootTable::by_depth(max_depth);
}

int cmd_roots(int max_depth, long long max_height, const std::string& format,
              const std::string& out) {
  RootTable t = table_for(max_depth, max_height);
  if (format == "tsv") {
    std::string body = "x\ty\tz\tdepth\theight\tbelow\tgen\n";
    for (const Root& r : t) {
      body += r.vec.x.str() + "\t" + r.vec.y.str() + "\t" + r.vec.z.str() + "\t" +
              std::to_string(r.depth) + "\t" + r.height.str() + "\t" +
              to_json(r.below).dump() + "\t" + std::to_string(r.gen) + "\n";
    }
    write_output(out, body);
    return 0;
  }
  json roots = json::array();
  for (const Root& r : t) {
    auto [f1, f2] = faces_of_edge(r);
    roots.push_back({{"root", to_json(r.vec)},
                     {"depth", r.depth},
                     {"height", r.height.convert_to<long long>()},
                     {"edge", {to_json(r.below), to_json(r.below.times(r.gen))}},
                     {"faces", {to_json(f1), to_json(f2)}}});
  }
  write_output(out, json(roots).dump(2) + "\n");
  return 0;
}

int cmd_inv(const std::string& word_text, const std::string& out) {
  ReducedWord w = ReducedWord::parse(word_text);
  json roots = json::array();
  for (const VecZ& v : inversion_set(w)) roots.push_back(to_json(v));
  json j{{"word", to_json(w)}, {"length", w.length()}, {"inversions", roots}};
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_closure(const std::string& input, bool two, bool convex, long long N, long long M,
                const std::string& out) {
  json j = load_json(input);
  RootSet X = rootset_from_json(j);
  if (M <= 0) M = 3 * N;
  json result;
  if (two) {
    ConePlanes planes(RootTable::by_height(Int(M)));
    RootSet c = two_closure(X.roots, planes, Int(M));
    std::vector<VecZ> atN;
    for (const VecZ& v : c.roots)
      if (v.sum() <= N) atN.push_back(v);
    result["two_closure"] = to_json(RootSet::of(std::move(atN), Int(N)));
  }
  if (convex) {
    ConePlanes planes(RootTable::by_height(Int(N)));
    result["convex_closure"] = to_json(convex_closure(X.roots, planes, Int(N)));
  }
  write_output(out, result.dump(2) + "\n");
  return 0;
}

int cmd_join(const std::vector<std::string>& inputs, long long N, long long M, bool verify,
             const std::string& out) {
  if (M <= 0) M = 3 * N;
  std::vector<RootSet> sets;
  RootTable tN = RootTable::by_height(Int(N));
  for (const std::string& path : inputs) {
    json j = load_json(path);
    if (j.contains("kind"))
      sets.push_back(realize(descriptor_from_json(j), tN));
    else
      sets.push_back(rootset_from_json(j));
  }
  ConePlanes planes_m(RootTable::by_height(Int(M)));
  ConePlanes planes_2m(RootTable::by_height(Int(2 * M)));
  JoinResult jr = join(sets, planes_m, planes_2m, Int(N), Int(M), verify);
  json result{{"join", to_json(jr.set)}, {"stable", jr.stable}};
  if (!jr.stable) result["note"] = "unconfirmed at N; increase M";
  if (jr.convex_agrees) result["convex_agrees"] = *jr.convex_agrees;
  write_output(out, result.dump(2) + "\n");
  if (verify && jr.convex_agrees && !*jr.convex_agrees) return kExitFailure;
  return 0;
}

int cmd_snake(const std::string& input, int depth, int budget, const std::string& svg_out,
              const std::string& out) {
  json j = load_json(input);
  SnakeInput in = snake_input_from_json(j);
  RootTable t = RootTable::by_depth(depth);

  ColorFn fn;
  std::optional<Bipartition> bp;
  std::optional<DescriptorOracle> oracle;
  if (in.descriptor) {
    validate(*in.descriptor, t);
    oracle = make_oracle(*in.descriptor, t);
    fn = oracle->fn();
  } else {
    bp = Bipartition{in.bipartition->first,
                     std::set<VecZ>(in.bipartition->second.begin(), in.bipartition->second.end()),
                     &t};
    fn = bp->fn();
  }

  SnakePair sp = build_snake_pair(fn, budget);
  json rep = snake_trace_json(sp);

  if (sp.outcome == SnakePair::Outcome::meet) {
    auto lines = in.descriptor ? weak_sep_lines(*in.descriptor)
                               : weak_sep_lines(BiclosedDescriptor::finite(*sp.meet_vertex));
    rep["enclosed_edges"] = sp.meet_vertex->length();
    json verified = json::array();
    std::vector<VecZ> R = inversion_set(*sp.meet_vertex), B;
    for (const Root& r : t)
      if (std::find(R.begin(), R.end(), r.vec) == R.end()) B.push_back(r.vec);
    for (const AffLine& L : lines.lines) {
      SeparationReport sr = verify_weak_separation(R, B, L);
      verified.push_back({{"line", to_json(L)}, {"ok", sr.ok}});
      if (!sr.ok) rep["separation"] = "FAILED";
    }
    rep["weak_sep_lines"] = verified;
    if (!rep.contains("separation")) rep["separation"] = "verified";
  } else if (in.descriptor && in.descriptor->kind == BiclosedDescriptor::Kind::infinite) {
    const AffLine& L = in.descriptor->line;
    rep["h_snake"] = to_json(L);
    std::vector<VecZ> R, B;
    for (const Root& r : t)
      (oracle->color(r.vec) == Color::red ? R : B).push_back(r.vec);
    SeparationReport sr = verify_weak_separation(R, B, L);
    rep["separation"] = sr.ok ? "verified" : "FAILED";
    rep["on_line_roots"] = sr.on_line_red.size() + sr.on_line_blue.size();
  }

  if (!svg_out.empty()) {
    RenderSpec spec;
    spec.depth = depth;
    SnakePair* spp = &sp;
    std::string svg = render_svg(spec, t, &fn, spp);
    write_output(svg_out, svg);
  }
  write_output(out, rep.dump(2) + "\n");
  return rep.contains("separation") && rep["separation"] == "FAILED" ? kExitFailure : 0;
}

int cmd_check(const std::string& property, const CheckOptions& opts) {
  CheckResult r = run_check(property, opts);
  json j{{"property", r.name},
         {"pass", r.pass},
         {"checked", r.checked},
         {"seconds", r.seconds},
         {"detail", r.detail}};
  if (!r.failures.empty()) j["failures"] = r.failures;
  std::cout << j.dump(2) << "\n";
  return r.pass ? 0 : kExitFailure;
}

int cmd_render(int depth, bool tessellation, bool cayley, bool roots, const std::string& input,
               const std::string& out) {
  RenderSpec spec;
  spec.depth = depth;
  spec.tessellation = tessellation;
  spec.cayley = cayley;
  spec.rescaled_roots = roots;
  RootTable t = RootTable::by_depth(depth);
  std::optional<DescriptorOracle> oracle;
  ColorFn fn;
  if (!input.empty()) {
    SnakeInput in = snake_input_from_json(load_json(input));
    if (in.descriptor) {
      oracle = make_oracle(*in.descriptor, t);
      fn = oracle->fn();
    } else {
      auto red = std::make_shared<std::set<VecZ>>(in.bipartition->second.begin(),
                                                  in.bipartition->second.end());
      fn = [red](const VecZ& v) {
        return std::optional<Color>(red->count(v) ? Color::red : Color::blue);
      };
    }
  }
  std::string svg = render_svg(spec, t, fn ? &fn : nullptr, nullptr);
  write_output(out, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the root system and extended weak order of the rank-3 "
               "universal Coxeter group"};
  app.require_subcommand(1);

  // roots
  auto* roots = app.add_subcommand("roots", "Enumerate positive roots with tree data");
  int r_depth = 0;
  long long r_height = 0;
  std::string r_format = "json", r_out;
  roots->add_option("--max-depth", r_depth, "Depth bound (default 6 when no height bound)");
  roots->add_option("--max-height", r_height, "Height bound (prunes subtrees)");
  roots->add_option("--format", r_format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  roots->add_option("--out", r_out, "Output file (default stdout)");

  // inv
  auto* inv = app.add_subcommand("inv", "Inversion set of a word");
  std::string i_word, i_out;
  inv->add_option("word", i_word, "Word over {1,2,3}, e.g. 121")->required();
  inv->add_option("--out", i_out, "Output file");

  // closure
  auto* closure = app.add_subcommand("closure", "2-closure / convex closure of a root set");
  std::string c_input, c_out;
  bool c_two = false, c_convex = false;
  long long c_N = 20, c_M = 0;
  closure->add_option("--input", c_input, "RootSet JSON file")->required();
  closure->add_flag("--two", c_two, "Compute the 2-closure");
  closure->add_flag("--convex", c_convex, "Compute the convex closure");
  closure->add_option("-N", c_N, "Target height bound (default 20)");
  closure->add_option("-M", c_M, "Work bound for the 2-closure (default 3N)");
  closure->add_option("--out", c_out, "Output file");

  // join
  auto* joinc = app.add_subcommand("join", "Join of biclosed sets in the extended weak order");
  std::vector<std::string> j_inputs;
  long long j_N = 20, j_M = 0;
  bool j_verify = false;
  std::string j_out;
  joinc->add_option("--inputs", j_inputs, "RootSet or descriptor JSON files")->required();
  joinc->add_option("-N", j_N, "Target height bound (default 20)");
  joinc->add_option("-M", j_M, "Work bound (default 3N)");
  joinc->add_flag("--verify", j_verify, "Also compute the convex closure and compare");
  joinc->add_option("--out", j_out, "Output file");

  // snake
  auto* snake = app.add_subcommand("snake", "Build the pair of snakes for a coloring");
  std::string s_input, s_svg, s_out;
  int s_depth = 8, s_budget = 24;
  snake->add_option("--input", s_input, "Descriptor or bipartition JSON file")->required();
  snake->add_option("--depth", s_depth, "Truncation depth (default 8)");
  snake->add_option("--budget", s_budget, "Depth budget for snake following (default 24)");
  snake->add_option("--svg", s_svg, "Write an SVG figure to this file");
  snake->add_option("--out", s_out, "Report output file");

  // check
  auto* check = app.add_subcommand("check", "Run a named property suite");
  std::string k_prop;
  CheckOptions k_opts;
  int k_depth = 0, k_samples = 0, k_window = 0, k_budget = 0;
  long long k_N = 0, k_M = 0;
  std::uint64_t k_seed = 7;
  check->add_option("property", k_prop, "One of the registered properties")->required();
  check->add_option("--depth", k_depth, "Depth bound");
  check->add_option("--samples", k_samples, "Sample count");
  check->add_option("--window", k_window, "Face window size");
  check->add_option("--budget", k_budget, "Snake depth budget");
  check->add_option("-N", k_N, "Height bound N");
  check->add_option("-M", k_M, "Work bound M");
  check->add_option("--seed", k_seed, "Random seed (default 7)");

  // render
  auto* render = app.add_subcommand("render", "Render the disk, tessellation and Cayley tree");
  int d_depth = 4;
  bool d_tess = false, d_cayley = true, d_roots = false;
  std::string d_input, d_out;
  render->add_option("--depth", d_depth, "Truncation depth (default 4)");
  render->add_flag("--tessellation", d_tess, "Draw tessellation chords");
  render->add_flag("!--no-cayley", d_cayley, "Skip the Cayley edges");
  render->add_flag("--rescaled-roots", d_roots, "Draw rescaled root dots");
  render->add_option("--input", d_input, "Optional coloring (descriptor or bipartition)");
  render->add_option("--out", d_out, "Output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (roots->parsed()) return cmd_roots(r_depth, r_height, r_format, r_out);
    if (inv->parsed()) return cmd_inv(i_word, i_out);
    if (closure->parsed()) {
      if (!c_two && !c_convex) {
        std::cerr << "usage error: pass --two and/or --convex\n";
        return kExitUsage;
      }
      return cmd_closure(c_input, c_two, c_convex, c_N, c_M, c_out);
    }
    if (joinc->parsed()) return cmd_join(j_inputs, j_N, j_M, j_verify, j_out);
    if (snake->parsed()) return cmd_snake(s_input, s_depth, s_budget, s_svg, s_out);
    if (check->parsed()) {
      if (k_depth > 0) k_opts.depth = k_depth;
      if (k_samples > 0) k_opts.samples = k_samples;
      if (k_window > 0) k_opts.window = k_window;
      if (k_budget > 0) k_opts.budget = k_budget;
      if (k_N > 0) k_opts.N = k_N;
      if (k_M > 0) k_opts.M = k_M;
      k_opts.seed = k_seed;
      return cmd_check(k_prop, k_opts);
    }
    if (render->parsed()) return cmd_render(d_depth, d_tess, d_cayley, d_roots, d_input, d_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
