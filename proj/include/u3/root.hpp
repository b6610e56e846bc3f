#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "u3/vec.hpp"
#include "u3/word.hpp"

namespace u3 {

/// Positive root together with its position in the Cayley tree.
/// The edge it labels is (below, below . s_gen), oriented away from the
/// identity vertex, and the root vector is below . alpha_gen.
struct Root {
  VecZ vec;
  Int height;        // coordinate sum x+y+z
  int depth = 0;     // BFS layer = length(below) + 1
  int parent = -1;   // index of the edge below this one, -1 for simple roots
  ReducedWord below; // shallow endpoint of the edge
  Generator gen = 0;
};

/// positive_root_of_edge: the root labeling the edge (w, w.s_i).
/// Rejects edges oriented toward the identity (length must go up).
inline VecZ positive_root_of_edge(const ReducedWord& w, Generator i) {
  if (!w.empty() && w.last() == i)
    throw std::invalid_argument("edge (w, w.s_i) is oriented toward the identity; use the shallow endpoint");
  return act(w, simple_root(i));
}

/// Inversion set of w computed as the edge labels on the tree path
/// from the identity to w. |result| = length(w).
inline std::vector<VecZ> inversion_set(const ReducedWord& w) {
  std::vector<VecZ> inv;
  inv.reserve(w.length());
  // cols[j] = (current prefix) . alpha_{j+1}, updated one letter at a time.
  VecZ cols[3] = {simple_root(1), simple_root(2), simple_root(3)};
  for (std::size_t k = 0; k < w.length(); ++k) {
    const int g = w.letter(k) - 1;
    inv.push_back(cols[g]);
    // Multiply the prefix on the right by s_g: the g-th column flips sign,
    // the other columns gain twice the g-th.
    for (int j = 0; j < 3; ++j)
      if (j != g) cols[j] = cols[j] + cols[g] * Int(2);
    cols[g] = -cols[g];
  }
  return inv;
}

/// Membership test via the matrix action: beta in Inv(w) iff w^-1 . beta
/// is a negative root.
inline bool is_inversion(const ReducedWord& w, const VecZ& beta) {
  return all_nonpos(act(w.inverse(), beta));
}

/// Breadth-first enumeration of the Cayley tree edges (= positive roots).
///
/// Depth-bounded tables hold the full layers 1..max_depth; height-bounded
/// tables prune a subtree as soon as the edge root's height exceeds the
/// bound. Pruning is licensed by strict height monotonicity along the
/// tree, which is asserted on every parent/child pair actually generated;
/// a violation throws, and enumerate_roots falls back to the unpruned
/// enumeration (which needs a depth bound to terminate).
class RootTable {
 public:
  /// All roots of depth <= max_depth (3 * 2^(d-1) per layer d).
  static RootTable by_depth(int max_depth) {
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
    return RootTable(max_depth, std::nullopt);
  }

  /// All roots of height <= max_height, at any depth.
  static RootTable by_height(const Int& max_height) {
    if (max_height < 1) throw std::invalid_argument("max_height must be >= 1");
    return RootTable(std::nullopt, max_height);
  }

  static RootTable by_depth_and_height(int max_depth, const Int& max_height) {
    return RootTable(max_depth, max_height);
  }

  std::size_t size() const { return roots_.size(); }
  const Root& operator[](std::size_t i) const { return roots_[i]; }

  int find(const VecZ& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
  }

  bool contains(const VecZ& v) const { return index_.count(v) != 0; }

  const Root& at(const VecZ& v) const {
    int i = find(v);
    if (i < 0) throw std::out_of_range("root not present in this truncation");
    return roots_[i];
  }

  /// Edge endpoints (w, w.s_i) for a recorded root.
  std::pair<ReducedWord, ReducedWord> endpoints(const VecZ& v) const {
    const Root& r = at(v);
    return {r.below, r.below.times(r.gen)};
  }

  const std::optional<int>& depth_bound() const { return max_depth_; }
  const std::optional<Int>& height_bound() const { return max_height_; }

  auto begin() const { return roots_.begin(); }
  auto end() const { return roots_.end(); }

 private:
  RootTable(std::optional<int> max_depth, std::optional<Int> max_height)
      : max_depth_(max_depth), max_height_(max_height) {
    std::vector<int> frontier;
    for (Generator g = 1; g <= 3; ++g) {
      Root r{simple_root(g), 1, 1, -1, ReducedWord{}, g};
      if (max_height_ && r.height > *max_height_) continue;
      frontier.push_back(insert(std::move(r)));
    }
    int depth = 2;
    while (!frontier.empty() && (!max_depth_ || depth <= *max_depth_)) {
      std::vector<int> next;
      for (int pi : frontier) {
        const ReducedWord deep = roots_[pi].below.times(roots_[pi].gen);
        const Int parent_height = roots_[pi].height;
        for (Generator g = 1; g <= 3; ++g) {
          if (g == roots_[pi].gen) continue;
          Root r{act(deep, simple_root(g)), 0, depth, pi, deep, g};
          r.height = r.vec.sum();
          if (r.height <= parent_height)
            throw std::logic_error("height monotonicity violated in root enumeration");
          if (max_height_ && r.height > *max_height_) continue;
          next.push_back(insert(std::move(r)));
        }
      }
      frontier = std::move(next);
      ++depth;
    }
  }

  int insert(Root r) {
    int id = static_cast<int>(roots_.size());
    auto [it, fresh] = index_.emplace(r.vec, id);
    if (!fresh) throw std::logic_error("duplicate root in enumeration; edge/root bijection broken");
    roots_.push_back(std::move(r));
    return id;
  }

  std::vector<Root> roots_;
  std::map<VecZ, int> index_;
  std::optional<int> max_depth_;
  std::optional<Int> max_height_;
};

/// enumerate_roots as (root, parent-or-none) pairs, per the module contract.
inline std::vector<std::pair<VecZ, std::optional<VecZ>>> enumerate_roots(
    int max_depth, const std::optional<Int>& max_height = std::nullopt) {
  RootTable t = max_height ? RootTable::by_depth_and_height(max_depth, *max_height)
                           : RootTable::by_depth(max_depth);
  std::vector<std::pair<VecZ, std::optional<VecZ>>> out;
  out.reserve(t.size());
  for (const Root& r : t)
    out.emplace_back(r.vec, r.parent >= 0 ? std::optional<VecZ>(t[r.parent].vec) : std::nullopt);
  return out;
}

}  // namespace u3
