#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ctrlmetrics/trend.hpp"

namespace ctrlmetrics {

/// One trend prefix (L_0..L_n). `children` are indices into the next depth
/// level; `parent` into the previous one (-1 for roots).
struct PathNode {
  int state;
  double prob;
  int parent = -1;
  std::vector<int> children;
};

/// Exhaustive enumeration of the positive-probability trend prefixes up to a
/// horizon. All expectations in this library are exact sums over this tree.
/// Zero-probability branches (prob < prune threshold) are never stored.
class PathTree {
 public:
  static constexpr double kPruneThreshold = 1e-15;

  int horizon() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<PathNode>& level(int depth) const { return levels_.at(depth); }
  const PathNode& node(int depth, int idx) const { return levels_.at(depth).at(idx); }
  const std::vector<PathNode>& leaves() const { return levels_.back(); }
  int leaf_count() const { return static_cast<int>(levels_.back().size()); }

  long total_nodes() const {
    long n = 0;
    for (const auto& lv : levels_) n += static_cast<long>(lv.size());
    return n;
  }

  /// States (L_0..L_depth) along the branch through a node.
  std::vector<int> prefix_of(int depth, int idx) const {
    std::vector<int> states(depth + 1);
    int d = depth, i = idx;
    while (d >= 0) {
      states[d] = levels_[d][i].state;
      i = levels_[d][i].parent;
      --d;
    }
    return states;
  }

  friend PathTree enumerate_paths(const TrendModel& model, int horizon, long node_cap);

 private:
  std::vector<std::vector<PathNode>> levels_;
};

/// Builds the tree of all positive-probability prefixes up to `horizon`.
/// With a distributed initial law the result is a forest (one root per
/// positive-probability initial state).
inline PathTree enumerate_paths(const TrendModel& model, int horizon,
                                long node_cap = defaults::kNodeCap) {
  if (horizon < 0) throw ValidationError("path tree: horizon must be >= 0");
  const int p = model.p();
  // p^(horizon+1) guard, computed in logs to avoid overflow.
  if ((horizon + 1) * std::log(static_cast<double>(p)) >
      std::log(static_cast<double>(node_cap)) + 1e-12)
    throw CapacityError("path tree: p^(N+1) = " + std::to_string(p) + "^" +
                        std::to_string(horizon + 1) + " exceeds the node cap of " +
                        std::to_string(node_cap));

  PathTree tree;
  tree.levels_.resize(horizon + 1);

  const Vector init = model.initial_law();
  for (int l = 0; l < p; ++l)
    if (init(l) >= PathTree::kPruneThreshold)
      tree.levels_[0].push_back({l, init(l), -1, {}});

  for (int n = 0; n < horizon; ++n) {
    auto& cur = tree.levels_[n];
    auto& nxt = tree.levels_[n + 1];
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
      for (int l = 0; l < p; ++l) {
        const double pr = cur[i].prob * model.transition()(cur[i].state, l);
        if (pr < PathTree::kPruneThreshold) continue;
        cur[i].children.push_back(static_cast<int>(nxt.size()));
        nxt.push_back({l, pr, i, {}});
      }
    }
    if (tree.total_nodes() > node_cap)
      throw CapacityError("path tree: node count exceeds the cap of " + std::to_string(node_cap));
  }
  return tree;
}

/// Values attached to every node of one or more depth levels.
template <typename T>
using DepthValues = std::vector<std::vector<T>>;

/// E[. / F_n] on the tree: transition-weighted average of each node's
/// children. `next` holds values at depth n+1.
template <typename T>
std::vector<T> conditional_expectation(const PathTree& tree, const std::vector<T>& next, int n) {
  const auto& cur = tree.level(n);
  const auto& nxt = tree.level(n + 1);
  if (next.size() != nxt.size())
    throw ValidationError("conditional expectation: values not defined on depth " + std::to_string(n + 1));
  std::vector<T> out;
  out.reserve(cur.size());
  for (const auto& node : cur) {
    T acc = (nxt[node.children.front()].prob / node.prob) * next[node.children.front()];
    for (std::size_t c = 1; c < node.children.size(); ++c) {
      const int ci = node.children[c];
      acc += (nxt[ci].prob / node.prob) * next[ci];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// Full expectation of a depth-n family.
template <typename T>
T expectation(const PathTree& tree, const std::vector<T>& values, int n) {
  const auto& lv = tree.level(n);
  if (values.size() != lv.size())
    throw ValidationError("expectation: values not defined on depth " + std::to_string(n));
  T acc = lv[0].prob * values[0];
  for (std::size_t i = 1; i < lv.size(); ++i) acc += lv[i].prob * values[i];
  return acc;
}

/// Marginal law of L_n read off the tree.
inline Vector marginal_law(const PathTree& tree, int p, int n) {
  Vector law = Vector::Zero(p);
  for (const auto& node : tree.level(n)) law(node.state) += node.prob;
  return law;
}

}  // namespace ctrlmetrics
