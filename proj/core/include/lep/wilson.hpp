#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lep/graph.hpp"
#include "lep/rng.hpp"

namespace lep {

/// Spanning rooted forest as parent pointers; kRoot marks a root.
struct RootedForest {
  static constexpr std::int64_t kRoot = -1;

  std::vector<std::int64_t> parent;

  std::size_t size() const { return parent.size(); }
  bool is_root(Vertex v) const { return parent[v] == kRoot; }
  std::size_t root_count() const;

  friend bool operator==(const RootedForest&, const RootedForest&) = default;
};

/// Blocks of vertices sharing a tree. Canonical: each block sorted, blocks
/// ordered by their minimum element, block_of[v] indexes into blocks.
struct Partition {
  std::vector<std::size_t> block_of;
  std::vector<std::vector<Vertex>> blocks;

  bool same_block(Vertex a, Vertex b) const { return block_of[a] == block_of[b]; }

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Parent pointers reach a root within n steps and every non-root pointer
/// follows an edge of g.
bool is_valid_forest(const WeightedDigraph& g, const RootedForest& f);

/// Root of the tree containing v.
Vertex root_of(const RootedForest& f, Vertex v);

Partition partition_of(const RootedForest& f);

std::vector<Vertex> root_set(const RootedForest& f);

/// Product of the weights of the forest's edges.
double forest_weight(const WeightedDigraph& g, const RootedForest& f);

/// JSON array of parent entries, -1 for a root.
std::string forest_to_json(const RootedForest& f);
RootedForest forest_from_json(std::string_view text);

/// Wilson's algorithm with killing. Each vertex not yet in the forest
/// launches the jump chain that moves x -> y with probability
/// w(x,y) / (q + w(x)) and is killed with probability q / (q + w(x));
/// the loop-erased path is grafted onto the forest on first contact, or
/// rooted at the killing site. Samples P(F) proportional to q^{r(F)} w(F).
class ForestSampler {
 public:
  ForestSampler(const WeightedDigraph& g, double q);

  /// Vertices launched in ascending order.
  RootedForest sample(Rng& rng) const;

  /// Vertices launched in the given order (a permutation of 0..n-1).
  RootedForest sample(Rng& rng, std::span<const Vertex> order) const;

  double q() const { return q_; }
  const WeightedDigraph& graph() const { return *graph_; }

 private:
  Vertex step(Vertex x, Rng& rng, bool& killed) const;

  const WeightedDigraph* graph_;
  double q_;
  std::vector<double> kill_prob_;
  // Per-vertex cumulative out-weights, aligned with graph_->edges().
  std::vector<double> cumulative_;
};

/// One forest drawn with Rng(seed).
RootedForest sample_forest(const WeightedDigraph& g, double q, std::uint64_t seed);

}  // namespace lep
