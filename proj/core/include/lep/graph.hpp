#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lep {

using Vertex = std::size_t;

struct Edge {
  Vertex src = 0;
  Vertex dst = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite directed graph with strictly positive edge rates on vertices 0..n-1.
///
/// Edges are kept sorted by (src, dst) with at most one edge per ordered pair
/// and no self-loops. Undirected graphs are stored as both orientations with
/// equal weight. Instances are immutable after construction.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  /// Validates and canonicalizes. Throws ParameterError on self-loops,
  /// duplicate ordered pairs, out-of-range ids or non-positive weights.
  WeightedDigraph(std::size_t n, std::vector<Edge> edges);

  /// Like the constructor, but parallel edges are merged by adding their
  /// weights and self-loops are dropped.
  static WeightedDigraph merged(std::size_t n, std::vector<Edge> edges);

  /// Builds both orientations of each {src, dst} pair.
  static WeightedDigraph undirected(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return n_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Edge> out_edges(Vertex v) const {
    return std::span<const Edge>(edges_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
  }

  /// w(x, y), zero when the edge is absent.
  double weight(Vertex x, Vertex y) const;
  bool has_edge(Vertex x, Vertex y) const { return weight(x, y) > 0.0; }
  /// Total out-rate w(x) = sum_y w(x, y).
  double out_weight(Vertex x) const { return out_weight_[x]; }

  /// Every edge has a reverse edge of identical weight.
  bool is_symmetric() const;

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<double> out_weight_;
};

/// Generator L = A - D: L(x,y) = w(x,y) off the diagonal and
/// L(x,x) = -w(x), so every row sums to zero.
Eigen::MatrixXd laplacian(const WeightedDigraph& g);

/// Removes the directed edge (x, y) only.
WeightedDigraph delete_edge(const WeightedDigraph& g, Vertex x, Vertex y);

/// Removes every edge between x and y, in both directions.
WeightedDigraph delete_undirected_edge(const WeightedDigraph& g, Vertex x, Vertex y);

/// Directed contraction over (x, y): drop all out-edges of x, then merge x
/// into y. In-edges of x are redirected to y and parallel edges merged by
/// weight addition. Vertex x disappears and ids above x shift down by one.
WeightedDigraph contract_edge(const WeightedDigraph& g, Vertex x, Vertex y);

/// Id of vertex v in contract_edge(g, x, y); v == x maps to y's new id.
Vertex contracted_id(Vertex v, Vertex x, Vertex y);

/// Subgraph induced on `keep` (relabelled 0..k-1 in the given order).
WeightedDigraph induced_subgraph(const WeightedDigraph& g, std::span<const Vertex> keep);

/// Weakly connected components, each sorted, ordered by minimum element.
std::vector<std::vector<Vertex>> weak_components(const WeightedDigraph& g);

/// Symmetric support that is connected and has n-1 undirected edges.
bool is_undirected_tree(const WeightedDigraph& g);

/// Unique vertex sequence x = z_0, ..., z_d = y in a tree.
/// Throws StructureError if g is not a tree.
std::vector<Vertex> tree_path(const WeightedDigraph& g, Vertex x, Vertex y);

/// Reads the TSV edge-list format: an optional "# n=<count>" header and
/// lines "src<TAB>dst<TAB>weight". Without a header n is 1 + max id.
/// Throws FormatError on self-loops, duplicates, non-positive weights or
/// malformed lines.
WeightedDigraph load_edge_list(std::string_view text);

/// Canonical TSV: header plus edges sorted by (src, dst), weights printed
/// with 17 significant digits.
std::string save_edge_list(const WeightedDigraph& g);

}  // namespace lep
