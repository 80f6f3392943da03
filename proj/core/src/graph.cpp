#include "lep/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "lep/errors.hpp"

namespace lep {
namespace {

bool edge_less(const Edge& a, const Edge& b) {
  return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
}

}  // namespace

WeightedDigraph::WeightedDigraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.src >= n_ || e.dst >= n_) {
      throw ParameterError("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                           ") out of range for n=" + std::to_string(n_));
    }
    if (e.src == e.dst) {
      throw ParameterError("self-loop at vertex " + std::to_string(e.src));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ParameterError("non-positive weight on edge (" + std::to_string(e.src) + "," +
                           std::to_string(e.dst) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end(), edge_less);
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].src == edges_[i - 1].src && edges_[i].dst == edges_[i - 1].dst) {
      throw ParameterError("duplicate edge (" + std::to_string(edges_[i].src) + "," +
                           std::to_string(edges_[i].dst) + ")");
    }
  }
  offsets_.assign(n_ + 1, 0);
  out_weight_.assign(n_, 0.0);
  for (const Edge& e : edges_) {
    ++offsets_[e.src + 1];
    out_weight_[e.src] += e.weight;
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

WeightedDigraph WeightedDigraph::merged(std::size_t n, std::vector<Edge> edges) {
  std::map<std::pair<Vertex, Vertex>, double> acc;
  for (const Edge& e : edges) {
    if (e.src == e.dst) {
      continue;
    }
    acc[{e.src, e.dst}] += e.weight;
  }
  std::vector<Edge> out;
  out.reserve(acc.size());
  for (const auto& [key, w] : acc) {
    out.push_back({key.first, key.second, w});
  }
  return WeightedDigraph(n, std::move(out));
}

WeightedDigraph WeightedDigraph::undirected(std::size_t n, std::span<const Edge> edges) {
  std::vector<Edge> both;
  both.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    both.push_back(e);
    both.push_back({e.dst, e.src, e.weight});
  }
  return WeightedDigraph(n, std::move(both));
}

double WeightedDigraph::weight(Vertex x, Vertex y) const {
  if (x >= n_) {
    return 0.0;
  }
  auto out = out_edges(x);
  auto it = std::lower_bound(out.begin(), out.end(), y,
                             [](const Edge& e, Vertex v) { return e.dst < v; });
  return (it != out.end() && it->dst == y) ? it->weight : 0.0;
}

bool WeightedDigraph::is_symmetric() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [this](const Edge& e) { return weight(e.dst, e.src) == e.weight; });
}

Eigen::MatrixXd laplacian(const WeightedDigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    L(static_cast<Eigen::Index>(e.src), static_cast<Eigen::Index>(e.dst)) = e.weight;
  }
  for (Eigen::Index x = 0; x < n; ++x) {
    L(x, x) = -g.out_weight(static_cast<Vertex>(x));
  }
  return L;
}

WeightedDigraph delete_edge(const WeightedDigraph& g, Vertex x, Vertex y) {
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (!(e.src == x && e.dst == y)) {
      kept.push_back(e);
    }
  }
  return WeightedDigraph(g.size(), std::move(kept));
}

WeightedDigraph delete_undirected_edge(const WeightedDigraph& g, Vertex x, Vertex y) {
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (!((e.src == x && e.dst == y) || (e.src == y && e.dst == x))) {
      kept.push_back(e);
    }
  }
  return WeightedDigraph(g.size(), std::move(kept));
}

Vertex contracted_id(Vertex v, Vertex x, Vertex y) {
  if (v == x) {
    v = y;
  }
  return v > x ? v - 1 : v;
}

WeightedDigraph contract_edge(const WeightedDigraph& g, Vertex x, Vertex y) {
  if (x >= g.size() || y >= g.size() || x == y) {
    throw ParameterError("contract_edge: invalid edge");
  }
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (e.src == x) {
      continue;
    }
    out.push_back({contracted_id(e.src, x, y), contracted_id(e.dst, x, y), e.weight});
  }
  return WeightedDigraph::merged(g.size() - 1, std::move(out));
}

WeightedDigraph induced_subgraph(const WeightedDigraph& g, std::span<const Vertex> keep) {
  std::vector<std::size_t> new_id(g.size(), g.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= g.size()) {
      throw ParameterError("induced_subgraph: vertex out of range");
    }
    new_id[keep[i]] = i;
  }
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (new_id[e.src] < g.size() && new_id[e.dst] < g.size()) {
      out.push_back({new_id[e.src], new_id[e.dst], e.weight});
    }
  }
  return WeightedDigraph(keep.size(), std::move(out));
}

std::vector<std::vector<Vertex>> weak_components(const WeightedDigraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Vertex>> comps;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) {
      continue;
    }
    std::vector<Vertex> comp;
    std::vector<Vertex> stack = {s};
    seen[s] = true;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex u : adj[v]) {
        if (!seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_undirected_tree(const WeightedDigraph& g) {
  if (g.size() == 0) {
    return false;
  }
  std::size_t undirected_edges = 0;
  for (const Edge& e : g.edges()) {
    if (!g.has_edge(e.dst, e.src)) {
      return false;
    }
    if (e.src < e.dst) {
      ++undirected_edges;
    }
  }
  return undirected_edges + 1 == g.size() && weak_components(g).size() == 1;
}

std::vector<Vertex> tree_path(const WeightedDigraph& g, Vertex x, Vertex y) {
  if (!is_undirected_tree(g)) {
    throw StructureError("tree_path: graph is not a tree");
  }
  if (x >= g.size() || y >= g.size()) {
    throw ParameterError("tree_path: vertex out of range");
  }
  std::vector<Vertex> parent(g.size(), g.size());
  std::vector<Vertex> stack = {x};
  parent[x] = x;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Edge& e : g.out_edges(v)) {
      if (parent[e.dst] == g.size()) {
        parent[e.dst] = v;
        stack.push_back(e.dst);
      }
    }
  }
  std::vector<Vertex> path;
  for (Vertex v = y; v != x; v = parent[v]) {
    path.push_back(v);
  }
  path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace lep
