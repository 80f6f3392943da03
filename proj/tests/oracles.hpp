#pragma once

// Test-side reference implementations. They share no code paths with the
// library beyond WeightedDigraph itself.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lep/graph.hpp"

namespace lep::testing {

struct OracleForest {
  std::vector<int> parent;  // -1 for a root
  double weight = 1.0;
  int roots = 0;
};

// Every map v -> {root} + V, filtered to edge-supported acyclic ones.
inline std::vector<OracleForest> oracle_forests(const WeightedDigraph& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> digit(n, -1);
  std::vector<OracleForest> out;
  while (true) {
    bool ok = true;
    OracleForest f;
    f.parent = digit;
    for (int v = 0; v < n && ok; ++v) {
      if (digit[v] == -1) {
        ++f.roots;
      } else if (digit[v] == v || !g.has_edge(v, digit[v])) {
        ok = false;
      } else {
        f.weight *= g.weight(v, digit[v]);
      }
    }
    for (int v = 0; v < n && ok; ++v) {
      int cur = v;
      for (int steps = 0; cur != -1; ++steps) {
        if (steps > n) {
          ok = false;
          break;
        }
        cur = digit[cur];
      }
    }
    if (ok) {
      out.push_back(f);
    }
    int i = 0;
    while (i < n && digit[i] == n - 1) {
      digit[i] = -1;
      ++i;
    }
    if (i == n) {
      break;
    }
    ++digit[i];
  }
  return out;
}

inline int oracle_root(const OracleForest& f, int v) {
  while (f.parent[v] != -1) {
    v = f.parent[v];
  }
  return v;
}

template <typename Pred>
double oracle_probability(const std::vector<OracleForest>& forests, double q, Pred pred) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& f : forests) {
    double m = f.weight;
    for (int r = 0; r < f.roots; ++r) {
      m *= q;
    }
    den += m;
    if (pred(f)) {
      num += m;
    }
  }
  return num / den;
}

inline double oracle_z(const std::vector<OracleForest>& forests, double q) {
  double z = 0.0;
  for (const auto& f : forests) {
    double m = f.weight;
    for (int r = 0; r < f.roots; ++r) {
      m *= q;
    }
    z += m;
  }
  return z;
}

inline double oracle_u(const WeightedDigraph& g, int x, int y, double q) {
  const auto forests = oracle_forests(g);
  return oracle_probability(forests, q, [x, y](const OracleForest& f) {
    return oracle_root(f, x) != oracle_root(f, y);
  });
}

// det(qI - L) of the subgraph induced on `keep` minus the `cut` edges,
// with Eigen's plain determinant.
inline double oracle_component_z(const WeightedDigraph& g,
                                 const std::vector<std::pair<Vertex, Vertex>>& cut,
                                 const std::vector<Vertex>& keep, double q) {
  std::vector<int> idx(g.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    idx[keep[i]] = static_cast<int>(i);
  }
  const auto m = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) * q;
  for (const Edge& e : g.edges()) {
    bool is_cut = false;
    for (const auto& [u, v] : cut) {
      is_cut = is_cut || (e.src == u && e.dst == v) || (e.src == v && e.dst == u);
    }
    if (is_cut || idx[e.src] < 0 || idx[e.dst] < 0) {
      continue;
    }
    a(idx[e.src], idx[e.src]) += e.weight;
    a(idx[e.src], idx[e.dst]) -= e.weight;
  }
  return a.determinant();
}

// U_q(x, y) on a tree by literal inclusion-exclusion over all nonempty
// subsets of the x--y path edges.
inline double oracle_tree_u(const WeightedDigraph& g, Vertex x, Vertex y, double q) {
  const std::size_t n = g.size();
  // Path by BFS parents from x.
  std::vector<Vertex> par(n, n);
  std::vector<Vertex> queue = {x};
  par[x] = x;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const Edge& e : g.out_edges(queue[h])) {
      if (par[e.dst] == n) {
        par[e.dst] = queue[h];
        queue.push_back(e.dst);
      }
    }
  }
  std::vector<std::pair<Vertex, Vertex>> path_edges;
  for (Vertex v = y; v != x; v = par[v]) {
    path_edges.emplace_back(par[v], v);
  }
  const std::size_t d = path_edges.size();
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) {
    all[v] = v;
  }
  const double z = oracle_component_z(g, {}, all, q);
  double total = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
    std::vector<std::pair<Vertex, Vertex>> cut;
    for (std::size_t i = 0; i < d; ++i) {
      if (mask >> i & 1) {
        cut.push_back(path_edges[i]);
      }
    }
    // Components of the tree minus the cut edges.
    std::vector<int> comp(n, -1);
    int count = 0;
    for (Vertex s = 0; s < n; ++s) {
      if (comp[s] >= 0) {
        continue;
      }
      std::vector<Vertex> stack = {s};
      comp[s] = count;
      while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (const Edge& e : g.out_edges(v)) {
          bool is_cut = false;
          for (const auto& [a, b] : cut) {
            is_cut = is_cut || (e.src == a && e.dst == b) || (e.src == b && e.dst == a);
          }
          if (!is_cut && comp[e.dst] < 0) {
            comp[e.dst] = count;
            stack.push_back(e.dst);
          }
        }
      }
      ++count;
    }
    double product = 1.0;
    for (int c = 0; c < count; ++c) {
      std::vector<Vertex> keep;
      for (Vertex v = 0; v < n; ++v) {
        if (comp[v] == c) {
          keep.push_back(v);
        }
      }
      product *= oracle_component_z(g, cut, keep, q);
    }
    total += (std::popcount(mask) % 2 == 1 ? 1.0 : -1.0) * product;
  }
  return total / z;
}

// Random recursive tree: vertex v > 0 attaches to a uniform earlier vertex
// with a weight drawn log-uniformly from [1e-2, 1e2].
inline WeightedDigraph random_tree(std::size_t n, std::mt19937_64& gen) {
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> logw(-2.0, 2.0);
  for (Vertex v = 1; v < n; ++v) {
    std::uniform_int_distribution<Vertex> pick(0, v - 1);
    edges.push_back({pick(gen), v, std::pow(10.0, logw(gen))});
  }
  return WeightedDigraph::undirected(n, edges);
}

}  // namespace lep::testing
