#include <algorithm>
#include <string>

#include "lep/errors.hpp"
#include "lep/spectral.hpp"

namespace lep {

double u_tree_exact(const WeightedDigraph& g, Vertex x, Vertex y, double q) {
  if (x >= g.size() || y >= g.size()) {
    throw ParameterError("u_tree_exact: vertex out of range");
  }
  if (x == y) {
    throw ParameterError("u_tree_exact: x and y must differ");
  }
  const std::vector<Vertex> path = tree_path(g, x, y);
  const std::size_t d = path.size() - 1;
  if (d > kMaxTreeDistance) {
    throw SizeError("u_tree_exact: distance " + std::to_string(d) + " exceeds " +
                    std::to_string(kMaxTreeDistance));
  }

  // attach[v] = index i of the path vertex z_i that v hangs off.
  const std::size_t none = path.size();
  std::vector<std::size_t> attach(g.size(), none);
  std::vector<Vertex> stack;
  for (std::size_t i = 0; i < path.size(); ++i) {
    attach[path[i]] = i;
    stack.push_back(path[i]);
  }
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Edge& e : g.out_edges(v)) {
      if (attach[e.dst] == none) {
        attach[e.dst] = attach[v];
        stack.push_back(e.dst);
      }
    }
  }

  // Cutting path edges s and t+1 (edge i joins z_{i-1} and z_i) leaves the
  // component spanned by z_s..z_t and everything hanging off them.
  std::vector<std::vector<LogValue>> segment(d + 1, std::vector<LogValue>(d + 1));
  for (std::size_t s = 0; s <= d; ++s) {
    for (std::size_t t = s; t <= d; ++t) {
      std::vector<Vertex> verts;
      for (Vertex v = 0; v < g.size(); ++v) {
        if (attach[v] >= s && attach[v] <= t) {
          verts.push_back(v);
        }
      }
      segment[s][t] = partition_function(induced_subgraph(g, verts), q);
    }
  }

  // Signed sum over nonempty cut sets, grouped by the largest cut j:
  // last[j] = sum over cut sets with maximum j of (-1)^{|I|+1} times the
  // components closed off to the left of j.
  std::vector<LogValue> last(d + 1);
  LogValue total;
  for (std::size_t j = 1; j <= d; ++j) {
    LogValue acc = segment[0][j - 1];
    for (std::size_t i = 1; i < j; ++i) {
      acc -= last[i] * segment[i][j - 1];
    }
    last[j] = acc;
    total += acc * segment[j][d];
  }
  // segment[0][d] is the whole tree.
  const double u = (total / segment[0][d]).to_double();
  return std::clamp(u, 0.0, 1.0);
}

}  // namespace lep
