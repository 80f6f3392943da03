#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lep/graph.hpp"

namespace lep {

// Vertex labelling of every family is fixed so correlation queries are
// reproducible across runs and tools.

/// Vertices 0..n-1 in line order, unit weights.
struct PathFamily {
  std::size_t n = 1;
};

/// Vertices 0..n-1 around the ring, unit weights. n >= 3.
struct CycleFamily {
  std::size_t n = 3;
};

/// Center 0, leaves 1..n-1, all edges of weight w.
struct StarFamily {
  std::size_t n = 2;
  double w = 1.0;
};

/// Center 0; leaves 1..k carry weight 1, leaves k+1..n-1 carry weight w.
struct CommunityStarFamily {
  std::size_t n = 3;
  std::size_t k = 0;
  double w = 1.0;
};

/// d-regular tree of height h in breadth-first order with the ancestor at 0.
/// An edge whose child sits at generation i has weight weights[i-1];
/// weights must be nondecreasing (heavier towards the leaves).
struct HierarchicalTreeFamily {
  std::size_t d = 2;
  std::size_t h = 1;
  std::vector<double> weights = {1.0};
};

/// Clique on 0..n-1 and clique on n..n+m-1 (unit weights), joined by a bridge
/// 0 -- n of weight w. Vertex 0 is b, vertex n is b'.
struct BottleneckFamily {
  std::size_t n = 2;
  std::size_t m = 2;
  double w = 1.0;
};

/// Complete graph on n vertices, unit weights.
struct CompleteFamily {
  std::size_t n = 1;
};

using FamilySpec = std::variant<PathFamily, CycleFamily, StarFamily, CommunityStarFamily,
                                HierarchicalTreeFamily, BottleneckFamily, CompleteFamily>;

/// Throws ParameterError on invalid sizes or weights.
WeightedDigraph make_family(const FamilySpec& spec);

/// Number of vertices make_family(spec) will produce.
std::size_t family_size(const FamilySpec& spec);

/// Parses `path:n=10`, `cycle:n=5`, `star:n=10,w=0.5`,
/// `community_star:n=10,k=2,w=0.5`, `hierarchical:d=2,h=3,w=1;2;4`,
/// `bottleneck:n=100,m=10,w=0.5`, `complete:n=6`.
/// Throws ParameterError naming the offending key.
FamilySpec parse_family(std::string_view text);

/// Inverse of parse_family.
std::string to_string(const FamilySpec& spec);

}  // namespace lep
