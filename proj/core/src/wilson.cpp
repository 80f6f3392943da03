#include "lep/wilson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "lep/errors.hpp"

namespace lep {

std::size_t RootedForest::root_count() const {
  return static_cast<std::size_t>(std::count(parent.begin(), parent.end(), kRoot));
}

bool is_valid_forest(const WeightedDigraph& g, const RootedForest& f) {
  const std::size_t n = g.size();
  if (f.size() != n) {
    return false;
  }
  for (Vertex v = 0; v < n; ++v) {
    const std::int64_t p = f.parent[v];
    if (p == RootedForest::kRoot) {
      continue;
    }
    if (p < 0 || static_cast<std::size_t>(p) >= n || !g.has_edge(v, static_cast<Vertex>(p))) {
      return false;
    }
  }
  // Every chain must end at a root within n steps.
  for (Vertex v = 0; v < n; ++v) {
    Vertex cur = v;
    std::size_t steps = 0;
    while (f.parent[cur] != RootedForest::kRoot) {
      cur = static_cast<Vertex>(f.parent[cur]);
      if (++steps > n) {
        return false;
      }
    }
  }
  return true;
}

Vertex root_of(const RootedForest& f, Vertex v) {
  std::size_t steps = 0;
  while (f.parent[v] != RootedForest::kRoot) {
    v = static_cast<Vertex>(f.parent[v]);
    if (++steps > f.size()) {
      throw StructureError("root_of: parent pointers contain a cycle");
    }
  }
  return v;
}

Partition partition_of(const RootedForest& f) {
  const std::size_t n = f.size();
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> block_of_root(n, none);
  Partition out;
  out.block_of.resize(n);
  // Scanning v upward assigns block ids in order of minimum element.
  for (Vertex v = 0; v < n; ++v) {
    const Vertex r = root_of(f, v);
    if (block_of_root[r] == none) {
      block_of_root[r] = out.blocks.size();
      out.blocks.emplace_back();
    }
    out.block_of[v] = block_of_root[r];
    out.blocks[block_of_root[r]].push_back(v);
  }
  return out;
}

std::vector<Vertex> root_set(const RootedForest& f) {
  std::vector<Vertex> roots;
  for (Vertex v = 0; v < f.size(); ++v) {
    if (f.is_root(v)) {
      roots.push_back(v);
    }
  }
  return roots;
}

double forest_weight(const WeightedDigraph& g, const RootedForest& f) {
  double w = 1.0;
  for (Vertex v = 0; v < f.size(); ++v) {
    if (!f.is_root(v)) {
      w *= g.weight(v, static_cast<Vertex>(f.parent[v]));
    }
  }
  return w;
}

std::string forest_to_json(const RootedForest& f) {
  return nlohmann::json(f.parent).dump();
}

RootedForest forest_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("forest json: ") + e.what());
  }
  if (!doc.is_array()) {
    throw FormatError("forest json: expected an array of parent entries");
  }
  RootedForest f;
  for (const auto& entry : doc) {
    if (!entry.is_number_integer() || entry.get<std::int64_t>() < RootedForest::kRoot) {
      throw FormatError("forest json: entries must be integers >= -1");
    }
    f.parent.push_back(entry.get<std::int64_t>());
  }
  for (std::int64_t p : f.parent) {
    if (p >= static_cast<std::int64_t>(f.size())) {
      throw FormatError("forest json: parent id out of range");
    }
  }
  return f;
}

ForestSampler::ForestSampler(const WeightedDigraph& g, double q) : graph_(&g), q_(q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw ParameterError("sample_forest: q must be positive and finite");
  }
  kill_prob_.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    kill_prob_[v] = q / (q + g.out_weight(v));
    double acc = 0.0;
    for (const Edge& e : g.out_edges(v)) {
      acc += e.weight;
      cumulative_.push_back(acc);
    }
  }
}

Vertex ForestSampler::step(Vertex x, Rng& rng, bool& killed) const {
  const double total = q_ + graph_->out_weight(x);
  const double u = rng.uniform() * total;
  if (u < q_) {
    killed = true;
    return x;
  }
  killed = false;
  const auto out = graph_->out_edges(x);
  const std::size_t base = static_cast<std::size_t>(out.data() - graph_->edges().data());
  const auto first = cumulative_.begin() + static_cast<std::ptrdiff_t>(base);
  const auto last = first + static_cast<std::ptrdiff_t>(out.size());
  auto it = std::upper_bound(first, last, u - q_);
  if (it == last) {
    --it;  // u - q rounded up to the total out-weight
  }
  return out[static_cast<std::size_t>(it - first)].dst;
}

RootedForest ForestSampler::sample(Rng& rng) const {
  std::vector<Vertex> order(graph_->size());
  for (Vertex v = 0; v < order.size(); ++v) {
    order[v] = v;
  }
  return sample(rng, order);
}

RootedForest ForestSampler::sample(Rng& rng, std::span<const Vertex> order) const {
  const std::size_t n = graph_->size();
  if (order.size() != n) {
    throw ParameterError("sample_forest: order must list every vertex once");
  }
  std::vector<bool> listed(n, false);
  for (Vertex v : order) {
    if (v >= n) {
      throw ParameterError("sample_forest: order entry out of range");
    }
    if (listed[v]) {
      throw ParameterError("sample_forest: order must list every vertex once");
    }
    listed[v] = true;
  }
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  RootedForest f;
  f.parent.assign(n, RootedForest::kRoot);
  std::vector<bool> in_forest(n, false);
  // pos[v] = index of v in the current loop-erased path, or none.
  std::vector<std::size_t> pos(n, none);
  std::vector<Vertex> path;

  for (Vertex start : order) {
    if (in_forest[start]) {
      continue;
    }
    path.assign(1, start);
    pos[start] = 0;
    std::int64_t exit_parent = RootedForest::kRoot;
    while (true) {
      const Vertex x = path.back();
      bool killed = false;
      const Vertex y = step(x, rng, killed);
      if (killed) {
        break;
      }
      if (in_forest[y]) {
        exit_parent = static_cast<std::int64_t>(y);
        break;
      }
      if (pos[y] != none) {
        for (std::size_t i = pos[y] + 1; i < path.size(); ++i) {
          pos[path[i]] = none;
        }
        path.resize(pos[y] + 1);
      } else {
        pos[y] = path.size();
        path.push_back(y);
      }
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      f.parent[path[i]] = static_cast<std::int64_t>(path[i + 1]);
    }
    f.parent[path.back()] = exit_parent;
    for (Vertex v : path) {
      in_forest[v] = true;
      pos[v] = none;
    }
  }
  return f;
}

RootedForest sample_forest(const WeightedDigraph& g, double q, std::uint64_t seed) {
  Rng rng(seed);
  return ForestSampler(g, q).sample(rng);
}

}  // namespace lep
