#include "lep/family.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "lep/errors.hpp"

namespace lep {
namespace {

void require_positive(double w, const char* what) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw ParameterError(std::string(what) + " must be positive and finite");
  }
}

std::vector<Edge> clique(Vertex first, std::size_t count) {
  std::vector<Edge> edges;
  for (Vertex a = first; a < first + count; ++a) {
    for (Vertex b = a + 1; b < first + count; ++b) {
      edges.push_back({a, b, 1.0});
    }
  }
  return edges;
}

std::size_t hierarchical_size(std::size_t d, std::size_t h) {
  std::size_t total = 1;
  std::size_t level = 1;
  for (std::size_t i = 0; i < h; ++i) {
    level *= d;
    total += level;
  }
  return total;
}

struct SizeVisitor {
  std::size_t operator()(const PathFamily& f) const { return f.n; }
  std::size_t operator()(const CycleFamily& f) const { return f.n; }
  std::size_t operator()(const StarFamily& f) const { return f.n; }
  std::size_t operator()(const CommunityStarFamily& f) const { return f.n; }
  std::size_t operator()(const HierarchicalTreeFamily& f) const {
    return hierarchical_size(f.d, f.h);
  }
  std::size_t operator()(const BottleneckFamily& f) const { return f.n + f.m; }
  std::size_t operator()(const CompleteFamily& f) const { return f.n; }
};

struct BuildVisitor {
  WeightedDigraph operator()(const PathFamily& f) const {
    if (f.n < 1) {
      throw ParameterError("path: n must be >= 1");
    }
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < f.n; ++v) {
      e.push_back({v, v + 1, 1.0});
    }
    return WeightedDigraph::undirected(f.n, e);
  }
  WeightedDigraph operator()(const CycleFamily& f) const {
    if (f.n < 3) {
      throw ParameterError("cycle: n must be >= 3");
    }
    std::vector<Edge> e;
    for (Vertex v = 0; v < f.n; ++v) {
      e.push_back({v, (v + 1) % f.n, 1.0});
    }
    return WeightedDigraph::undirected(f.n, e);
  }
  WeightedDigraph operator()(const StarFamily& f) const {
    if (f.n < 1) {
      throw ParameterError("star: n must be >= 1");
    }
    require_positive(f.w, "star: w");
    std::vector<Edge> e;
    for (Vertex v = 1; v < f.n; ++v) {
      e.push_back({0, v, f.w});
    }
    return WeightedDigraph::undirected(f.n, e);
  }
  WeightedDigraph operator()(const CommunityStarFamily& f) const {
    if (f.n < 1) {
      throw ParameterError("community_star: n must be >= 1");
    }
    if (f.k + 1 > f.n) {
      throw ParameterError("community_star: k must satisfy 0 <= k <= n-1");
    }
    require_positive(f.w, "community_star: w");
    std::vector<Edge> e;
    for (Vertex v = 1; v < f.n; ++v) {
      e.push_back({0, v, v <= f.k ? 1.0 : f.w});
    }
    return WeightedDigraph::undirected(f.n, e);
  }
  WeightedDigraph operator()(const HierarchicalTreeFamily& f) const {
    if (f.d < 1) {
      throw ParameterError("hierarchical: d must be >= 1");
    }
    if (f.weights.size() != f.h) {
      throw ParameterError("hierarchical: need exactly h generation weights");
    }
    for (std::size_t i = 0; i < f.weights.size(); ++i) {
      require_positive(f.weights[i], "hierarchical: w");
      if (i > 0 && f.weights[i] < f.weights[i - 1]) {
        throw ParameterError("hierarchical: weights must be nondecreasing towards the leaves");
      }
    }
    const std::size_t n = hierarchical_size(f.d, f.h);
    std::vector<Edge> e;
    // Breadth-first numbering: children of v are d*v+1 .. d*v+d.
    std::size_t level_start = 0;
    std::size_t level_size = 1;
    for (std::size_t gen = 1; gen <= f.h; ++gen) {
      for (Vertex p = level_start; p < level_start + level_size; ++p) {
        for (std::size_t c = 1; c <= f.d; ++c) {
          e.push_back({p, f.d * p + c, f.weights[gen - 1]});
        }
      }
      level_start += level_size;
      level_size *= f.d;
    }
    return WeightedDigraph::undirected(n, e);
  }
  WeightedDigraph operator()(const BottleneckFamily& f) const {
    if (f.n < 1 || f.m < 1) {
      throw ParameterError("bottleneck: n and m must be >= 1");
    }
    require_positive(f.w, "bottleneck: w");
    auto e = clique(0, f.n);
    auto e2 = clique(f.n, f.m);
    e.insert(e.end(), e2.begin(), e2.end());
    e.push_back({0, f.n, f.w});
    return WeightedDigraph::undirected(f.n + f.m, e);
  }
  WeightedDigraph operator()(const CompleteFamily& f) const {
    if (f.n < 1) {
      throw ParameterError("complete: n must be >= 1");
    }
    return WeightedDigraph::undirected(f.n, clique(0, f.n));
  }
};

std::map<std::string, std::string, std::less<>> parse_params(std::string_view kind,
                                                             std::string_view body) {
  std::map<std::string, std::string, std::less<>> params;
  while (!body.empty()) {
    auto comma = body.find(',');
    auto item = body.substr(0, comma);
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParameterError(std::string(kind) + ": malformed parameter '" + std::string(item) +
                           "'");
    }
    params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
  }
  return params;
}

std::size_t get_size(const std::map<std::string, std::string, std::less<>>& p,
                     std::string_view kind, std::string_view key) {
  auto it = p.find(key);
  if (it == p.end()) {
    throw ParameterError(std::string(kind) + ": missing parameter '" + std::string(key) + "'");
  }
  std::size_t value = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParameterError(std::string(kind) + ": parameter '" + std::string(key) +
                         "' is not a nonnegative integer");
  }
  return value;
}

double to_real(std::string_view kind, std::string_view key, const std::string& s) {
  std::istringstream is(s);
  is.imbue(std::locale::classic());
  double value = 0.0;
  is >> value;
  if (!is || !is.eof()) {
    throw ParameterError(std::string(kind) + ": parameter '" + std::string(key) +
                         "' is not a number");
  }
  return value;
}

double get_real(const std::map<std::string, std::string, std::less<>>& p,
                std::string_view kind, std::string_view key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : to_real(kind, key, it->second);
}

void reject_unknown(const std::map<std::string, std::string, std::less<>>& p,
                    std::string_view kind, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : p) {
    bool ok = false;
    for (auto k : known) {
      ok = ok || key == k;
    }
    if (!ok) {
      throw ParameterError(std::string(kind) + ": unknown parameter '" + key + "'");
    }
  }
}

std::string format_real(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

WeightedDigraph make_family(const FamilySpec& spec) { return std::visit(BuildVisitor{}, spec); }

std::size_t family_size(const FamilySpec& spec) { return std::visit(SizeVisitor{}, spec); }

FamilySpec parse_family(std::string_view text) {
  auto colon = text.find(':');
  std::string_view kind = text.substr(0, colon);
  std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto p = parse_params(kind, body);
  if (kind == "path") {
    reject_unknown(p, kind, {"n"});
    return PathFamily{get_size(p, kind, "n")};
  }
  if (kind == "cycle") {
    reject_unknown(p, kind, {"n"});
    return CycleFamily{get_size(p, kind, "n")};
  }
  if (kind == "star") {
    reject_unknown(p, kind, {"n", "w"});
    return StarFamily{get_size(p, kind, "n"), get_real(p, kind, "w", 1.0)};
  }
  if (kind == "community_star") {
    reject_unknown(p, kind, {"n", "k", "w"});
    return CommunityStarFamily{get_size(p, kind, "n"), get_size(p, kind, "k"),
                               get_real(p, kind, "w", 1.0)};
  }
  if (kind == "hierarchical") {
    reject_unknown(p, kind, {"d", "h", "w"});
    HierarchicalTreeFamily f;
    f.d = get_size(p, kind, "d");
    f.h = get_size(p, kind, "h");
    f.weights.clear();
    auto it = p.find("w");
    if (it == p.end()) {
      f.weights.assign(f.h, 1.0);
    } else {
      std::string_view ws = it->second;
      while (!ws.empty()) {
        auto semi = ws.find(';');
        f.weights.push_back(to_real(kind, "w", std::string(ws.substr(0, semi))));
        ws = semi == std::string_view::npos ? std::string_view{} : ws.substr(semi + 1);
      }
    }
    return f;
  }
  if (kind == "bottleneck") {
    reject_unknown(p, kind, {"n", "m", "w"});
    return BottleneckFamily{get_size(p, kind, "n"), get_size(p, kind, "m"),
                            get_real(p, kind, "w", 1.0)};
  }
  if (kind == "complete") {
    reject_unknown(p, kind, {"n"});
    return CompleteFamily{get_size(p, kind, "n")};
  }
  throw ParameterError("unknown family '" + std::string(kind) + "'");
}

std::string to_string(const FamilySpec& spec) {
  struct Printer {
    std::string operator()(const PathFamily& f) const { return "path:n=" + std::to_string(f.n); }
    std::string operator()(const CycleFamily& f) const {
      return "cycle:n=" + std::to_string(f.n);
    }
    std::string operator()(const StarFamily& f) const {
      return "star:n=" + std::to_string(f.n) + ",w=" + format_real(f.w);
    }
    std::string operator()(const CommunityStarFamily& f) const {
      return "community_star:n=" + std::to_string(f.n) + ",k=" + std::to_string(f.k) +
             ",w=" + format_real(f.w);
    }
    std::string operator()(const HierarchicalTreeFamily& f) const {
      std::string s = "hierarchical:d=" + std::to_string(f.d) + ",h=" + std::to_string(f.h) + ",w=";
      for (std::size_t i = 0; i < f.weights.size(); ++i) {
        s += (i ? ";" : "") + format_real(f.weights[i]);
      }
      return s;
    }
    std::string operator()(const BottleneckFamily& f) const {
      return "bottleneck:n=" + std::to_string(f.n) + ",m=" + std::to_string(f.m) +
             ",w=" + format_real(f.w);
    }
    std::string operator()(const CompleteFamily& f) const {
      return "complete:n=" + std::to_string(f.n);
    }
  };
  return std::visit(Printer{}, spec);
}

}  // namespace lep
