#include "lep/forest_enum.hpp"

#include <cmath>
#include <string>

#include "lep/errors.hpp"

namespace lep {
namespace {

void require_intensity(double q, const char* where) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw ParameterError(std::string(where) + ": q must be positive and finite");
  }
}


std::vector<bool> evaluate(const ForestEnsemble& ens, const ForestPredicate& pred) {
  std::vector<bool> hit(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    hit[i] = pred(ens.forest(i));
  }
  return hit;
}

double event_probability(const ForestEnsemble& ens, double q, const std::vector<bool>& hit) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const double m = std::pow(q, static_cast<double>(ens.root_count(i))) * ens.weight(i);
    den += m;
    if (hit[i]) {
      num += m;
    }
  }
  return num / den;
}

}  // namespace

RootedForest ForestEnsemble::forest(std::size_t i) const {
  RootedForest f;
  f.parent.resize(n_);
  for (std::size_t v = 0; v < n_; ++v) {
    const std::uint8_t p = parents_[i * n_ + v];
    f.parent[v] = p == n_ ? RootedForest::kRoot : static_cast<std::int64_t>(p);
  }
  return f;
}

ForestEnsemble enumerate_forests(const WeightedDigraph& g) {
  const std::size_t n = g.size();
  if (n > kMaxEnumerationSize) {
    throw SizeError("enumerate_forests: n=" + std::to_string(n) + " exceeds " +
                    std::to_string(kMaxEnumerationSize));
  }
  ForestEnsemble ens;
  ens.n_ = n;
  const auto root = static_cast<std::uint8_t>(n);
  std::vector<std::uint8_t> parent(n, root);
  std::vector<double> weight_prefix(n + 1, 1.0);
  std::vector<std::size_t> roots_prefix(n + 1, 0);

  // A new pointer v -> p closes a cycle iff the chain from p through
  // already-assigned vertices returns to v; earlier vertices are acyclic.
  auto closes_cycle = [&](std::size_t v, std::size_t p) {
    while (p < v && parent[p] != root) {
      p = parent[p];
      if (p == v) {
        return true;
      }
    }
    return p == v;
  };

  auto recurse = [&](auto&& self, std::size_t v) -> void {
    if (v == n) {
      ens.parents_.insert(ens.parents_.end(), parent.begin(), parent.end());
      ens.weight_.push_back(weight_prefix[n]);
      ens.roots_.push_back(static_cast<std::uint8_t>(roots_prefix[n]));
      return;
    }
    parent[v] = root;
    weight_prefix[v + 1] = weight_prefix[v];
    roots_prefix[v + 1] = roots_prefix[v] + 1;
    self(self, v + 1);
    for (const Edge& e : g.out_edges(v)) {
      if (closes_cycle(v, e.dst)) {
        continue;
      }
      parent[v] = static_cast<std::uint8_t>(e.dst);
      weight_prefix[v + 1] = weight_prefix[v] * e.weight;
      roots_prefix[v + 1] = roots_prefix[v];
      self(self, v + 1);
    }
    parent[v] = root;
  };
  recurse(recurse, 0);
  return ens;
}

double brute_Z(const ForestEnsemble& ens, double q) {
  require_intensity(q, "brute_Z");
  double z = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    z += std::pow(q, static_cast<double>(ens.root_count(i))) * ens.weight(i);
  }
  return z;
}

double brute_event(const ForestEnsemble& ens, double q, const ForestPredicate& pred) {
  require_intensity(q, "brute_event");
  return event_probability(ens, q, evaluate(ens, pred));
}

double brute_conditional_roots(const ForestEnsemble& ens, double q, const ForestPredicate& pred) {
  require_intensity(q, "brute_conditional_roots");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (!pred(ens.forest(i))) {
      continue;
    }
    const double r = static_cast<double>(ens.root_count(i));
    const double m = std::pow(q, r) * ens.weight(i);
    num += r * m;
    den += m;
  }
  if (den == 0.0) {
    throw UndefinedConditionalError("brute_conditional_roots: event has probability zero");
  }
  return num / den;
}

RussoTerms russo_check(const ForestEnsemble& ens, double q, const ForestPredicate& pred) {
  require_intensity(q, "russo_check");
  const std::vector<bool> hit = evaluate(ens, pred);

  double z = 0.0;
  double z_hit = 0.0;
  double r_all = 0.0;
  double r_hit = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const double r = static_cast<double>(ens.root_count(i));
    const double m = std::pow(q, r) * ens.weight(i);
    z += m;
    r_all += r * m;
    if (hit[i]) {
      z_hit += m;
      r_hit += r * m;
    }
  }
  if (z_hit == 0.0) {
    throw UndefinedConditionalError("russo_check: event has probability zero");
  }
  const double p = z_hit / z;
  RussoTerms out;
  out.rhs = p * (r_hit / z_hit - r_all / z) / q;

  const double h = q * 1e-6;
  out.lhs = (event_probability(ens, q + h, hit) - event_probability(ens, q - h, hit)) / (2.0 * h);
  return out;
}

}  // namespace lep
