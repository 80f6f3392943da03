#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lep/graph.hpp"
#include "lep/wilson.hpp"

namespace lep {

/// Largest graph enumerate_forests accepts. K_8 already has 9^7 forests.
inline constexpr std::size_t kMaxEnumerationSize = 8;

/// Every spanning rooted forest of a graph with its weight and root count.
/// Parent arrays are stored flat, one byte per vertex, with n meaning root.
class ForestEnsemble {
 public:
  std::size_t vertex_count() const { return n_; }
  std::size_t size() const { return weight_.size(); }

  RootedForest forest(std::size_t i) const;
  double weight(std::size_t i) const { return weight_[i]; }
  std::size_t root_count(std::size_t i) const { return roots_[i]; }

 private:
  friend ForestEnsemble enumerate_forests(const WeightedDigraph& g);

  std::size_t n_ = 0;
  std::vector<std::uint8_t> parents_;
  std::vector<double> weight_;
  std::vector<std::uint8_t> roots_;
};

using ForestPredicate = std::function<bool(const RootedForest&)>;

/// Depth-first assignment of parent in {root} + out-neighbours, vertex by
/// vertex, rejecting a choice as soon as it closes a cycle.
/// Throws SizeError for n > kMaxEnumerationSize.
ForestEnsemble enumerate_forests(const WeightedDigraph& g);

/// sum_F q^{r(F)} w(F).
double brute_Z(const ForestEnsemble& ens, double q);

/// P(pred) under the forest measure of intensity q.
double brute_event(const ForestEnsemble& ens, double q, const ForestPredicate& pred);

/// E[r(F) | pred].
double brute_conditional_roots(const ForestEnsemble& ens, double q, const ForestPredicate& pred);

struct RussoTerms {
  double lhs = 0.0;  // central difference of q -> P(pred), step q * 1e-6
  double rhs = 0.0;  // (1/q) P(pred) (E[r | pred] - E[r])
};

/// Both sides of d/dq P(H) = (1/q) P(H) (E[r | H] - E[r]).
/// Throws UndefinedConditionalError when P(H) = 0.
RussoTerms russo_check(const ForestEnsemble& ens, double q, const ForestPredicate& pred);

}  // namespace lep
