#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lep/family.hpp"
#include "lep/forest_enum.hpp"
#include "lep/graph.hpp"
#include "lep/log_value.hpp"
#include "lep/wilson.hpp"

namespace lep {

/// Bernoulli estimate from independent replicas.
struct SampleStats {
  std::size_t replicas = 0;
  double estimate = 0.0;
  double std_error = 0.0;  // sqrt(p (1 - p) / R)
  std::uint64_t seed = 0;
};

/// Number of worker threads used when a call passes threads = 0.
std::size_t default_thread_count();

/// Replica r is drawn with Rng::for_stream(seed, r) and reported to
/// bin(forest) in [0, bins). Counts are integer sums, so the result does not
/// depend on the thread count.
std::vector<std::uint64_t> mc_histogram(const WeightedDigraph& g, double q, std::size_t replicas,
                                        std::uint64_t seed,
                                        const std::function<std::size_t(const RootedForest&)>& bin,
                                        std::size_t bins, std::size_t threads = 0);

/// Fraction of replicas satisfying pred.
SampleStats mc_event(const WeightedDigraph& g, double q, const ForestPredicate& pred,
                     std::size_t replicas, std::uint64_t seed, std::size_t threads = 0);

/// Fraction of replicas in which x and y fall in different trees.
SampleStats mc_correlation(const WeightedDigraph& g, double q, Vertex x, Vertex y,
                           std::size_t replicas, std::uint64_t seed, std::size_t threads = 0);

/// Pearson goodness of fit. Bins whose expected count is below 5 are pooled
/// into one bin; the p-value uses pooled_bins - 1 degrees of freedom.
struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

ChiSquare chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> probs);

struct RootCountFit {
  std::vector<std::uint64_t> histogram;  // index = number of roots, 0..n
  std::vector<double> expected;          // Bernoulli-sum law of the same length
  double mean = 0.0;
  double mean_std_error = 0.0;
  ChiSquare fit;
};

/// Root counts of R samples against the law with success probabilities
/// q / (q + lambda_i). Throws StructureError on non-symmetric graphs.
RootCountFit mc_root_count(const WeightedDigraph& g, double q, std::size_t replicas,
                           std::uint64_t seed, std::size_t threads = 0);

/// How an exact correlation was obtained.
enum class ExactMethod { enumeration, tree, closed };

struct ExactValue {
  double value = 0.0;
  ExactMethod method = ExactMethod::closed;
};

/// U_q(x, y) from a family closed form, if the family and pair have one.
/// Vertices use the family's 0-based labelling.
std::optional<double> closed_form_correlation(const FamilySpec& family, Vertex x, Vertex y,
                                              double q);

/// Z(q) from a family closed form; empty for families without one.
std::optional<LogValue> family_partition_function(const FamilySpec& family, double q);

/// Strongest exact method available, in the order enumeration (n <= 8),
/// tree inclusion-exclusion (trees with distance <= 30), family closed form.
std::optional<ExactValue> exact_correlation(const WeightedDigraph& g,
                                            const std::optional<FamilySpec>& family, Vertex x,
                                            Vertex y, double q);

struct SweepQuery {
  std::string tag;
  Vertex x = 0;
  Vertex y = 0;
};

struct SweepRow {
  double q = 0.0;
  std::string tag;
  std::optional<double> exact;
  std::optional<double> estimate;
  std::optional<double> std_error;
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
};

/// Rows sorted by q, queries in the given order within one q.
struct SweepTable {
  std::vector<SweepRow> rows;

  std::string to_csv() const;
  std::string to_json() const;
};

/// Correlation queries over a q grid. Exact values come from
/// exact_correlation; with replicas > 0 each row also gets a Monte Carlo
/// estimate seeded by derive_seed(seed, row index).
SweepTable sweep(const WeightedDigraph& g, const std::optional<FamilySpec>& family,
                 std::span<const double> q_grid, std::span<const SweepQuery> queries,
                 std::size_t replicas, std::uint64_t seed, std::size_t threads = 0);

/// Convenience: builds the family graph and sweeps it.
SweepTable sweep(const FamilySpec& family, std::span<const double> q_grid,
                 std::span<const SweepQuery> queries, std::size_t replicas, std::uint64_t seed,
                 std::size_t threads = 0);

/// Standard queries of a family: center/leaf pairs for stars, bridge and
/// clique pairs for the bottleneck, end points for paths and cycles.
std::vector<SweepQuery> family_queries(const FamilySpec& family);

/// `count` points spaced evenly in log between lo and hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Parent-child pair of a hierarchical tree across one generation-g edge.
struct LayerExperiment {
  std::size_t generation = 1;  // generation of the edge's child
  std::size_t leaf_distance = 0;  // k: distance from the child to the leaves
  Vertex parent = 0;
  Vertex child = 1;
  double threshold = 0.0;  // d^{-k} w(e)
  std::optional<double> crossing;  // q where U crosses 1/2, refined by bisection
  SweepTable table;
};

/// Sweeps U_q(parent, child) with u_tree_exact (plus Monte Carlo if
/// replicas > 0) for the first edge of the given generation.
LayerExperiment detect_layers_experiment(std::size_t d, std::size_t h,
                                         const std::vector<double>& weights,
                                         std::size_t generation, std::span<const double> q_grid,
                                         std::size_t replicas, std::uint64_t seed,
                                         std::size_t threads = 0);

}  // namespace lep
