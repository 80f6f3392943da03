#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lep/graph.hpp"
#include "lep/log_value.hpp"

namespace lep {

/// Signed determinant via LU with partial pivoting, accumulated in log space.
LogValue log_determinant(const Eigen::MatrixXd& m);

/// Z(q) = det(qI - L), the total weight sum_F q^{r(F)} w(F) of rooted
/// spanning forests. Throws ParameterError for q <= 0.
LogValue partition_function(const WeightedDigraph& g, double q);

/// K_q = q (qI - L)^{-1}. Row x is the law of the position where the walk
/// started at x is killed; the root set is determinantal with this kernel.
struct GreenKernel {
  double q = 0.0;
  Eigen::MatrixXd k;
};

GreenKernel green_kernel(const WeightedDigraph& g, double q);

/// P(A is contained in the root set) = det of K_q restricted to A.
double roots_marginal(const GreenKernel& kernel, std::span<const Vertex> a);

/// Eigenvalues of -L sorted ascending (real parts for non-symmetric L).
std::vector<double> laplacian_spectrum(const WeightedDigraph& g);

/// E[number of roots] = sum_i q / (q + lambda_i).
double expected_root_count(const WeightedDigraph& g, double q);

/// Law of the root count: pmf over {0..n} of a sum of independent
/// Bernoulli(q / (q + lambda_i)) variables.
std::vector<double> root_count_law(const WeightedDigraph& g, double q);

/// P_x(tau_y < tau_q): the walk from x reaches y before an independent
/// exponential clock of rate q rings. Dense solve over V \ {y}.
double hitting_prob(const WeightedDigraph& g, Vertex x, Vertex y, double q);

/// U_q(x, y) for adjacent x, y in a tree, from the two hitting
/// probabilities p = P_x(tau_y < tau_q) and r = P_y(tau_x < tau_q):
/// (1 - p - r + p r) / (1 - p r).
double u_adjacent_tree(const WeightedDigraph& g, Vertex x, Vertex y, double q);

/// Longest x--y path accepted by u_tree_exact; beyond it the alternating
/// sum loses too many digits.
inline constexpr std::size_t kMaxTreeDistance = 30;

/// U_q(x, y) on a tree by inclusion-exclusion over the edges of the x--y
/// path: each subset I of cut edges contributes (-1)^{|I|+1} times the
/// product of the partition functions of the resulting components.
double u_tree_exact(const WeightedDigraph& g, Vertex x, Vertex y, double q);

/// P((x, y) in Phi_q) = w(x,y) (k_xx - k_yx) with k = (qI - L)^{-1}.
double edge_probability_kernel(const WeightedDigraph& g, Vertex x, Vertex y, double q);

/// P((x, y) in Phi_q) = w(x,y) Z_{G/e}(q) / Z_G(q) using directed contraction.
double edge_probability_contraction(const WeightedDigraph& g, Vertex x, Vertex y, double q);

}  // namespace lep
