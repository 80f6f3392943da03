#include "lep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "lep/errors.hpp"

namespace lep {
namespace {

void require_intensity(double q, const char* where) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw ParameterError(std::string(where) + ": q must be positive and finite");
  }
}

void require_vertex(const WeightedDigraph& g, Vertex v, const char* where) {
  if (v >= g.size()) {
    throw ParameterError(std::string(where) + ": vertex " + std::to_string(v) + " out of range");
  }
}

Eigen::MatrixXd shifted_generator(const WeightedDigraph& g, double q) {
  Eigen::MatrixXd m = -laplacian(g);
  m.diagonal().array() += q;
  return m;
}

}  // namespace

LogValue log_determinant(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw ParameterError("log_determinant: matrix must be square");
  }
  if (m.rows() == 0) {
    return LogValue::one();
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const Eigen::MatrixXd& packed = lu.matrixLU();
  int sign = static_cast<int>(lu.permutationP().determinant());
  double logmag = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double u = packed(i, i);
    if (u == 0.0) {
      return LogValue::zero();
    }
    if (u < 0.0) {
      sign = -sign;
    }
    logmag += std::log(std::abs(u));
  }
  return LogValue::from_log(logmag, sign);
}

LogValue partition_function(const WeightedDigraph& g, double q) {
  require_intensity(q, "partition_function");
  LogValue z = log_determinant(shifted_generator(g, q));
  if (z.sign() <= 0) {
    throw NumericError("partition_function: non-positive determinant");
  }
  return z;
}

GreenKernel green_kernel(const WeightedDigraph& g, double q) {
  require_intensity(q, "green_kernel");
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted_generator(g, q));
  GreenKernel out;
  out.q = q;
  out.k = lu.solve(q * Eigen::MatrixXd::Identity(n, n));
  if (!out.k.allFinite()) {
    throw NumericError("green_kernel: factorization failed");
  }
  return out;
}

double roots_marginal(const GreenKernel& kernel, std::span<const Vertex> a) {
  if (a.empty()) {
    throw ParameterError("roots_marginal: vertex set must be nonempty");
  }
  const auto m = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd sub(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (a[i] >= static_cast<Vertex>(kernel.k.rows())) {
      throw ParameterError("roots_marginal: vertex out of range");
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i != j && a[i] == a[j]) {
        throw ParameterError("roots_marginal: vertices must be distinct");
      }
      sub(i, j) = kernel.k(static_cast<Eigen::Index>(a[i]), static_cast<Eigen::Index>(a[j]));
    }
  }
  return log_determinant(sub).to_double();
}

std::vector<double> laplacian_spectrum(const WeightedDigraph& g) {
  const Eigen::MatrixXd neg = -laplacian(g);
  std::vector<double> values;
  if (g.size() == 0) {
    return values;
  }
  if (g.is_symmetric()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(neg, Eigen::EigenvaluesOnly);
    values.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(neg, false);
    for (const auto& lambda : solver.eigenvalues()) {
      values.push_back(lambda.real());
    }
  }
  std::sort(values.begin(), values.end());
  return values;
}

double expected_root_count(const WeightedDigraph& g, double q) {
  require_intensity(q, "expected_root_count");
  double total = 0.0;
  for (double lambda : laplacian_spectrum(g)) {
    total += q / (q + lambda);
  }
  return total;
}

std::vector<double> root_count_law(const WeightedDigraph& g, double q) {
  require_intensity(q, "root_count_law");
  std::vector<double> pmf = {1.0};
  for (double lambda : laplacian_spectrum(g)) {
    const double p = std::clamp(q / (q + std::max(lambda, 0.0)), 0.0, 1.0);
    std::vector<double> next(pmf.size() + 1, 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      next[k] += pmf[k] * (1.0 - p);
      next[k + 1] += pmf[k] * p;
    }
    pmf = std::move(next);
  }
  return pmf;
}

double hitting_prob(const WeightedDigraph& g, Vertex x, Vertex y, double q) {
  require_intensity(q, "hitting_prob");
  require_vertex(g, x, "hitting_prob");
  require_vertex(g, y, "hitting_prob");
  if (x == y) {
    throw ParameterError("hitting_prob: x and y must differ");
  }
  const std::size_t n = g.size();
  // Unknowns are h(v) for v != y, indexed by skipping y.
  auto idx = [y](Vertex v) { return static_cast<Eigen::Index>(v < y ? v : v - 1); };
  const auto m = static_cast<Eigen::Index>(n - 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  for (Vertex v = 0; v < n; ++v) {
    if (v == y) {
      continue;
    }
    a(idx(v), idx(v)) = q + g.out_weight(v);
    for (const Edge& e : g.out_edges(v)) {
      if (e.dst == y) {
        b(idx(v)) += e.weight;
      } else {
        a(idx(v), idx(e.dst)) -= e.weight;
      }
    }
  }
  Eigen::VectorXd h = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(b);
  const double value = h(idx(x));
  if (!std::isfinite(value)) {
    throw NumericError("hitting_prob: singular system");
  }
  return std::clamp(value, 0.0, 1.0);
}

double u_adjacent_tree(const WeightedDigraph& g, Vertex x, Vertex y, double q) {
  require_vertex(g, x, "u_adjacent_tree");
  require_vertex(g, y, "u_adjacent_tree");
  if (!is_undirected_tree(g)) {
    throw StructureError("u_adjacent_tree: graph is not a tree");
  }
  if (!g.has_edge(x, y)) {
    throw ParameterError("u_adjacent_tree: x and y are not adjacent");
  }
  const double p = hitting_prob(g, x, y, q);
  const double r = hitting_prob(g, y, x, q);
  const double denom = 1.0 - p * r;
  if (denom <= 0.0) {
    // Both walks return with certainty only in the q -> 0 limit.
    return 0.0;
  }
  return std::clamp((1.0 - p) * (1.0 - r) / denom, 0.0, 1.0);
}

double edge_probability_kernel(const WeightedDigraph& g, Vertex x, Vertex y, double q) {
  require_vertex(g, x, "edge_probability_kernel");
  require_vertex(g, y, "edge_probability_kernel");
  const GreenKernel kernel = green_kernel(g, q);
  const auto xi = static_cast<Eigen::Index>(x);
  const auto yi = static_cast<Eigen::Index>(y);
  return g.weight(x, y) * (kernel.k(xi, xi) - kernel.k(yi, xi)) / q;
}

double edge_probability_contraction(const WeightedDigraph& g, Vertex x, Vertex y, double q) {
  require_vertex(g, x, "edge_probability_contraction");
  require_vertex(g, y, "edge_probability_contraction");
  const double w = g.weight(x, y);
  if (w == 0.0) {
    return 0.0;
  }
  const LogValue ratio = partition_function(contract_edge(g, x, y), q) / partition_function(g, q);
  return w * ratio.to_double();
}

}  // namespace lep
