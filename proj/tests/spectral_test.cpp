#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "lep/errors.hpp"
#include "lep/family.hpp"
#include "lep/forest_enum.hpp"
#include "lep/spectral.hpp"
#include "oracles.hpp"

namespace lep {
namespace {

using testing::oracle_forests;
using testing::oracle_probability;
using testing::oracle_tree_u;
using testing::oracle_u;
using testing::oracle_z;
using testing::OracleForest;

std::vector<WeightedDigraph> tiny_graphs() {
  return {
      make_family(PathFamily{1}),
      make_family(PathFamily{4}),
      make_family(CycleFamily{3}),
      make_family(CycleFamily{5}),
      make_family(StarFamily{5, 0.5}),
      make_family(CommunityStarFamily{5, 2, 3.0}),
      make_family(CompleteFamily{4}),
      make_family(BottleneckFamily{2, 3, 0.2}),
      // Directed and asymmetric: a 3-cycle with a chord and uneven rates.
      WeightedDigraph(4, {{0, 1, 2.0}, {1, 2, 0.5}, {2, 0, 1.0}, {2, 3, 3.0}, {3, 1, 0.25}}),
      WeightedDigraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}),
  };
}

TEST(PartitionFunction, Examples) {
  EXPECT_NEAR(partition_function(make_family(PathFamily{1}), 2.0).to_double(), 2.0, 1e-14);
  EXPECT_NEAR(partition_function(make_family(PathFamily{3}), 1.0).to_double(), 8.0, 1e-12);
  EXPECT_NEAR(partition_function(make_family(StarFamily{4, 1.0}), 1.0).to_double(), 20.0, 1e-12);
  EXPECT_THROW(partition_function(make_family(PathFamily{3}), 0.0), ParameterError);
  EXPECT_THROW(partition_function(make_family(PathFamily{3}), -1.0), ParameterError);
}

TEST(PartitionFunction, MatchesForestSum) {
  for (const auto& g : tiny_graphs()) {
    const auto forests = oracle_forests(g);
    for (double q : {0.1, 1.0, 10.0}) {
      const double z = oracle_z(forests, q);
      EXPECT_NEAR(partition_function(g, q).to_double() / z, 1.0, 1e-10);
    }
  }
}

TEST(PartitionFunction, DeletionContraction) {
  for (const auto& g : tiny_graphs()) {
    for (const Edge& e : g.edges()) {
      for (double q : {0.3, 1.0, 4.0}) {
        const double lhs = partition_function(g, q).to_double();
        const double rhs = partition_function(delete_edge(g, e.src, e.dst), q).to_double() +
                           e.weight * partition_function(contract_edge(g, e.src, e.dst), q).to_double();
        EXPECT_NEAR(rhs / lhs, 1.0, 1e-10);
      }
    }
  }
}

TEST(PartitionFunction, LargeGraphsStayInLogSpace) {
  const LogValue z = partition_function(make_family(CompleteFamily{600}), 1.0);
  // q (q + n)^{n-1}
  EXPECT_NEAR(z.logmag(), 599.0 * std::log(601.0), 1e-8 * z.logmag());
  EXPECT_FALSE(z.representable());
}

TEST(GreenKernel, Examples) {
  EXPECT_NEAR(green_kernel(make_family(PathFamily{1}), 3.0).k(0, 0), 1.0, 1e-15);
  const GreenKernel k = green_kernel(make_family(PathFamily{2}), 2.0);
  EXPECT_NEAR(k.k(0, 0), 0.75, 1e-14);
  EXPECT_NEAR(k.k(0, 1), 0.25, 1e-14);
  EXPECT_NEAR(k.k(1, 0), 0.25, 1e-14);
  EXPECT_NEAR(k.k(1, 1), 0.75, 1e-14);
}

TEST(GreenKernel, InverseRowSumsAndRange) {
  for (const auto& g : tiny_graphs()) {
    for (double q : {0.1, 1.0, 10.0}) {
      const GreenKernel k = green_kernel(g, q);
      Eigen::MatrixXd m = -laplacian(g);
      m.diagonal().array() += q;
      const auto n = static_cast<Eigen::Index>(g.size());
      EXPECT_TRUE((m * k.k / q).isApprox(Eigen::MatrixXd::Identity(n, n), 1e-9));
      for (Eigen::Index i = 0; i < n; ++i) {
        EXPECT_NEAR(k.k.row(i).sum(), 1.0, 1e-9);
      }
      EXPECT_GE(k.k.minCoeff(), -1e-12);
      EXPECT_LE(k.k.maxCoeff(), 1.0 + 1e-12);
    }
  }
}

TEST(RootsMarginal, Examples) {
  const GreenKernel one = green_kernel(make_family(PathFamily{1}), 0.4);
  const std::vector<Vertex> a0 = {0};
  EXPECT_NEAR(roots_marginal(one, a0), 1.0, 1e-14);
  const GreenKernel k = green_kernel(make_family(PathFamily{2}), 2.0);
  EXPECT_NEAR(roots_marginal(k, a0), 0.75, 1e-14);
  const std::vector<Vertex> both = {0, 1};
  EXPECT_NEAR(roots_marginal(k, both), 0.5, 1e-14);
  EXPECT_THROW(roots_marginal(k, std::vector<Vertex>{}), ParameterError);
  EXPECT_THROW(roots_marginal(k, std::vector<Vertex>{0, 0}), ParameterError);
}

TEST(RootsMarginal, DeterminantalAgainstForestSum) {
  for (const auto& g : tiny_graphs()) {
    const auto forests = oracle_forests(g);
    for (double q : {0.1, 1.0, 10.0}) {
      const GreenKernel k = green_kernel(g, q);
      for (Vertex x = 0; x < g.size(); ++x) {
        const std::vector<Vertex> a = {x};
        const double brute = oracle_probability(
            forests, q, [x](const OracleForest& f) { return f.parent[x] == -1; });
        EXPECT_NEAR(roots_marginal(k, a), brute, 1e-10);
        for (Vertex y = x + 1; y < g.size(); ++y) {
          const std::vector<Vertex> ab = {x, y};
          const double pair = oracle_probability(forests, q, [x, y](const OracleForest& f) {
            return f.parent[x] == -1 && f.parent[y] == -1;
          });
          EXPECT_NEAR(roots_marginal(k, ab), pair, 1e-10);
        }
      }
    }
  }
}

TEST(Spectrum, Examples) {
  const auto p2 = laplacian_spectrum(make_family(PathFamily{2}));
  ASSERT_EQ(p2.size(), 2u);
  EXPECT_NEAR(p2[0], 0.0, 1e-14);
  EXPECT_NEAR(p2[1], 2.0, 1e-14);

  const auto k3 = laplacian_spectrum(make_family(CompleteFamily{3}));
  ASSERT_EQ(k3.size(), 3u);
  EXPECT_NEAR(k3[0], 0.0, 1e-13);
  EXPECT_NEAR(k3[1], 3.0, 1e-13);
  EXPECT_NEAR(k3[2], 3.0, 1e-13);

  const std::size_t n = 9;
  const auto pn = laplacian_spectrum(make_family(PathFamily{n}));
  std::vector<double> expected;
  for (std::size_t k = 1; k <= n; ++k) {
    expected.push_back(2.0 - 2.0 * std::cos(M_PI * static_cast<double>(n - k) / n));
  }
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(pn[i], expected[i], 1e-12);
  }
}

TEST(RootCount, ExpectationExamplesAndTrace) {
  for (double q : {0.01, 1.0, 100.0}) {
    EXPECT_NEAR(expected_root_count(make_family(PathFamily{1}), q), 1.0, 1e-14);
  }
  EXPECT_NEAR(expected_root_count(make_family(PathFamily{2}), 2.0), 1.5, 1e-14);
  for (const auto& g : tiny_graphs()) {
    if (!g.is_symmetric()) {
      continue;
    }
    for (double q : {0.1, 1.0, 10.0}) {
      const double trace = green_kernel(g, q).k.trace();
      EXPECT_NEAR(expected_root_count(g, q) / trace, 1.0, 1e-9);
    }
    const double n = static_cast<double>(g.size());
    EXPECT_NEAR(expected_root_count(g, 1e6), n, 1e-3 * std::max(1.0, g.out_weight(0)));
  }
}

TEST(RootCount, LawMatchesForestSum) {
  for (const auto& g : tiny_graphs()) {
    if (!g.is_symmetric()) {
      continue;
    }
    const auto forests = oracle_forests(g);
    for (double q : {0.3, 2.0}) {
      const auto law = root_count_law(g, q);
      ASSERT_EQ(law.size(), g.size() + 1);
      for (std::size_t r = 0; r <= g.size(); ++r) {
        const double brute = oracle_probability(
            forests, q, [r](const OracleForest& f) { return static_cast<std::size_t>(f.roots) == r; });
        EXPECT_NEAR(law[r], brute, 1e-10);
      }
    }
  }
}

TEST(HittingProb, Examples) {
  for (double q : {0.1, 1.0, 7.0}) {
    EXPECT_NEAR(hitting_prob(make_family(PathFamily{2}), 0, 1, q), 1.0 / (1.0 + q), 1e-14);
  }
  // 1 cannot reach 0.
  EXPECT_EQ(hitting_prob(WeightedDigraph(2, {{0, 1, 1.0}}), 1, 0, 1.0), 0.0);
  EXPECT_NEAR(hitting_prob(make_family(CycleFamily{6}), 0, 3, 1e-9), 1.0, 1e-6);
  EXPECT_THROW(hitting_prob(make_family(PathFamily{2}), 0, 0, 1.0), ParameterError);
}

TEST(AdjacentTree, Examples) {
  const WeightedDigraph p2 = make_family(PathFamily{2});
  for (double q : {0.1, 1.0, 7.0}) {
    EXPECT_NEAR(u_adjacent_tree(p2, 0, 1, q), q / (q + 2.0), 1e-14);
    EXPECT_NEAR(u_adjacent_tree(p2, 0, 1, q), q * q / (q * q + 2.0 * q), 1e-14);
  }
  EXPECT_NEAR(u_adjacent_tree(p2, 0, 1, 1e9), 1.0, 1e-6);
  EXPECT_NEAR(u_adjacent_tree(make_family(StarFamily{4, 1.0}), 0, 1, 1.0), 0.4, 1e-14);
  EXPECT_THROW(u_adjacent_tree(make_family(CycleFamily{4}), 0, 1, 1.0), StructureError);
  EXPECT_THROW(u_adjacent_tree(make_family(PathFamily{3}), 0, 2, 1.0), ParameterError);
}

TEST(TreeExact, Examples) {
  for (double q : {0.1, 1.0, 7.0}) {
    EXPECT_NEAR(u_tree_exact(make_family(PathFamily{2}), 0, 1, q), q / (q + 2.0), 1e-14);
  }
  for (std::size_t n : {3, 5, 9}) {
    for (double w : {0.5, 2.0}) {
      for (double q : {0.2, 1.0, 5.0}) {
        const double nn = static_cast<double>(n);
        const double leaves =
            q * (q * q + (nn + 2) * w * q + 2 * (nn - 1) * w * w) / ((q + w) * (q + w) * (q + nn * w));
        EXPECT_NEAR(u_tree_exact(make_family(StarFamily{n, w}), 1, 2, q), leaves, 1e-12);
      }
    }
  }
  EXPECT_NEAR(u_tree_exact(make_family(PathFamily{4}), 0, 3, 1.0),
              oracle_u(make_family(PathFamily{4}), 0, 3, 1.0), 1e-10);
  EXPECT_THROW(u_tree_exact(make_family(CycleFamily{4}), 0, 2, 1.0), StructureError);
  EXPECT_THROW(u_tree_exact(make_family(PathFamily{40}), 0, 35, 1.0), SizeError);
}

TEST(TreeExact, MatchesSubsetEnumerationOracle) {
  std::mt19937_64 gen(0x51eb);
  for (int trial = 0; trial < 20; ++trial) {
    const WeightedDigraph t = testing::random_tree(12, gen);
    for (Vertex x = 0; x < t.size(); x += 3) {
      for (Vertex y = x + 1; y < t.size(); y += 2) {
        for (double q : {0.05, 1.0, 20.0}) {
          EXPECT_NEAR(u_tree_exact(t, x, y, q), oracle_tree_u(t, x, y, q), 1e-9);
        }
      }
    }
  }
}

TEST(TreeExact, MatchesForestEnumeration) {
  std::mt19937_64 gen(0xf0e5);
  for (int trial = 0; trial < 5; ++trial) {
    const WeightedDigraph t = testing::random_tree(6, gen);
    const auto forests = oracle_forests(t);
    for (Vertex x = 0; x < t.size(); ++x) {
      for (Vertex y = x + 1; y < t.size(); ++y) {
        for (double q : {0.3, 1.0, 3.0}) {
          const double brute = oracle_probability(forests, q, [x, y](const OracleForest& f) {
            return testing::oracle_root(f, static_cast<int>(x)) !=
                   testing::oracle_root(f, static_cast<int>(y));
          });
          EXPECT_NEAR(u_tree_exact(t, x, y, q), brute, 1e-10);
        }
      }
    }
  }
}

TEST(TreeExact, AgreesWithHittingTimesOnAdjacentPairs) {
  std::mt19937_64 gen(0xad7);
  for (int trial = 0; trial < 10; ++trial) {
    const WeightedDigraph t = testing::random_tree(25, gen);
    for (const Edge& e : t.edges()) {
      if (e.src > e.dst) {
        continue;
      }
      for (double q : {0.01, 0.5, 30.0}) {
        const double a = u_tree_exact(t, e.src, e.dst, q);
        const double b = u_adjacent_tree(t, e.src, e.dst, q);
        EXPECT_NEAR(a, b, 1e-9 * std::max(a, b));
      }
    }
  }
}

TEST(TreeExact, MonotoneInIntensityWithLimits) {
  std::mt19937_64 gen(0x3070);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 49;
    const WeightedDigraph t = testing::random_tree(n, gen);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    Vertex x = pick(gen);
    Vertex y = pick(gen);
    if (x == y) {
      y = (x + 1) % n;
    }
    if (tree_path(t, x, y).size() - 1 > kMaxTreeDistance) {
      continue;
    }
    double prev = -1.0;
    for (int i = 0; i < 100; ++i) {
      const double q = std::pow(10.0, -6.0 + 12.0 * i / 99.0);
      const double u = u_tree_exact(t, x, y, q);
      EXPECT_GE(u, prev - 1e-12);
      prev = u;
    }
    EXPECT_LT(u_tree_exact(t, x, y, 1e-9), 1e-6);
    EXPECT_GT(u_tree_exact(t, x, y, 1e9), 1.0 - 1e-6);
  }
}

TEST(EdgeProbability, ThreeExpressionsAndBound) {
  for (const auto& g : tiny_graphs()) {
    const auto forests = oracle_forests(g);
    for (double q : {0.2, 1.0, 5.0}) {
      for (const Edge& e : g.edges()) {
        const int x = static_cast<int>(e.src);
        const int y = static_cast<int>(e.dst);
        const double brute =
            oracle_probability(forests, q, [x, y](const OracleForest& f) { return f.parent[x] == y; });
        EXPECT_NEAR(edge_probability_kernel(g, e.src, e.dst, q), brute, 1e-10);
        EXPECT_NEAR(edge_probability_contraction(g, e.src, e.dst, q), brute, 1e-10);
        EXPECT_LE(brute, e.weight / (q + e.weight) + 1e-12);
      }
    }
  }
}

TEST(LogDeterminant, SignAndMagnitude) {
  Eigen::Matrix2d m;
  m << 0, 2, 3, 0;
  const LogValue d = log_determinant(m);
  EXPECT_EQ(d.sign(), -1);
  EXPECT_NEAR(d.to_double(), -6.0, 1e-14);
  EXPECT_TRUE(log_determinant(Eigen::MatrixXd::Zero(2, 2)).is_zero());
  EXPECT_EQ(log_determinant(Eigen::MatrixXd(0, 0)), LogValue::one());
  EXPECT_THROW(log_determinant(Eigen::MatrixXd::Zero(2, 3)), ParameterError);
}

}  // namespace
}  // namespace lep
