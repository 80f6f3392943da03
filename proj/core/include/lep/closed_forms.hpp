#pragma once

#include <cstddef>
#include <optional>

#include "lep/log_value.hpp"

namespace lep {

// Path vertices in this header use 1-based labels 1..n, matching the
// natural indexing of sub-path lengths; family graphs use 0..n-1.

enum class PathMethod {
  combinatorial,  // sum_k C(n+k-1, 2k-1) q^k
  spectral,       // prod_k (q + 2 - 2 cos(pi (n-k) / n)), n <= kMaxSpectralPath
  closed,         // q (l+^n - l-^n) / sqrt(q^2 + 4q), l+- = (q + 2 +- sqrt(q^2 + 4q)) / 2
  chebyshev,      // q U_{n-1}(q/2 + 1) = q sinh(n t) / sinh(t), t = acosh(q/2 + 1)
  recurrence,     // Z_k = (q+2) Z_{k-1} - Z_{k-2}, rescaled by l+ each step
};

inline constexpr std::size_t kMaxSpectralPath = 10000;

/// Partition function of the n-vertex path. Z_0 = 0 is accepted so that
/// boundary terms of u_path need no special case; other methods need n >= 1.
LogValue z_path(std::size_t n, double q, PathMethod method = PathMethod::closed);

/// Z_k - Z_{k-1} for k >= 1 (so q at k = 1), without cancellation.
LogValue z_path_increment(std::size_t k, double q);

/// Cycle on n >= 3 vertices: Z_n + (2/q)(Z_n - Z_{n-1}) - 2.
LogValue z_cycle(std::size_t n, double q);

/// Cycle on n >= 3 vertices: sum_k (C(n+k, 2k) + C(n+k-1, 2k)) q^k.
LogValue z_cycle_combinatorial(std::size_t n, double q);

/// U_q(x, y) on the n-vertex path for 1 <= x < y <= n, d = y - x:
/// 1 - Z_{n-d}/Z_n - d (Z_x - Z_{x-1})(Z_{n-y+1} - Z_{n-y}) / (q Z_n).
/// Clamped to [0, 1]; warns when the raw value leaves [-1e-8, 1 + 1e-8].
double u_path(std::size_t n, std::size_t x, std::size_t y, double q);

/// Unclamped value of the same expression.
double u_path_raw(std::size_t n, std::size_t x, std::size_t y, double q);

/// Non-normalised measures Z * P(.) on the n-vertex path with boundary
/// vertices b = 1, b' = n and vertex x.
struct PathRootMeasures {
  LogValue z;                // Z_n
  LogValue boundary;         // b in R: Z_n - Z_{n-1}
  LogValue both_boundaries;  // b, b' in R: q Z_{n-1}
  LogValue vertex;           // x in R: M_{d+1}(b) M_{n-d}(b) / q, d = dist(x, boundary)
};

PathRootMeasures path_root_measures(std::size_t n, std::size_t x, double q);

/// P(|S_m| < a) for the simple random walk S started at 0.
double simple_rw_band_prob(std::size_t m, double a);

/// P(|S_m| > a).
double simple_rw_tail_prob(std::size_t m, double a);

/// Random-walk bounds on U_q(x, y) for path vertices at distance d.
/// The lower bound is present only when P(|S_m| < d/2) >= 1/2.
struct RwBounds {
  std::optional<double> lower;
  double upper = 1.0;
};

RwBounds path_rw_bounds(std::size_t d, double q, std::size_t m);

enum class PathRegimeKind { bulk, boundary, degenerate_zero, degenerate_one };

/// Placement of a pair at distance ~ 2 delta sqrt(n) with q ~ 1/d^2. In the
/// boundary regime the pair's midpoint sits alpha sqrt(n) from an end.
struct PathRegime {
  PathRegimeKind kind = PathRegimeKind::bulk;
  double alpha = 0.0;
  double delta = 0.0;
};

struct RegimeLimit {
  PathRegime regime;
  double value = 0.0;
};

/// bulk: 1 - 3/(2e); boundary: 1 - 3/(2e) - exp(-alpha/delta)/2, which
/// requires alpha >= delta > 0; degenerate regimes: 0 or 1.
RegimeLimit path_asymptotic_limit(const PathRegime& regime);

/// Concrete finite-n instance of a regime: 1-based x < y with
/// d = floor(2 delta sqrt(n)), midpoint n/2 (bulk) or alpha sqrt(n)
/// (boundary, x clipped to 1), and q = 1/d^2.
struct PathPair {
  std::size_t x = 1;
  std::size_t y = 2;
  double q = 1.0;
};

PathPair path_regime_pair(std::size_t n, const PathRegime& regime);

// ---------------------------------------------------------------------------
// Star: center 0 joined to n-1 leaves by edges of weight w.

struct StarQuantities {
  LogValue z;                // q (q+w)^{n-2} (q+nw)
  double u_center_leaf = 0;  // q (q + (n-1)w) / ((q+w)(q+nw))
  double u_leaf_leaf = 0;    // q (q^2 + (n+2)wq + 2(n-1)w^2) / ((q+w)^2 (q+nw))
};

StarQuantities star_quantities(std::size_t n, double w, double q);

/// n -> infinity limits for q = qbar n^alpha, w = wbar n^beta.
struct StarLimits {
  double center_leaf = 0;
  double leaf_leaf = 0;
};

StarLimits star_limits(double alpha, double beta, double qbar = 1.0, double wbar = 1.0);

// ---------------------------------------------------------------------------
// Community star: center 0, k leaves of weight 1 (V1), n-1-k leaves of
// weight w (Vw). Quantities for pair types with no members are empty.

struct CommunityStarQuantities {
  LogValue z;
  std::optional<double> u_center_v1;
  std::optional<double> u_center_vw;
  std::optional<double> u_v1_v1;
  std::optional<double> u_v1_vw;
  std::optional<double> u_vw_vw;
};

CommunityStarQuantities community_star_quantities(std::size_t n, std::size_t k, double w,
                                                  double q);

/// n -> infinity limits for q = n^alpha, w = n^beta, k fixed: center to a
/// weight-1 leaf and center to a weight-w leaf.
struct CommunityStarLimits {
  double center_v1 = 0;
  double center_vw = 0;
};

CommunityStarLimits community_star_limits(double alpha, double beta, std::size_t k);

// ---------------------------------------------------------------------------
// Bottleneck: cliques of sizes n and m with unit weights, bridge b -- b' of
// weight w.

struct BottleneckQuantities {
  LogValue z;             // q (q(q+n)(q+m) + w(q+1)(2q+n+m)) (q+n)^{n-2} (q+m)^{m-2}
  double u_bridge = 0.0;  // q(q+n)(q+m) / (q(q+n)(q+m) + w(q+1)(2q+n+m))
};

BottleneckQuantities bottleneck_quantities(std::size_t n, std::size_t m, double w, double q);

/// q at which the bridge correlation U(b, b') equals 1/2.
double bottleneck_half_crossing(std::size_t n, std::size_t m, double w);

/// Growth exponents in n: q = n^q_exp, w = n^w_exp, m = n^m_exp with
/// 0 <= m_exp <= 1. When m_exp == 1, m ~ m_ratio * n with m_ratio in (0, 1].
struct BottleneckScaling {
  double q_exp = 0.0;
  double w_exp = 0.0;
  double m_exp = 1.0;
  double m_ratio = 1.0;
};

/// Limits of the two-point correlations. Empty where the exponents sit on
/// a regime boundary the limit theorem does not resolve.
struct BottleneckLimits {
  std::optional<double> bridge;          // U(b, b')
  std::optional<double> within_large;    // U(x, x'), both in the n-clique
  std::optional<double> within_small;    // U(y, y'), both in the m-clique
  std::optional<double> bridge_large;    // U(b, x), x in the n-clique
  std::optional<double> bridge_small;    // U(b', y), y in the m-clique
  std::optional<double> across;          // U(x, y)
};

BottleneckLimits bottleneck_limits(const BottleneckScaling& s);

// ---------------------------------------------------------------------------
// Complete graph on n vertices with unit weights.

/// q (q+n)^{n-1}.
LogValue z_complete(std::size_t n, double q);

/// Non-normalised measure of {U subset of R} for |U| = r: q^r (q+r)(q+n)^{n-r-1}.
LogValue complete_rooting_measure(std::size_t n, std::size_t r, double q);

}  // namespace lep
