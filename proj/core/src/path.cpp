#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lep/closed_forms.hpp"
#include "lep/diagnostics.hpp"
#include "lep/errors.hpp"

namespace lep {
namespace {

void require_intensity(double q, const char* where) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw ParameterError(std::string(where) + ": q must be positive and finite");
  }
}

double log_binomial(double a, double b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

// log(sum exp(terms)); every term is a finite log-magnitude.
double log_sum_exp(const std::vector<double>& terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) {
    acc += std::exp(t - top);
  }
  return top + std::log(acc);
}

double log_add_exp(double a, double b) {
  const double top = std::max(a, b);
  return top + std::log1p(std::exp(std::min(a, b) - top));
}

// Roots of l^2 - (q+2) l + 1: l+ l- = 1, so log l- = -log l+.
struct PathRoots {
  double s;        // sqrt(q^2 + 4q)
  double log_lp;   // log l+ = log1p((q + s) / 2)
};

PathRoots path_roots(double q) {
  const double s = std::sqrt(q) * std::sqrt(q + 4.0);
  return {s, std::log1p(0.5 * (q + s))};
}

// log sinh(x) for x > 0.
double log_sinh(double x) {
  return x - std::numbers::ln2 + std::log(-std::expm1(-2.0 * x));
}

LogValue z_combinatorial(std::size_t n, double q) {
  std::vector<double> terms;
  terms.reserve(n);
  const double lq = std::log(q);
  const auto nd = static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto kd = static_cast<double>(k);
    terms.push_back(log_binomial(nd + kd - 1.0, 2.0 * kd - 1.0) + kd * lq);
  }
  return LogValue::from_log(log_sum_exp(terms));
}

LogValue z_spectral(std::size_t n, double q) {
  if (n > kMaxSpectralPath) {
    throw SizeError("z_path: spectral product limited to n <= " +
                    std::to_string(kMaxSpectralPath));
  }
  // 2 - 2 cos(t) = 4 sin^2(t / 2) keeps the small eigenvalues accurate.
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double half = std::numbers::pi * static_cast<double>(j) / (2.0 * static_cast<double>(n));
    const double sn = std::sin(half);
    acc += std::log(q + 4.0 * sn * sn);
  }
  return LogValue::from_log(acc);
}

LogValue z_closed(std::size_t n, double q) {
  const PathRoots r = path_roots(q);
  const double kl = static_cast<double>(n) * r.log_lp;
  return LogValue::from_log(std::log(q) + kl - std::log(r.s) + std::log(-std::expm1(-2.0 * kl)));
}

LogValue z_chebyshev(std::size_t n, double q) {
  const double theta = std::acosh(0.5 * q + 1.0);
  return LogValue::from_log(std::log(q) + log_sinh(static_cast<double>(n) * theta) -
                            std::log(std::sinh(theta)));
}

LogValue z_recurrence(std::size_t n, double q) {
  // a_k = Z_k / l+^k obeys a_k = ((q+2) a_{k-1} - a_{k-2} / l+) / l+.
  const PathRoots r = path_roots(q);
  const double lp = std::exp(r.log_lp);
  double prev = 0.0;
  double cur = q / lp;
  for (std::size_t k = 2; k <= n; ++k) {
    const double next = ((q + 2.0) * cur - prev / lp) / lp;
    prev = cur;
    cur = next;
  }
  return LogValue::from_log(std::log(cur) + static_cast<double>(n) * r.log_lp);
}

}  // namespace

LogValue z_path(std::size_t n, double q, PathMethod method) {
  require_intensity(q, "z_path");
  if (n == 0) {
    return LogValue::zero();
  }
  switch (method) {
    case PathMethod::combinatorial:
      return z_combinatorial(n, q);
    case PathMethod::spectral:
      return z_spectral(n, q);
    case PathMethod::closed:
      return z_closed(n, q);
    case PathMethod::chebyshev:
      return z_chebyshev(n, q);
    case PathMethod::recurrence:
      return z_recurrence(n, q);
  }
  throw ParameterError("z_path: unknown method");
}

LogValue z_path_increment(std::size_t k, double q) {
  require_intensity(q, "z_path_increment");
  if (k == 0) {
    throw ParameterError("z_path_increment: k must be at least 1");
  }
  // q/s (l+^{k-1} (l+ - 1) + l+^{-(k-1)} (1 - l-)), both terms positive.
  const PathRoots r = path_roots(q);
  const double e = static_cast<double>(k - 1) * r.log_lp;
  const double up = std::log(0.5 * (q + r.s));
  const double down = std::log(2.0 * q / (r.s + q));  // (s - q) / 2
  return LogValue::from_log(std::log(q) - std::log(r.s) + log_add_exp(e + up, -e + down));
}

LogValue z_cycle(std::size_t n, double q) {
  require_intensity(q, "z_cycle");
  if (n < 3) {
    throw ParameterError("z_cycle: n must be at least 3");
  }
  return z_path(n, q) + LogValue::from_double(2.0 / q) * z_path_increment(n, q) -
         LogValue::from_double(2.0);
}

LogValue z_cycle_combinatorial(std::size_t n, double q) {
  require_intensity(q, "z_cycle_combinatorial");
  if (n < 3) {
    throw ParameterError("z_cycle_combinatorial: n must be at least 3");
  }
  std::vector<double> terms;
  const double lq = std::log(q);
  const auto nd = static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto kd = static_cast<double>(k);
    terms.push_back(log_binomial(nd + kd, 2.0 * kd) + kd * lq);
    if (k < n) {
      terms.push_back(log_binomial(nd + kd - 1.0, 2.0 * kd) + kd * lq);
    }
  }
  return LogValue::from_log(log_sum_exp(terms));
}

double u_path_raw(std::size_t n, std::size_t x, std::size_t y, double q) {
  require_intensity(q, "u_path");
  if (x < 1 || x >= y || y > n) {
    throw ParameterError("u_path: need 1 <= x < y <= n");
  }
  const std::size_t d = y - x;
  const LogValue zn = z_path(n, q);
  const LogValue cut = z_path(n - d, q) / zn;
  const LogValue ends = LogValue::from_double(static_cast<double>(d) / q) * z_path_increment(x, q) *
                        z_path_increment(n - y + 1, q) / zn;
  return 1.0 - cut.to_double() - ends.to_double();
}

double u_path(std::size_t n, std::size_t x, std::size_t y, double q) {
  const double raw = u_path_raw(n, x, y, q);
  if (raw < -1e-8 || raw > 1.0 + 1e-8) {
    warn("u_path: value " + std::to_string(raw) + " outside [0, 1] before clamping");
  }
  return std::clamp(raw, 0.0, 1.0);
}

PathRootMeasures path_root_measures(std::size_t n, std::size_t x, double q) {
  require_intensity(q, "path_root_measures");
  if (n < 2) {
    throw ParameterError("path_root_measures: n must be at least 2");
  }
  if (x < 1 || x > n) {
    throw ParameterError("path_root_measures: x out of range");
  }
  const std::size_t d = std::min(x - 1, n - x);
  PathRootMeasures out;
  out.z = z_path(n, q);
  out.boundary = z_path_increment(n, q);
  out.both_boundaries = LogValue::from_double(q) * z_path(n - 1, q);
  out.vertex = z_path_increment(d + 1, q) * z_path_increment(n - d, q) / LogValue::from_double(q);
  return out;
}

namespace {

// Unnormalised Bin(m, 1/2) weights scaled to 1 at the mode, and their sum.
struct BinomialWeights {
  std::vector<double> w;
  double total = 0.0;
};

BinomialWeights half_binomial(std::size_t m) {
  BinomialWeights b;
  b.w.assign(m + 1, 0.0);
  const std::size_t mode = m / 2;
  b.w[mode] = 1.0;
  for (std::size_t k = mode; k < m; ++k) {
    b.w[k + 1] = b.w[k] * static_cast<double>(m - k) / static_cast<double>(k + 1);
  }
  for (std::size_t k = mode; k > 0; --k) {
    b.w[k - 1] = b.w[k] * static_cast<double>(k) / static_cast<double>(m - k + 1);
  }
  // Sum from the tails inward so small terms are not absorbed.
  std::vector<double> sorted = b.w;
  std::sort(sorted.begin(), sorted.end());
  for (double v : sorted) {
    b.total += v;
  }
  return b;
}

template <typename Keep>
double walk_probability(std::size_t m, Keep keep) {
  const BinomialWeights b = half_binomial(m);
  double acc = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    const double s = std::abs(2.0 * static_cast<double>(k) - static_cast<double>(m));
    if (keep(s)) {
      acc += b.w[k];
    }
  }
  return std::clamp(acc / b.total, 0.0, 1.0);
}

}  // namespace

double simple_rw_band_prob(std::size_t m, double a) {
  if (!(a > 0.0)) {
    throw ParameterError("simple_rw_band_prob: a must be positive");
  }
  return walk_probability(m, [a](double s) { return s < a; });
}

double simple_rw_tail_prob(std::size_t m, double a) {
  return walk_probability(m, [a](double s) { return s > a; });
}

RwBounds path_rw_bounds(std::size_t d, double q, std::size_t m) {
  require_intensity(q, "path_rw_bounds");
  if (d == 0 || m == 0) {
    throw ParameterError("path_rw_bounds: need d >= 1 and m >= 1");
  }
  // Probability that m skeleton steps all survive killing.
  const double survive = std::exp(-static_cast<double>(m) * std::log1p(0.5 * q));
  RwBounds out;
  out.upper = 1.0 - simple_rw_tail_prob(m, static_cast<double>(d)) * survive;
  const double band = simple_rw_band_prob(m, 0.5 * static_cast<double>(d));
  if (band >= 0.5) {
    const double killed = -std::expm1(-static_cast<double>(m) * std::log1p(0.5 * q));
    const double spread = 2.0 * band - 1.0;
    out.lower = killed * killed * spread * spread;
  }
  return out;
}

RegimeLimit path_asymptotic_limit(const PathRegime& regime) {
  const double bulk = 1.0 - 1.5 / std::numbers::e;
  RegimeLimit out{regime, 0.0};
  switch (regime.kind) {
    case PathRegimeKind::bulk:
      out.value = bulk;
      break;
    case PathRegimeKind::boundary:
      if (!(regime.delta > 0.0) || !(regime.alpha >= regime.delta)) {
        throw ParameterError("path_asymptotic_limit: boundary regime needs alpha >= delta > 0");
      }
      out.value = bulk - 0.5 * std::exp(-regime.alpha / regime.delta);
      break;
    case PathRegimeKind::degenerate_zero:
      out.value = 0.0;
      break;
    case PathRegimeKind::degenerate_one:
      out.value = 1.0;
      break;
  }
  return out;
}

PathPair path_regime_pair(std::size_t n, const PathRegime& regime) {
  if (!(regime.delta > 0.0)) {
    throw ParameterError("path_regime_pair: delta must be positive");
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  const auto d = static_cast<std::size_t>(std::floor(2.0 * regime.delta * root_n));
  double mid = 0.0;
  switch (regime.kind) {
    case PathRegimeKind::bulk:
      mid = 0.5 * static_cast<double>(n);
      break;
    case PathRegimeKind::boundary:
      if (!(regime.alpha >= regime.delta)) {
        throw ParameterError("path_regime_pair: boundary regime needs alpha >= delta");
      }
      mid = regime.alpha * root_n;
      break;
    default:
      throw ParameterError("path_regime_pair: degenerate regimes have no placement");
  }
  if (d == 0) {
    throw ParameterError("path_regime_pair: n too small for delta");
  }
  const double left = std::round(mid - 0.5 * static_cast<double>(d));
  PathPair p;
  p.x = left < 1.0 ? 1 : static_cast<std::size_t>(left);
  p.y = p.x + d;
  if (p.y > n) {
    throw ParameterError("path_regime_pair: pair does not fit in the path");
  }
  p.q = 1.0 / (static_cast<double>(d) * static_cast<double>(d));
  return p;
}

}  // namespace lep
