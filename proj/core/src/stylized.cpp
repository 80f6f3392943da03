#include <cmath>
#include <string>

#include "lep/closed_forms.hpp"
#include "lep/errors.hpp"

namespace lep {
namespace {

void require_positive(double v, const char* what, const char* where) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string(where) + ": " + what + " must be positive and finite");
  }
}

LogValue power(double base, double exponent) {
  return LogValue::from_log(exponent * std::log(base));
}

// Limit of a ratio that tends to 0, c or 1 as lhs < rhs, lhs == rhs, lhs > rhs.
double compare_limit(double lhs, double rhs, double critical) {
  if (lhs < rhs) {
    return 0.0;
  }
  return lhs > rhs ? 1.0 : critical;
}

}  // namespace

StarQuantities star_quantities(std::size_t n, double w, double q) {
  require_positive(q, "q", "star_quantities");
  require_positive(w, "w", "star_quantities");
  if (n < 3) {
    throw ParameterError("star_quantities: n must be at least 3");
  }
  const auto nd = static_cast<double>(n);
  StarQuantities out;
  out.z = LogValue::from_double(q) * power(q + w, nd - 2.0) * LogValue::from_double(q + nd * w);
  out.u_center_leaf = q * (q + (nd - 1.0) * w) / ((q + w) * (q + nd * w));
  out.u_leaf_leaf = q * (q * q + (nd + 2.0) * w * q + 2.0 * (nd - 1.0) * w * w) /
                    ((q + w) * (q + w) * (q + nd * w));
  return out;
}

StarLimits star_limits(double alpha, double beta, double qbar, double wbar) {
  require_positive(qbar, "qbar", "star_limits");
  require_positive(wbar, "wbar", "star_limits");
  StarLimits out;
  out.center_leaf = compare_limit(alpha, beta, qbar / (qbar + wbar));
  out.leaf_leaf =
      compare_limit(alpha, beta, qbar * (qbar + 2.0 * wbar) / ((qbar + wbar) * (qbar + wbar)));
  return out;
}

CommunityStarQuantities community_star_quantities(std::size_t n, std::size_t k, double w,
                                                  double q) {
  require_positive(q, "q", "community_star_quantities");
  require_positive(w, "w", "community_star_quantities");
  if (n < 3 || k > n - 1) {
    throw ParameterError("community_star_quantities: need n >= 3 and k <= n - 1");
  }
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  const double heavy = nd - kd;  // n - k
  const double d = q * q + (heavy * w + kd + 1.0) * q + nd * w;
  const std::size_t light = n - 1 - k;  // leaves of weight w

  CommunityStarQuantities out;
  out.z = LogValue::from_double(q) * power(q + w, heavy - 2.0) * power(q + 1.0, kd - 1.0) *
          LogValue::from_double(d);
  if (k >= 1) {
    out.u_center_v1 = q * (q * q + (heavy * w + kd) * q + (nd - 1.0) * w) / ((q + 1.0) * d);
  }
  if (light >= 1) {
    out.u_center_vw =
        q * (q * q + ((heavy - 1.0) * w + kd + 1.0) * q + (nd - 1.0) * w) / ((q + w) * d);
  }
  if (k >= 2) {
    const double num = q * q * q + (heavy * w + kd + 3.0) * q * q +
                       ((3.0 * nd - 2.0 * kd) * w + 2.0 * kd) * q + 2.0 * (nd - 1.0) * w;
    out.u_v1_v1 = q * num / ((q + 1.0) * (q + 1.0) * d);
  }
  if (k >= 1 && light >= 1) {
    const double num = q * q * q + ((heavy + 1.0) * w + kd + 2.0) * q * q +
                       (heavy * w * w + (2.0 * nd - 1.0) * w + kd + 1.0) * q +
                       (nd - 1.0) * w * (1.0 + w);
    out.u_v1_vw = q * num / ((q + 1.0) * (q + w) * d);
  }
  if (light >= 2) {
    const double num = q * q * q + ((heavy + 2.0) * w + kd + 1.0) * q * q +
                       ((nd + 2.0 * kd + 2.0) * w + 2.0 * (heavy - 1.0) * w * w) * q +
                       2.0 * (nd - 1.0) * w * w;
    out.u_vw_vw = q * num / ((q + w) * (q + w) * d);
  }
  return out;
}

CommunityStarLimits community_star_limits(double alpha, double beta, std::size_t k) {
  const auto kd = static_cast<double>(k);
  CommunityStarLimits out;
  if (alpha < 0.0) {
    out.center_v1 = 0.0;
  } else if (alpha > 0.0) {
    out.center_v1 = 1.0;
  } else if (beta > -1.0) {
    out.center_v1 = 0.5;
  } else if (beta == -1.0) {
    out.center_v1 = (kd + 3.0) / (2.0 * kd + 8.0);
  } else {
    out.center_v1 = (kd + 1.0) / (2.0 * kd + 4.0);
  }
  out.center_vw = compare_limit(alpha, beta, 0.5);
  return out;
}

BottleneckQuantities bottleneck_quantities(std::size_t n, std::size_t m, double w, double q) {
  require_positive(q, "q", "bottleneck_quantities");
  require_positive(w, "w", "bottleneck_quantities");
  if (n < 2 || m < 2) {
    throw ParameterError("bottleneck_quantities: clique sizes must be at least 2");
  }
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);
  const double cut = q * (q + nd) * (q + md);
  const double bridged = w * (q + 1.0) * (2.0 * q + nd + md);
  BottleneckQuantities out;
  out.z = LogValue::from_double(q) * LogValue::from_double(cut + bridged) *
          power(q + nd, nd - 2.0) * power(q + md, md - 2.0);
  out.u_bridge = cut / (cut + bridged);
  return out;
}

double bottleneck_half_crossing(std::size_t n, std::size_t m, double w) {
  auto excess = [&](double log_q) {
    return bottleneck_quantities(n, m, w, std::exp(log_q)).u_bridge - 0.5;
  };
  double lo = std::log(1e-12);
  double hi = std::log(1e12);
  while (excess(lo) > 0.0) {
    lo -= 10.0;
  }
  while (excess(hi) < 0.0) {
    hi += 10.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

BottleneckLimits bottleneck_limits(const BottleneckScaling& s) {
  if (s.m_exp < 0.0 || s.m_exp > 1.0) {
    throw ParameterError("bottleneck_limits: m exponent must lie in [0, 1]");
  }
  if (!(s.m_ratio > 0.0) || s.m_ratio > 1.0) {
    throw ParameterError("bottleneck_limits: m ratio must lie in (0, 1]");
  }
  const double a = s.q_exp;
  const double b = s.w_exp;
  const double c = s.m_exp;
  BottleneckLimits out;

  // q = o(w/m) or (q = o(w), w = omega(m)) vs q = omega(w) or (q = omega(w/m), w = o(m)).
  if (a < b - c || (a < b && b > c)) {
    out.bridge = 0.0;
  } else if (a > b || (a > b - c && b < c)) {
    out.bridge = 1.0;
  }

  auto within = [a](double size_exp) -> std::optional<double> {
    if (a < 0.5 * size_exp) {
      return 0.0;
    }
    if (a > 0.5 * size_exp) {
      return 1.0;
    }
    return std::nullopt;
  };
  out.within_large = within(1.0);
  out.within_small = within(c);

  auto bridge_to = [&](double size_exp, bool large) -> std::optional<double> {
    if (a > 0.5 * size_exp) {
      return 1.0;
    }
    const bool below = a < 0.5 * size_exp;
    if (a < 0.0 || (below && b < c) || (below && c < 1.0)) {
      return 0.0;
    }
    if (a > 0.0 && below && b > c && c == 1.0) {
      const double r = s.m_ratio;
      return large ? r / (1.0 + r) : 1.0 / (1.0 + r);
    }
    return std::nullopt;
  };
  out.bridge_large = bridge_to(1.0, true);
  out.bridge_small = bridge_to(c, false);

  if (a < 0.0 && a < b - c) {
    out.across = 0.0;
  } else if (a > 0.0 || (a < 0.0 && a > b - c)) {
    out.across = 1.0;
  }
  return out;
}

LogValue z_complete(std::size_t n, double q) {
  require_positive(q, "q", "z_complete");
  if (n == 0) {
    throw ParameterError("z_complete: n must be positive");
  }
  const auto nd = static_cast<double>(n);
  return LogValue::from_double(q) * power(q + nd, nd - 1.0);
}

LogValue complete_rooting_measure(std::size_t n, std::size_t r, double q) {
  require_positive(q, "q", "complete_rooting_measure");
  if (r == 0 || r > n) {
    throw ParameterError("complete_rooting_measure: need 1 <= r <= n");
  }
  const auto nd = static_cast<double>(n);
  const auto rd = static_cast<double>(r);
  return power(q, rd) * LogValue::from_double(q + rd) * power(q + nd, nd - rd - 1.0);
}

}  // namespace lep
