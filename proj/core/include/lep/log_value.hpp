#pragma once

#include <cmath>
#include <compare>
#include <iosfwd>
#include <limits>

namespace lep {

/// Signed scalar stored as sign and natural log of the magnitude.
///
/// Partition functions of graphs with thousands of vertices overflow a double
/// long before the ratios we care about do; all products, quotients and sums
/// of such values go through this type.
class LogValue {
 public:
  constexpr LogValue() = default;

  static LogValue from_log(double logmag, int sign = 1) {
    LogValue v;
    if (sign == 0 || logmag == -std::numeric_limits<double>::infinity()) {
      return v;
    }
    v.sign_ = sign > 0 ? 1 : -1;
    v.logmag_ = logmag;
    return v;
  }
  static LogValue from_double(double x);
  static LogValue zero() { return {}; }
  static LogValue one() { return from_log(0.0); }

  int sign() const { return sign_; }
  /// Natural log of |value|; -inf for zero.
  double logmag() const {
    return sign_ == 0 ? -std::numeric_limits<double>::infinity() : logmag_;
  }
  bool is_zero() const { return sign_ == 0; }

  /// exp on demand; may overflow to +-inf.
  double to_double() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(logmag_); }
  /// True when to_double() is finite and not flushed to zero.
  bool representable() const;

  LogValue operator-() const {
    LogValue v = *this;
    v.sign_ = -v.sign_;
    return v;
  }
  LogValue& operator*=(const LogValue& o);
  LogValue& operator/=(const LogValue& o);
  LogValue& operator+=(const LogValue& o);
  LogValue& operator-=(const LogValue& o) { return *this += -o; }

  friend LogValue operator*(LogValue a, const LogValue& b) { return a *= b; }
  friend LogValue operator/(LogValue a, const LogValue& b) { return a /= b; }
  friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
  friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }

  /// Power; negative values only admit integral exponents. pow(x, 0) == 1.
  LogValue pow(double exponent) const;

  friend std::partial_ordering operator<=>(const LogValue& a, const LogValue& b);
  friend bool operator==(const LogValue& a, const LogValue& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.logmag_ == b.logmag_);
  }

 private:
  int sign_ = 0;
  double logmag_ = 0.0;
};

/// |log a - log b| for two values of equal sign; the yardstick for relative
/// agreement of large partition functions.
double log_distance(const LogValue& a, const LogValue& b);

/// Relative difference |a-b|/max(|a|,|b|) evaluated without leaving log space.
double relative_difference(const LogValue& a, const LogValue& b);

std::ostream& operator<<(std::ostream& os, const LogValue& v);

}  // namespace lep
