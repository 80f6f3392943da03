#include "lep/log_value.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lep/errors.hpp"

namespace lep {

LogValue LogValue::from_double(double x) {
  if (std::isnan(x)) {
    throw NumericError("LogValue::from_double: NaN");
  }
  if (x == 0.0) {
    return zero();
  }
  return from_log(std::log(std::abs(x)), x > 0 ? 1 : -1);
}

bool LogValue::representable() const {
  if (sign_ == 0) {
    return true;
  }
  return logmag_ < std::log(std::numeric_limits<double>::max()) &&
         logmag_ > std::log(std::numeric_limits<double>::min());
}

LogValue& LogValue::operator*=(const LogValue& o) {
  if (sign_ == 0 || o.sign_ == 0) {
    *this = zero();
    return *this;
  }
  sign_ *= o.sign_;
  logmag_ += o.logmag_;
  return *this;
}

LogValue& LogValue::operator/=(const LogValue& o) {
  if (o.sign_ == 0) {
    throw NumericError("LogValue: division by zero");
  }
  if (sign_ == 0) {
    return *this;
  }
  sign_ *= o.sign_;
  logmag_ -= o.logmag_;
  return *this;
}

LogValue& LogValue::operator+=(const LogValue& o) {
  if (o.sign_ == 0) {
    return *this;
  }
  if (sign_ == 0) {
    *this = o;
    return *this;
  }
  const bool this_larger = logmag_ >= o.logmag_;
  const LogValue& big = this_larger ? *this : o;
  const LogValue& small = this_larger ? o : *this;
  const double ratio = std::exp(small.logmag_ - big.logmag_);
  LogValue out;
  if (big.sign_ == small.sign_) {
    out = from_log(big.logmag_ + std::log1p(ratio), big.sign_);
  } else if (ratio == 1.0) {
    out = zero();
  } else {
    out = from_log(big.logmag_ + std::log1p(-ratio), big.sign_);
  }
  *this = out;
  return *this;
}

LogValue LogValue::pow(double exponent) const {
  if (exponent == 0.0) {
    return one();
  }
  if (sign_ == 0) {
    if (exponent < 0) {
      throw NumericError("LogValue::pow: zero to a negative power");
    }
    return zero();
  }
  int sign = 1;
  if (sign_ < 0) {
    if (std::trunc(exponent) != exponent) {
      throw NumericError("LogValue::pow: non-integral power of a negative value");
    }
    sign = std::fmod(std::abs(exponent), 2.0) == 1.0 ? -1 : 1;
  }
  return from_log(logmag_ * exponent, sign);
}

std::partial_ordering operator<=>(const LogValue& a, const LogValue& b) {
  if (a.sign_ != b.sign_) {
    return a.sign_ <=> b.sign_;
  }
  if (a.sign_ == 0) {
    return std::partial_ordering::equivalent;
  }
  return a.sign_ > 0 ? a.logmag_ <=> b.logmag_ : b.logmag_ <=> a.logmag_;
}

double log_distance(const LogValue& a, const LogValue& b) {
  if (a.sign() != b.sign()) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.is_zero()) {
    return 0.0;
  }
  return std::abs(a.logmag() - b.logmag());
}

double relative_difference(const LogValue& a, const LogValue& b) {
  if (a.is_zero() && b.is_zero()) {
    return 0.0;
  }
  const LogValue diff = a - b;
  const double scale = std::max(a.logmag(), b.logmag());
  if (diff.is_zero()) {
    return 0.0;
  }
  return std::exp(diff.logmag() - scale);
}

std::ostream& operator<<(std::ostream& os, const LogValue& v) {
  if (v.is_zero()) {
    return os << "0";
  }
  return os << (v.sign() < 0 ? "-" : "") << "exp(" << v.logmag() << ")";
}

}  // namespace lep
