#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "lep/errors.hpp"
#include "lep/log_value.hpp"

namespace lep {
namespace {

// exp(log x) carries a relative error of about |log x| ulps.
TEST(LogValue, RoundTripsDoubles) {
  for (double x : {-3.5, -1e-300, 0.0, 1e-300, 2.0, 1e300}) {
    EXPECT_NEAR(LogValue::from_double(x).to_double(), x, 1e-12 * std::abs(x));
  }
}

TEST(LogValue, ArithmeticMatchesDoubles) {
  const double xs[] = {-7.25, -0.5, 0.0, 0.75, 3.0};
  for (double a : xs) {
    for (double b : xs) {
      const LogValue la = LogValue::from_double(a);
      const LogValue lb = LogValue::from_double(b);
      EXPECT_NEAR((la + lb).to_double(), a + b, 1e-14);
      EXPECT_NEAR((la - lb).to_double(), a - b, 1e-14);
      EXPECT_NEAR((la * lb).to_double(), a * b, 1e-14);
      if (b != 0.0) {
        EXPECT_NEAR((la / lb).to_double(), a / b, 1e-14);
      }
    }
  }
}

TEST(LogValue, ExactCancellationIsZero) {
  const LogValue a = LogValue::from_double(1.5);
  EXPECT_TRUE((a - a).is_zero());
}

TEST(LogValue, SurvivesOverflowingMagnitudes) {
  const LogValue big = LogValue::from_log(5000.0);
  const LogValue ratio = (big * LogValue::from_double(3.0)) / big;
  EXPECT_NEAR(ratio.to_double(), 3.0, 1e-12);
  EXPECT_FALSE(big.representable());
  EXPECT_TRUE(ratio.representable());
}

TEST(LogValue, RatioOfEqualSignsIsPositive) {
  const LogValue a = LogValue::from_log(10.0, -1);
  const LogValue b = LogValue::from_log(3.0, -1);
  EXPECT_EQ((a / b).sign(), 1);
  EXPECT_DOUBLE_EQ((a / b).logmag(), 7.0);
}

TEST(LogValue, PowAndOrdering) {
  EXPECT_NEAR(LogValue::from_double(2.0).pow(10).to_double(), 1024.0, 1e-9);
  EXPECT_NEAR(LogValue::from_double(-2.0).pow(3).to_double(), -8.0, 1e-12);
  EXPECT_EQ(LogValue::from_double(-2.0).pow(0), LogValue::one());
  EXPECT_THROW(LogValue::from_double(-2.0).pow(0.5), NumericError);
  EXPECT_LT(LogValue::from_double(-1.0), LogValue::zero());
  EXPECT_LT(LogValue::from_double(2.0), LogValue::from_double(3.0));
  EXPECT_GT(LogValue::from_double(-2.0), LogValue::from_double(-3.0));
}

TEST(LogValue, RejectsInvalidOperations) {
  EXPECT_THROW(LogValue::from_double(std::nan("")), NumericError);
  EXPECT_THROW(LogValue::one() / LogValue::zero(), NumericError);
}

TEST(LogValue, DistancesAreScaleFree) {
  const LogValue a = LogValue::from_log(1000.0);
  const LogValue b = LogValue::from_log(1000.0 + 1e-10);
  EXPECT_NEAR(log_distance(a, b), 1e-10, 1e-12);
  EXPECT_NEAR(relative_difference(a, b), 1e-10, 1e-12);
  EXPECT_EQ(relative_difference(LogValue::zero(), LogValue::zero()), 0.0);
}

TEST(LogValue, Streams) {
  std::ostringstream os;
  os << LogValue::from_double(2.0);
  EXPECT_EQ(os.str().rfind("exp(", 0), 0u);
}

}  // namespace
}  // namespace lep
