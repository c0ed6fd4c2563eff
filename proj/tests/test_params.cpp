#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "udw/params.hpp"

namespace {

using udw::DetectorParams;
using udw::ValidationError;

TEST(DeriveDimensionless, FirstParameterSet) {
  DetectorParams p{1e9, 5e-8, 4e8, 0.363, 0.0};
  const auto d = udw::derive_dimensionless(p);
  EXPECT_NEAR(d.a_sigma, 50.0, 1e-12);
  EXPECT_NEAR(d.sigma_delta, 20.0, 1e-12);
  EXPECT_EQ(d.aL, 0.0);
  EXPECT_EQ(d.a_tau0, 0.0);
  EXPECT_NEAR(d.delta_over_a, 0.4, 1e-15);
  EXPECT_EQ(d.lambda, 0.363);
}

TEST(DeriveDimensionless, SecondParameterSet) {
  DetectorParams p{2e8, 12e-8, 5.5e7, 0.581, 0.0};
  const auto d = udw::derive_dimensionless(p);
  EXPECT_NEAR(d.a_sigma, 24.0, 1e-12);
  EXPECT_NEAR(d.sigma_delta, 6.6, 1e-12);
}

TEST(DeriveDimensionless, OffsetIsOneAtEMinusOne) {
  const double a = 3.0;
  DetectorParams p{a, 1.0, 0.0, 0.0, udw::meters_from_aL(std::exp(1.0) - 1.0, a)};
  EXPECT_NEAR(udw::derive_dimensionless(p).a_tau0, 1.0, 1e-15);
}

TEST(DeriveDimensionless, SeparationUsesSpeedOfLight) {
  DetectorParams p{1e9, 5e-8, 4e8, 0.363, 1.5e6};
  EXPECT_NEAR(udw::derive_dimensionless(p).aL, 1e9 * 1.5e6 / 299792458.0, 1e-6);
}

TEST(DeriveDimensionless, RejectsBadFieldsByName) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto field_of = [](DetectorParams p) {
    try {
      udw::derive_dimensionless(p);
    } catch (const ValidationError& e) {
      return e.field();
    }
    return std::string("none");
  };
  EXPECT_EQ(field_of({0.0, 1, 1, 0.1, 0}), "a");
  EXPECT_EQ(field_of({1, -1, 1, 0.1, 0}), "sigma");
  EXPECT_EQ(field_of({1, 1, -1, 0.1, 0}), "delta");
  EXPECT_EQ(field_of({1, 1, 1, 1.5, 0}), "lambda");
  EXPECT_EQ(field_of({1, 1, 1, -0.1, 0}), "lambda");
  EXPECT_EQ(field_of({1, 1, 1, 0.1, -2}), "L");
  EXPECT_EQ(field_of({nan, 1, 1, 0.1, 0}), "a");
  EXPECT_EQ(field_of({1, 1, 1, 0.1, std::numeric_limits<double>::infinity()}), "L");
  EXPECT_EQ(field_of({1, 1, 1, 0.1, 0}), "none");
}

TEST(ParamsFromDimensionless, Examples) {
  const auto d = udw::params_from_dimensionless(98, 30, 0, 0.581);
  EXPECT_DOUBLE_EQ(d.delta_over_a, 30.0 / 98.0);
  EXPECT_EQ(d.a_tau0, 0.0);

  EXPECT_EQ(udw::params_from_dimensionless(1, 0, 0, 0).delta_over_a, 0.0);
  EXPECT_NEAR(udw::params_from_dimensionless(50, 20, 1, 0.363).a_tau0, std::log(2.0), 1e-15);
}

TEST(ParamsFromDimensionless, RejectsZeroASigma) {
  EXPECT_THROW(udw::params_from_dimensionless(0, 1, 0, 0.1), ValidationError);
  EXPECT_THROW(udw::params_from_dimensionless(1, -1, 0, 0.1), ValidationError);
  EXPECT_THROW(udw::params_from_dimensionless(1, 1, -1, 0.1), ValidationError);
}

TEST(Params, ConsistencyOfRatios) {
  for (double a : {1e6, 1e9, 3.3e10}) {
    for (double sigma : {1e-9, 5e-8, 2e-6}) {
      DetectorParams p{a, sigma, 7.1e7, 0.2, 12.5};
      const auto d = udw::derive_dimensionless(p);
      EXPECT_NEAR(d.delta_over_a * d.a_sigma / d.sigma_delta, 1.0, 1e-12);
      EXPECT_NEAR(d.a_sigma / (a * sigma), 1.0, 1e-12);
      EXPECT_NEAR(d.sigma_delta / (sigma * 7.1e7), 1.0, 1e-12);
      EXPECT_NEAR(udw::meters_from_aL(d.aL, a) / 12.5, 1.0, 1e-12);
    }
  }
}

TEST(Params, OffsetMonotoneAndExactAtZero) {
  EXPECT_EQ(udw::conformal_offset(0.0), 0.0);
  double prev = 0.0;
  for (double aL = 1e-300; aL < 1e300; aL *= 1e10) {
    const double t = udw::conformal_offset(aL);
    EXPECT_GT(t, prev);
    prev = t;
  }
  // log1p keeps tiny separations resolvable.
  EXPECT_DOUBLE_EQ(udw::conformal_offset(1e-30), 1e-30);
}

TEST(Params, WithLambdaCopiesOtherFields) {
  const auto d = udw::params_from_dimensionless(50, 20, 3, 0.363);
  const auto e = d.with_lambda(0.1);
  EXPECT_EQ(e.lambda, 0.1);
  EXPECT_EQ(e.a_sigma, d.a_sigma);
  EXPECT_EQ(e.a_tau0, d.a_tau0);
}

}  // namespace
