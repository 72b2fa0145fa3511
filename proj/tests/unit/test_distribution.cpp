#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "ulik/distribution.hpp"
#include "ulik/error.hpp"
#include "ulik/lognormal_sum.hpp"
#include "ulik/rng.hpp"

namespace ulik {
namespace {

const LognormalDist kPaperFit{-77.21, 18.30};

TEST(Lognormal, PdfAtMedian) {
  const double v = std::pow(10.0, kPaperFit.mu_q / 10.0);
  EXPECT_NEAR(pdf(kPaperFit, v), kZeta / (v * std::sqrt(2.0 * std::numbers::pi * 18.30)),
              1e-12 * pdf(kPaperFit, v));
}

TEST(Lognormal, PdfNormalizes) {
  // Substitute v = exp(u): integral of pdf(e^u) e^u du over the dB support.
  for (const LognormalDist d : {kPaperFit, LognormalDist{-96.5, 209.4}, LognormalDist{0, 1}}) {
    const double centre = d.mu_q / kZeta;
    const double half = 14.0 * std::sqrt(d.var_q) / kZeta;
    const double total = oracle::integral(
        [&](double u) { return pdf(d, std::exp(u)) * std::exp(u); }, centre - half, centre + half);
    EXPECT_NEAR(total, 1.0, 1e-6);
  }
}

TEST(Lognormal, ModeBelowMedian) {
  const double median = std::pow(10.0, kPaperFit.mu_q / 10.0);
  double best_v = 0.0, best = 0.0;
  for (double t = -3.0; t <= 1.0; t += 1e-4) {
    const double v = median * std::pow(10.0, t);
    if (pdf(kPaperFit, v) > best) {
      best = pdf(kPaperFit, v);
      best_v = v;
    }
  }
  EXPECT_LT(best_v, median);
}

TEST(Lognormal, CdfMedianAndLimits) {
  // pow/log10 round trip moves x by a few ulps of 77 dB.
  EXPECT_NEAR(cdf(kPaperFit, std::pow(10.0, kPaperFit.mu_q / 10.0)), 0.5, 1e-14);
  EXPECT_LT(cdf(kPaperFit, 1e-300), 1e-15);
  EXPECT_GT(cdf(kPaperFit, 1e300), 1.0 - 1e-15);
}

TEST(Lognormal, CdfDifferenceEqualsPdfIntegral) {
  const double v1 = 1e-8, v2 = 5e-8;
  const double by_pdf = oracle::integral([&](double v) { return pdf(kPaperFit, v); }, v1, v2);
  EXPECT_NEAR(cdf(kPaperFit, v2) - cdf(kPaperFit, v1), by_pdf, 1e-6);
}

TEST(Lognormal, Errors) {
  try {
    pdf(kPaperFit, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNonpositiveValue);
  }
  EXPECT_THROW(cdf(kPaperFit, -1.0), Error);
  EXPECT_THROW(cdf(LognormalDist{-70, 0.0}, 1.0), Error);
}

TEST(Lognormal, MonotoneAndNonnegative) {
  double prev = 0.0;
  for (double x = -130; x <= -20; x += 0.25) {
    const double v = std::pow(10.0, x / 10.0);
    EXPECT_GE(pdf(kPaperFit, v), 0.0);
    const double c = cdf(kPaperFit, v);
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(Lognormal, DbmDuality) {
  const GaussianApprox g{kPaperFit.mu_q, kPaperFit.var_q};
  for (double x = -100; x <= -55; x += 0.5)
    EXPECT_NEAR(cdf(kPaperFit, std::pow(10.0, x / 10.0)), gaussian_cdf(g, x), 1e-14) << x;
}

// erf/erfc reference values from mpmath at 30 digits.
TEST(Erf, MatchesHighPrecisionReference) {
  const double x[] = {0.5, 1.0, 2.0, 3.0};
  const double erf_ref[] = {0.5204998778130465, 0.8427007929497149, 0.9953222650189527,
                            0.9999779095030014};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::erf(x[i]), erf_ref[i], 1e-10);
    EXPECT_NEAR(std::erf(-x[i]), -erf_ref[i], 1e-10);
    // gaussian_cdf(z) = (1 + erf(z / sqrt 2)) / 2
    const double z = x[i] * std::sqrt(2.0);
    EXPECT_NEAR(gaussian_cdf({0, 1}, z), 0.5 + 0.5 * erf_ref[i], 1e-10);
    EXPECT_NEAR(gaussian_cdf({0, 1}, -z), 0.5 - 0.5 * erf_ref[i], 1e-10);
  }
}

TEST(Empirical, SortsAndEvaluates) {
  const EmpiricalDistribution e({3.0, 1.0, 2.0, 2.0}, ValueDomain::kDbm);
  EXPECT_EQ(e.samples(), (std::vector<double>{1, 2, 2, 3}));
  EXPECT_EQ(e.cdf(2.0), 0.75);
  EXPECT_EQ(e.cdf_below(2.0), 0.25);
  EXPECT_EQ(e.cdf(0.0), 0.0);
  EXPECT_EQ(e.cdf(3.0), 1.0);
  EXPECT_EQ(e.quantile(0.0), 1.0);
  EXPECT_EQ(e.quantile(1.0), 3.0);
  EXPECT_EQ(e.quantile(0.5), 2.0);
  EXPECT_DOUBLE_EQ(e.mean(), 2.0);
  EXPECT_THROW(EmpiricalDistribution({}, ValueDomain::kDbm), Error);
  EXPECT_THROW(EmpiricalDistribution({NAN}, ValueDomain::kDbm), Error);
}

TEST(Empirical, UnitConversionRoundTrip) {
  const EmpiricalDistribution e({-80.0, -70.0}, ValueDomain::kDbm);
  const EmpiricalDistribution mw = e.to_milliwatt();
  EXPECT_EQ(mw.domain(), ValueDomain::kMilliwatt);
  EXPECT_NEAR(mw.samples()[1], 1e-7, 1e-20);
  EXPECT_NEAR(mw.to_dbm().samples()[0], -80.0, 1e-12);
}

TEST(Ks, SelfDistanceIsZero) {
  RngStream rng(3);
  std::vector<double> xs(1000);
  for (double& x : xs) x = rng.normal();
  const EmpiricalDistribution e(xs, ValueDomain::kDbm);
  EXPECT_EQ(ks_distance(e, e), 0.0);
  CdfFunction own{ValueDomain::kDbm, [&](double x) { return e.cdf(x); },
                  [&](double x) { return e.cdf_below(x); }};
  EXPECT_EQ(ks_distance(e, own), 0.0);
}

TEST(Ks, PointMass) {
  const EmpiricalDistribution e(std::vector<double>(50, 4.0), ValueDomain::kDbm);
  EXPECT_EQ(ks_distance(e, gaussian_cdf_function({4.0, 0.0})), 0.0);
  // Without the left limit the step at 4 would count fully.
  CdfFunction only_at{ValueDomain::kDbm, [](double x) { return x >= 4.0 ? 1.0 : 0.0; }, {}};
  EXPECT_EQ(ks_distance(e, only_at), 1.0);
}

TEST(Ks, StandardNormalSamplesWithinDkwBound) {
  RngStream rng(2024);
  std::vector<double> xs(1'000'000);
  for (double& x : xs) x = rng.normal();
  const EmpiricalDistribution e(std::move(xs), ValueDomain::kDbm);
  EXPECT_LE(ks_distance(e, gaussian_cdf_function({0.0, 1.0})), 0.002);
}

TEST(Ks, KnownSmallCase) {
  const EmpiricalDistribution e({0.0}, ValueDomain::kDbm);
  EXPECT_DOUBLE_EQ(ks_distance(e, gaussian_cdf_function({0.0, 1.0})), 0.5);
  const EmpiricalDistribution a({1.0, 2.0}, ValueDomain::kDbm);
  const EmpiricalDistribution b({3.0, 4.0}, ValueDomain::kDbm);
  EXPECT_EQ(ks_distance(a, b), 1.0);
}

TEST(Ks, DomainMismatch) {
  const EmpiricalDistribution e({1e-8, 2e-8}, ValueDomain::kMilliwatt);
  try {
    ks_distance(e, gaussian_cdf_function({-75, 10}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::kDomainMismatch);
  }
  EXPECT_NO_THROW(ks_distance(e, lognormal_cdf_function({-75, 10})));
  EXPECT_NEAR(ks_distance(e, lognormal_cdf_function({-75, 10})),
              ks_distance(e.to_dbm(), gaussian_cdf_function({-75, 10})), 1e-12);
}

TEST(CdfCurve, EmpiricalGridSpansTailQuantiles) {
  RngStream rng(8);
  std::vector<double> xs(100000);
  for (double& x : xs) x = -80.0 + 5.0 * rng.normal();
  const EmpiricalDistribution e(std::move(xs), ValueDomain::kDbm);
  const auto curve = cdf_curve(GaussianApprox{-80, 25}, &e);
  ASSERT_EQ(curve.size(), 1000u);
  EXPECT_EQ(curve.front().value_dbm, e.quantile(0.001));
  EXPECT_EQ(curve.back().value_dbm, e.quantile(0.999));
  for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_GT(curve[i].value_dbm, curve[i - 1].value_dbm);
  EXPECT_TRUE(curve[500].analytic.has_value());
  EXPECT_TRUE(curve[500].empirical.has_value());
}

TEST(CdfCurve, AnalyticOnlyUsesGaussianTails) {
  const auto curve = cdf_curve(GaussianApprox{-80, 25}, nullptr, 11);
  ASSERT_EQ(curve.size(), 11u);
  EXPECT_NEAR(curve.front().analytic.value(), 0.001, 1e-9);
  EXPECT_NEAR(curve.back().analytic.value(), 0.999, 1e-9);
  EXPECT_FALSE(curve.front().empirical.has_value());
  EXPECT_THROW(cdf_curve(std::nullopt, nullptr), Error);
}

}  // namespace
}  // namespace ulik
