#include "finspec/dixmier.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using finspec::DixmierEstimate;

namespace {

std::vector<double> harmonic_sequence(std::int64_t n) {
  std::vector<double> mu;
  mu.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i)
    mu.push_back(1.0 / static_cast<double>(i));
  return mu;
}

}  // namespace

TEST(DixmierMean, HarmonicSequence) {
  const auto mu = harmonic_sequence(1000000);
  const DixmierEstimate est =
      finspec::dixmier_mean(mu, {1000, 10000, 100000, 1000000});
  const double h = oracles::harmonic_number(1000000);
  const double expected = h / std::log(1e6);
  EXPECT_NEAR(est.partial_means.back().mean, expected, 1e-12);
  EXPECT_GT(est.partial_means.back().mean, 1.03);
  EXPECT_LT(est.partial_means.back().mean, 1.06);
  EXPECT_NEAR(est.extrapolated, 1.0, 0.01);
  // Decade-spaced checkpoints still differ by ~gamma/log N; convergence at
  // the default tolerance needs closer spacing.
  EXPECT_FALSE(est.converged);
}

TEST(DixmierMean, ConvergenceFlagWithAdjacentCheckpoints) {
  const auto mu = harmonic_sequence(1000000);
  const DixmierEstimate est =
      finspec::dixmier_mean(mu, {100000, 500000, 1000000});
  EXPECT_TRUE(est.converged);
}

TEST(DixmierMean, SummableSequenceDecaysToZero) {
  std::vector<double> mu;
  for (int i = 0; i < 2000; ++i) mu.push_back(std::pow(2.0, -i));
  const DixmierEstimate est = finspec::dixmier_mean(mu, {10, 100, 2000});
  EXPECT_LE(est.partial_means.back().mean, 0.3);
  EXPECT_GT(est.partial_means[0].mean, est.partial_means.back().mean);
}

TEST(DixmierMean, MonotoneUnderPointwiseDomination) {
  const auto mu = harmonic_sequence(10000);
  std::vector<double> nu = mu;
  for (double& v : nu) v *= 0.5;
  const auto est_mu = finspec::dixmier_mean(mu, {100, 10000});
  const auto est_nu = finspec::dixmier_mean(nu, {100, 10000});
  for (std::size_t i = 0; i < est_mu.partial_means.size(); ++i)
    EXPECT_GE(est_mu.partial_means[i].mean, est_nu.partial_means[i].mean);
}

TEST(DixmierMean, ValidatesInput) {
  EXPECT_THROW(finspec::dixmier_mean({1.0, 2.0}, {2}), finspec::NotSorted);
  EXPECT_THROW(finspec::dixmier_mean({2.0, 1.0}, {2, 2}),
               finspec::ValidationError);
  EXPECT_THROW(finspec::dixmier_mean({2.0, 1.0}, {1}),
               finspec::ValidationError);
  EXPECT_THROW(finspec::dixmier_mean({2.0, 1.0}, {4}),
               finspec::LengthMismatch);
}

TEST(CircleDirac, EigenvalueLayout) {
  const auto eig = finspec::circle_dirac_eigenvalues(3);
  ASSERT_EQ(eig.size(), 6u);
  EXPECT_DOUBLE_EQ(eig[0], 1.0);
  EXPECT_DOUBLE_EQ(eig[1], -1.0);
  EXPECT_DOUBLE_EQ(eig[4], 3.0);
  EXPECT_DOUBLE_EQ(eig[5], -3.0);
}

TEST(Hypertrace, CircleSurrogateExtrapolatesToTwo) {
  const std::int64_t n = 100000;
  const auto eig = finspec::circle_dirac_eigenvalues(n);
  const std::vector<double> ones(eig.size(), 1.0);
  const DixmierEstimate est = finspec::hypertrace_estimate(
      ones, eig, 1.0, {1000, 10000, 100000});
  // Partial sums are 2 H_{N/2}, means 2 H_{N/2} / log N -> 2.
  const double check =
      2.0 * oracles::harmonic_number(50000) / std::log(1e5);
  EXPECT_NEAR(est.partial_means.back().mean, check, 1e-12);
  EXPECT_NEAR(est.extrapolated, 2.0, 0.04);
}

TEST(Hypertrace, ZeroWeightGivesZero) {
  const auto eig = finspec::circle_dirac_eigenvalues(100);
  const std::vector<double> zeros(eig.size(), 0.0);
  const DixmierEstimate est =
      finspec::hypertrace_estimate(zeros, eig, 1.0, {10, 100});
  EXPECT_DOUBLE_EQ(est.partial_means.back().mean, 0.0);
  EXPECT_DOUBLE_EQ(est.extrapolated, 0.0);
}

TEST(Hypertrace, ScalesLinearly) {
  const auto eig = finspec::circle_dirac_eigenvalues(5000);
  const std::vector<double> ones(eig.size(), 1.0);
  std::vector<double> scaled(eig.size(), 2.5);
  const auto base = finspec::hypertrace_estimate(ones, eig, 1.0, {100, 10000});
  const auto big = finspec::hypertrace_estimate(scaled, eig, 1.0, {100, 10000});
  for (std::size_t i = 0; i < base.partial_means.size(); ++i)
    EXPECT_NEAR(big.partial_means[i].mean, 2.5 * base.partial_means[i].mean,
                1e-10 * (1.0 + big.partial_means[i].mean));
}

TEST(Hypertrace, NormalizedRatioEstimatesWeight) {
  // For L commuting with D the normalized trace is the ratio of the two
  // logarithmic means; for L = c I the ratio is c.
  const auto eig = finspec::circle_dirac_eigenvalues(20000);
  std::vector<double> weight(eig.size(), 0.75);
  const auto numer =
      finspec::hypertrace_estimate(weight, eig, 1.0, {1000, 40000});
  const std::vector<double> ones(eig.size(), 1.0);
  const auto denom =
      finspec::hypertrace_estimate(ones, eig, 1.0, {1000, 40000});
  EXPECT_NEAR(numer.extrapolated / denom.extrapolated, 0.75, 1e-10);
}

TEST(Hypertrace, ValidatesInput) {
  const auto eig = finspec::circle_dirac_eigenvalues(10);
  EXPECT_THROW(
      finspec::hypertrace_estimate({1.0}, eig, 1.0, {2}),
      finspec::LengthMismatch);
  EXPECT_THROW(finspec::hypertrace_estimate(std::vector<double>(20, 1.0),
                                            std::vector<double>(20, 0.0), 1.0,
                                            {2}),
               finspec::ValidationError);
  EXPECT_THROW(finspec::hypertrace_estimate(std::vector<double>(20, 1.0), eig,
                                            -1.0, {2}),
               finspec::ValidationError);
}
