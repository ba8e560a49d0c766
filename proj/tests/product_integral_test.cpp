#include "finspec/product_integral.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "finspec/random.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using finspec::CurveSample;
using finspec::Operator;
using finspec::StepFunction;

namespace {

StepFunction constant_step(const Operator& v, double a, double b) {
  return StepFunction{{a, b}, {v}};
}

// A smooth coefficient path used for the refinement checks.
Operator smooth_path(double t) {
  Operator x(2, 2);
  x << std::sin(t), finspec::Complex(0.2, 0.1) * std::cos(2.0 * t),
      finspec::Complex(0.2, -0.1) * std::cos(2.0 * t), -std::sin(t);
  return 0.5 * x;
}

StepFunction midpoint_sampling(int intervals, double a, double b) {
  StepFunction x;
  for (int k = 0; k <= intervals; ++k)
    x.breakpoints.push_back(a + (b - a) * k / intervals);
  for (int k = 0; k < intervals; ++k)
    x.values.push_back(
        smooth_path(0.5 * (x.breakpoints[k] + x.breakpoints[k + 1])));
  return x;
}

}  // namespace

TEST(ProductIntegral, SingleConstantFactor) {
  finspec::Rng rng(61);
  const Operator v = finspec::random_matrix(3, rng);
  const Operator end = finspec::product_integral_at(
      constant_step(v, 0.0, 1.0), 1.0);
  EXPECT_LE((end - finspec::exp_map(v)).norm(), 1e-13);
}

TEST(ProductIntegral, TwoEqualStepsCompose) {
  finspec::Rng rng(62);
  const Operator v = finspec::random_matrix(3, rng);
  const StepFunction x{{0.0, 0.5, 1.0}, {v, v}};
  const Operator end = finspec::product_integral_at(x, 1.0);
  EXPECT_LE(finspec::op_norm(Operator(end - finspec::exp_map(v))),
            1e-12 * (1.0 + finspec::op_norm(end)));
}

TEST(ProductIntegral, LeftEndpointIsIdentity) {
  const StepFunction x = constant_step(testsupport::pauli_x(), 0.0, 2.0);
  EXPECT_EQ((finspec::product_integral_at(x, 0.0) -
             Operator::Identity(2, 2))
                .norm(),
            0.0);
}

TEST(ProductIntegral, SamplesMatchPointEvaluation) {
  finspec::Rng rng(63);
  const StepFunction x{{0.0, 0.3, 1.0},
                       {finspec::random_matrix(2, rng),
                        finspec::random_matrix(2, rng)}};
  const CurveSample u = finspec::product_integral(x, 4);
  for (std::size_t i = 0; i < u.times.size(); ++i) {
    const Operator direct = finspec::product_integral_at(x, u.times[i]);
    EXPECT_LE((u.values[i] - direct).norm(), 1e-12);
  }
}

TEST(ProductIntegral, NestedRefinementConvergesToFlow) {
  const Operator reference = oracles::rk4_flow(smooth_path, 0.0, 1.0, 4096);
  double previous_error = -1.0;
  for (int intervals : {16, 64, 256}) {
    const StepFunction x = midpoint_sampling(intervals, 0.0, 1.0);
    const Operator end = finspec::product_integral_at(x, 1.0);
    const double error = finspec::op_norm(Operator(end - reference));
    if (previous_error > 0.0) EXPECT_LT(error, previous_error);
    previous_error = error;
    if (intervals == 256) EXPECT_LT(error, 1e-5);
  }
}

TEST(LogDerivative, OneParameterSubgroup) {
  finspec::Rng rng(64);
  Operator v = finspec::random_matrix(3, rng);
  v *= 0.8 / finspec::op_norm(v);
  std::vector<double> times;
  for (int i = 0; i <= 40; ++i) times.push_back(i * 0.025);
  const CurveSample u = finspec::sample_curve(
      [&v](double t) { return finspec::exp_map(Operator(t * v)); }, times);
  for (double t : {0.1, 0.5, 0.9}) {
    const Operator got = finspec::log_derivative(u, t);
    EXPECT_LE(finspec::op_norm(Operator(got - v)), 1e-3);
  }
}

TEST(LogDerivative, PointwiseProductAddsAtZero) {
  finspec::Rng rng(65);
  Operator v = finspec::random_matrix(3, rng);
  Operator w = finspec::random_matrix(3, rng);
  v *= 0.6 / finspec::op_norm(v);
  w *= 0.6 / finspec::op_norm(w);
  const double h = 1e-4;
  const CurveSample u = finspec::sample_curve(
      [&](double t) {
        return Operator(finspec::exp_map(Operator(t * v)) *
                        finspec::exp_map(Operator(t * w)));
      },
      {-h, 0.0, h});
  const Operator got = finspec::log_derivative(u, 0.0, 2.0 * h);
  EXPECT_LE(finspec::op_norm(Operator(got - (v + w))), 1e-6);
}

TEST(LogDerivative, RecoversStepValues) {
  finspec::Rng rng(66);
  Operator v1 = finspec::random_matrix(2, rng);
  Operator v2 = finspec::random_matrix(2, rng);
  v1 *= 0.5 / finspec::op_norm(v1);
  v2 *= 0.5 / finspec::op_norm(v2);
  const StepFunction x{{0.0, 0.5, 1.0}, {v1, v2}};
  const CurveSample u = finspec::product_integral(x, 200);
  const Operator d1 = finspec::log_derivative(u, 0.25);
  const Operator d2 = finspec::log_derivative(u, 0.75);
  EXPECT_LE(finspec::op_norm(Operator(d1 - v1)), 1e-6);
  EXPECT_LE(finspec::op_norm(Operator(d2 - v2)), 1e-6);
}

TEST(LogDerivative, EndpointLacksNeighbors) {
  const CurveSample u = finspec::sample_curve(
      [](double t) {
        return Operator(std::exp(t) * Operator::Identity(2, 2));
      },
      {0.0, 0.01, 0.02});
  EXPECT_THROW(finspec::log_derivative(u, 0.0), finspec::InsufficientSamples);
  EXPECT_NO_THROW(finspec::log_derivative(u, 0.01));
}

TEST(LogDerivative, SparseSamplesRejected) {
  const CurveSample u = finspec::sample_curve(
      [](double t) {
        return Operator(std::exp(t) * Operator::Identity(2, 2));
      },
      {0.0, 1.0, 2.0});
  EXPECT_THROW(finspec::log_derivative(u, 1.0, 0.1),
               finspec::InsufficientSamples);
}

TEST(StepFunction, ValidationCatchesBadBreakpoints) {
  StepFunction x{{0.0, 0.0, 1.0},
                 {Operator::Identity(2, 2), Operator::Identity(2, 2)}};
  EXPECT_THROW(x.validate(), finspec::ValidationError);
  StepFunction y{{0.0, 1.0}, {}};
  EXPECT_THROW(y.validate(), finspec::LengthMismatch);
}

TEST(CurveSample, ValidationCatchesSingularValues) {
  CurveSample u;
  u.times = {0.0, 1.0};
  u.values = {Operator::Identity(2, 2), Operator::Zero(2, 2)};
  EXPECT_THROW(u.validate(), finspec::NotInvertible);
}
