#include "finspec/trace.hpp"

#include "finspec/exponential.hpp"

#include <gtest/gtest.h>

#include "finspec/random.hpp"
#include "test_support.hpp"

using finspec::Complex;
using finspec::Operator;
using finspec::StarAlgebra;
using finspec::TraceFunctional;

namespace {

StarAlgebra full_algebra(Eigen::Index d) {
  return StarAlgebra::close_from_generators(d,
                                            testsupport::full_generators(d));
}

// Checks the four trace axioms on random elements.
void expect_trace_axioms(const TraceFunctional& t, finspec::Rng& rng,
                         double tolerance = 1e-10) {
  const StarAlgebra& a = t.algebra();
  EXPECT_LE(std::abs(t(a.unit()) - 1.0), tolerance);
  for (int trial = 0; trial < 15; ++trial) {
    const Operator x = finspec::random_algebra_element(a, rng);
    const Operator y = finspec::random_algebra_element(a, rng);
    EXPECT_LE(std::abs(t(Operator(x * y)) - t(Operator(y * x))), tolerance);
    EXPECT_LE(std::abs(t(finspec::adjoint(x)) - std::conj(t(x))), tolerance);
    const Complex positive = t(Operator(finspec::adjoint(x) * x));
    EXPECT_LE(std::abs(positive.imag()), tolerance);
    EXPECT_GE(positive.real(), -tolerance);
  }
}

}  // namespace

TEST(NormalizedTrace, AxiomsAndHandValues) {
  finspec::Rng rng(91);
  const TraceFunctional t = finspec::normalized_matrix_trace(full_algebra(2));
  EXPECT_NEAR(std::abs(t(Operator::Identity(2, 2)) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(t(testsupport::pauli_x())), 0.0, 1e-14);
  expect_trace_axioms(t, rng);
}

TEST(NormalizedTrace, PositivityMatchesFrobenius) {
  finspec::Rng rng(92);
  const TraceFunctional t = finspec::normalized_matrix_trace(full_algebra(3));
  for (int trial = 0; trial < 10; ++trial) {
    const Operator a = finspec::random_algebra_element(t.algebra(), rng, 0.0);
    const double expected =
        a.norm() * a.norm() / static_cast<double>(a.rows());
    EXPECT_NEAR(t(Operator(finspec::adjoint(a) * a)).real(), expected,
                1e-12 * (1.0 + expected));
  }
}

TEST(AmplifiedTrace, UnitAndDiagonalBlocks) {
  finspec::Rng rng(93);
  const auto base_triple = testsupport::full_triple({1.0, -1.0});
  const auto amplified = finspec::amplify(base_triple, 2);
  const TraceFunctional base =
      finspec::normalized_matrix_trace(base_triple.algebra());
  const TraceFunctional lifted =
      finspec::amplified_trace(base, amplified.algebra(), 2);

  EXPECT_NEAR(std::abs(lifted(Operator::Identity(4, 4)) - 1.0), 0.0, 1e-12);

  const Operator a = finspec::random_algebra_element(base_triple.algebra(), rng);
  Operator top = Operator::Zero(4, 4);
  top.block(0, 0, 2, 2) = a;
  EXPECT_LE(std::abs(lifted(top) - 0.5 * base(a)), 1e-12);

  const Operator both = finspec::kron(Operator::Identity(2, 2), a);
  EXPECT_LE(std::abs(lifted(both) - base(a)), 1e-12);

  expect_trace_axioms(lifted, rng);
}

TEST(ConvexCombination, WeightsValidated) {
  const auto t1 = testsupport::pauli_triple();
  const auto t2 = testsupport::full_triple({1.0, -1.0});
  const finspec::DirectSum sum = finspec::direct_sum({t1, t2});
  const std::vector<TraceFunctional> parts = {
      finspec::normalized_matrix_trace(t1.algebra()),
      finspec::normalized_matrix_trace(t2.algebra())};
  EXPECT_THROW(finspec::convex_combination(sum, parts, {0.6, 0.6}),
               finspec::BadWeights);
  EXPECT_THROW(finspec::convex_combination(sum, parts, {-0.2, 1.2}),
               finspec::BadWeights);
  EXPECT_THROW(finspec::convex_combination(sum, parts, {1.0}),
               finspec::LengthMismatch);
}

TEST(ConvexCombination, EvaluatesBlockwise) {
  finspec::Rng rng(94);
  const auto t1 = testsupport::full_triple({1.0, -1.0});
  const auto t2 = testsupport::full_triple({0.5, 1.5, -1.0});
  const finspec::DirectSum sum = finspec::direct_sum({t1, t2});
  const std::vector<TraceFunctional> parts = {
      finspec::normalized_matrix_trace(t1.algebra()),
      finspec::normalized_matrix_trace(t2.algebra())};

  const TraceFunctional half =
      finspec::convex_combination(sum, parts, {0.5, 0.5});
  const TraceFunctional first =
      finspec::convex_combination(sum, parts, {1.0, 0.0});

  const Operator a1 = finspec::random_algebra_element(t1.algebra(), rng);
  const Operator a2 = finspec::random_algebra_element(t2.algebra(), rng);
  const Operator joined = sum.embed(0, a1) + sum.embed(1, a2);

  EXPECT_LE(std::abs(half(joined) - 0.5 * (parts[0](a1) + parts[1](a2))),
            1e-12);
  EXPECT_LE(std::abs(first(joined) - parts[0](a1)), 1e-12);
  EXPECT_NEAR(std::abs(half(sum.triple().algebra().unit()) - 1.0), 0.0,
              1e-12);
  expect_trace_axioms(half, rng);
}

TEST(KernelProject, SplitsOffScalarPart) {
  finspec::Rng rng(95);
  const TraceFunctional t = finspec::normalized_matrix_trace(full_algebra(3));
  const Operator id = Operator::Identity(3, 3);

  const auto [zero_part, unit_coeff] = t.kernel_project(id);
  EXPECT_LE(zero_part.norm(), 1e-14);
  EXPECT_LE(std::abs(unit_coeff - 1.0), 1e-14);

  const Operator traceless = finspec::matrix_unit(3, 0, 1);
  const auto [kept, coeff] = t.kernel_project(traceless);
  EXPECT_LE((kept - traceless).norm(), 1e-14);
  EXPECT_LE(std::abs(coeff), 1e-14);

  for (int trial = 0; trial < 10; ++trial) {
    const Operator a = finspec::random_algebra_element(t.algebra(), rng);
    const auto [kernel_part, value] = t.kernel_project(a);
    EXPECT_LE(std::abs(t(kernel_part)), 1e-12);
    // Reconstruction is exact up to one rounding per diagonal entry.
    EXPECT_LE((kernel_part + value * id - a).norm(),
              1e-15 * (1.0 + a.norm()));
  }
}

TEST(KernelProject, CommutatorsLieInKernel) {
  finspec::Rng rng(96);
  const TraceFunctional t = finspec::normalized_matrix_trace(full_algebra(3));
  for (int trial = 0; trial < 10; ++trial) {
    const Operator a = finspec::random_algebra_element(t.algebra(), rng);
    const Operator b = finspec::random_algebra_element(t.algebra(), rng);
    EXPECT_LE(std::abs(t(finspec::commutator(a, b))), 1e-10);
  }
}

TEST(UnimodularMembership, TwoConditionShape) {
  const StarAlgebra m2 = full_algebra(2);
  const TraceFunctional t = finspec::normalized_matrix_trace(m2);
  const finspec::OmegaForm f =
      finspec::OmegaForm::make(Operator::Identity(2, 2), m2);

  EXPECT_TRUE(
      finspec::unimodular_lie_membership(t, f, Operator::Zero(2, 2)).inside);

  Operator x(2, 2);
  x << Complex(0, 1), 0, 0, Complex(0, -1);
  const auto good = finspec::unimodular_lie_membership(t, f, x);
  EXPECT_TRUE(good.inside);
  EXPECT_LE(good.lie_residual, 1e-12);
  EXPECT_LE(good.trace_residual, 1e-12);

  const Operator bad = Complex(0, 1) * Operator::Identity(2, 2);
  const auto r = finspec::unimodular_lie_membership(t, f, bad);
  EXPECT_FALSE(r.inside);
  EXPECT_LE(r.lie_residual, 1e-12);
  EXPECT_NEAR(r.trace_residual, 1.0, 1e-12);
}

TEST(UnimodularMembership, ExponentialsLandInGroup) {
  finspec::Rng rng(97);
  const StarAlgebra m3 = full_algebra(3);
  const TraceFunctional t = finspec::normalized_matrix_trace(m3);
  const finspec::OmegaForm f =
      finspec::OmegaForm::make(Operator::Identity(3, 3), m3);
  for (int trial = 0; trial < 20; ++trial) {
    Operator x = finspec::random_lie_element(f, rng);
    x = t.kernel_project(x).first;  // traceless and still a fixed point
    EXPECT_TRUE(finspec::unimodular_lie_membership(t, f, x).inside);
    EXPECT_TRUE(f.group_membership(finspec::exp_map(x)).inside);
  }
}

TEST(SeparationWitness, DistinguishesConvexCombinations) {
  const auto t1 = testsupport::full_triple({1.0, -1.0});
  const auto t2 = testsupport::full_triple({2.0, -2.0});
  const finspec::DirectSum sum = finspec::direct_sum({t1, t2});
  const std::vector<TraceFunctional> parts = {
      finspec::normalized_matrix_trace(t1.algebra()),
      finspec::normalized_matrix_trace(t2.algebra())};

  const TraceFunctional tu =
      finspec::convex_combination(sum, parts, {0.7, 0.3});
  const TraceFunctional tv =
      finspec::convex_combination(sum, parts, {0.3, 0.7});

  const auto witness = finspec::separation_witness(tu, tv);
  ASSERT_TRUE(witness.found);
  EXPECT_LE(std::abs(witness.first_value), 1e-12);
  EXPECT_GT(std::abs(witness.second_value), 1e-8);
  EXPECT_TRUE(tu.algebra().contains(witness.witness));
}

TEST(SeparationWitness, IdenticalTracesYieldNothing) {
  const StarAlgebra m2 = full_algebra(2);
  const TraceFunctional t = finspec::normalized_matrix_trace(m2);
  const TraceFunctional s = finspec::normalized_matrix_trace(m2);
  EXPECT_FALSE(finspec::separation_witness(t, s).found);
}

TEST(DirectSumUnimodular, BlockwiseConditions) {
  // Over a two-summand direct sum with the component trace on the first
  // block, membership in the traceless unitary Lie algebra demands skew
  // blocks everywhere but a vanishing trace only on the first block.
  const auto t1 = testsupport::full_triple({1.0, -1.0});
  const auto t2 = testsupport::full_triple({0.5, -0.5});
  const finspec::DirectSum sum = finspec::direct_sum({t1, t2});
  const std::vector<TraceFunctional> parts = {
      finspec::normalized_matrix_trace(t1.algebra()),
      finspec::normalized_matrix_trace(t2.algebra())};
  const TraceFunctional first =
      finspec::convex_combination(sum, parts, {1.0, 0.0});
  const finspec::OmegaForm unit_form = finspec::OmegaForm::make(
      sum.triple().algebra().unit(), sum.triple().algebra());

  const Operator traceless_skew = finspec::Complex(0, 1) *
                                  testsupport::diag({1.0, -1.0});
  const Operator skew_with_trace =
      finspec::Complex(0, 1) * Operator::Identity(2, 2);

  // Trace condition binds only on the first block.
  EXPECT_TRUE(finspec::unimodular_lie_membership(
                  first, unit_form,
                  sum.embed(0, traceless_skew) + sum.embed(1, skew_with_trace))
                  .inside);
  EXPECT_FALSE(finspec::unimodular_lie_membership(
                   first, unit_form,
                   sum.embed(0, skew_with_trace) + sum.embed(1, traceless_skew))
                   .inside);
  // Hermitian blocks break the Lie condition regardless of the trace.
  EXPECT_FALSE(finspec::unimodular_lie_membership(
                   first, unit_form,
                   sum.embed(0, testsupport::pauli_x()))
                   .inside);
}
