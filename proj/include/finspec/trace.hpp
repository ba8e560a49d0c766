#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "finspec/omega_form.hpp"
#include "finspec/spectral_triple.hpp"
#include "finspec/star_algebra.hpp"

namespace finspec {

// A linear functional on a star algebra, stored by its values on the
// orthonormal basis: T(x) = sum_k coefficients[k] * <basis[k], x>. The
// constructors below produce functionals satisfying the trace axioms
// (tracial, Hermitian, positive, normalized); continuity is automatic at
// finite dimension.
class TraceFunctional {
 public:
  TraceFunctional(StarAlgebra algebra, Eigen::VectorXcd coefficients)
      : algebra_(std::move(algebra)), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != algebra_.dimension())
      throw DimensionMismatch(
          "TraceFunctional: one coefficient per basis element required");
  }

  // Builds the functional by evaluating a linear prescription on each basis
  // element.
  static TraceFunctional from_matrix_function(
      StarAlgebra algebra, const std::function<Complex(const Operator&)>& fn) {
    Eigen::VectorXcd c(algebra.dimension());
    for (Eigen::Index k = 0; k < algebra.dimension(); ++k)
      c(k) = fn(algebra.basis()[static_cast<std::size_t>(k)]);
    return TraceFunctional(std::move(algebra), std::move(c));
  }

  const StarAlgebra& algebra() const { return algebra_; }
  const Eigen::VectorXcd& coefficients() const { return coeffs_; }

  Complex operator()(const Operator& x) const {
    algebra_.require_member(x, "TraceFunctional");
    return (coeffs_.transpose() * algebra_.coordinates(x)).value();
  }

  // Splits a = (a - T(a) I) + T(a) I into its traceless part and the scalar
  // coefficient along the unit; the first component lies in the kernel.
  std::pair<Operator, Complex> kernel_project(const Operator& a) const {
    const Complex value = (*this)(a);
    return {Operator(a - value * algebra_.unit()), value};
  }

 private:
  StarAlgebra algebra_;
  Eigen::VectorXcd coeffs_;
};

// The normalized matrix trace x -> tr(x)/d restricted to the algebra.
inline TraceFunctional normalized_matrix_trace(StarAlgebra algebra) {
  const double d = static_cast<double>(algebra.ambient_dim());
  return TraceFunctional::from_matrix_function(
      std::move(algebra), [d](const Operator& b) { return b.trace() / d; });
}

// The amplified trace on n x n block matrices: the average of the base
// trace over the diagonal blocks. `amplified` must be the amplification of
// the base algebra, whose block structure fixes the extraction below.
inline TraceFunctional amplified_trace(const TraceFunctional& base,
                                       const StarAlgebra& amplified,
                                       Eigen::Index n) {
  if (n < 1) throw ValidationError("amplified_trace: n must be >= 1");
  const Eigen::Index d = base.algebra().ambient_dim();
  if (amplified.ambient_dim() != n * d)
    throw DimensionMismatch(
        "amplified_trace: amplified algebra has the wrong dimension");
  return TraceFunctional::from_matrix_function(
      amplified, [&base, n, d](const Operator& b) {
        Complex sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
          sum += base(Operator(b.block(i * d, i * d, d, d)));
        return sum / static_cast<double>(n);
      });
}

// Convex combination of summand traces on a direct-sum algebra:
// T(a_1 (+) ... (+) a_m) = sum_i u_i T_i(a_i). Weights must be nonnegative
// and sum to one; the unit vectors recover the component functionals.
inline TraceFunctional convex_combination(
    const DirectSum& layout, const std::vector<TraceFunctional>& parts,
    const std::vector<double>& weights) {
  if (parts.size() != layout.parts() || weights.size() != layout.parts())
    throw LengthMismatch(
        "convex_combination: one trace and one weight per summand required");
  double total = 0.0;
  for (double u : weights) {
    if (u < 0.0) throw BadWeights("convex_combination: negative weight");
    total += u;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw BadWeights("convex_combination: weights must sum to 1");
  return TraceFunctional::from_matrix_function(
      layout.triple().algebra(),
      [&layout, &parts, &weights](const Operator& b) {
        Complex sum = 0.0;
        for (std::size_t i = 0; i < parts.size(); ++i)
          sum += weights[i] * parts[i](layout.block_of(i, b));
        return sum;
      });
}

struct UnimodularMembership {
  bool inside = false;
  double lie_residual = 0.0;    // defect of x* Omega + Omega x = 0
  double trace_residual = 0.0;  // |T(x)|
};

// Membership in the traceless part of the form's real Lie algebra: the
// conjunction of Lie-algebra membership and a vanishing trace. Exponentials
// of members land in the group (exercised by the verification campaigns).
inline UnimodularMembership unimodular_lie_membership(
    const TraceFunctional& trace, const OmegaForm& form, const Operator& x,
    double rel_tol = tol::group_membership) {
  const OmegaForm::MembershipResidual lie = form.lie_algebra_membership(x, rel_tol);
  const double trace_residual = std::abs(trace(x));
  UnimodularMembership out;
  out.lie_residual = lie.residual;
  out.trace_residual = trace_residual;
  out.inside =
      lie.inside && trace_residual <= rel_tol * (1.0 + op_norm(x));
  return out;
}

struct SeparationWitness {
  bool found = false;
  Operator witness;       // in ker(first trace), outside ker(second)
  Complex first_value;    // value of the first trace on the witness (~0)
  Complex second_value;   // value of the second trace on the witness
};

// Constructive witness that two distinct traces have distinct kernels: a
// basis element b with T(b) != T'(b) yields a = b - T(b) I with T(a) = 0
// and T'(a) = T'(b) - T(b) != 0.
inline SeparationWitness separation_witness(const TraceFunctional& first,
                                            const TraceFunctional& second,
                                            double min_gap = 1e-8) {
  SeparationWitness out;
  const StarAlgebra& algebra = first.algebra();
  double best_gap = 0.0;
  for (const Operator& b : algebra.basis()) {
    const Complex gap = second(b) - first(b);
    if (std::abs(gap) > best_gap) {
      best_gap = std::abs(gap);
      out.witness = first.kernel_project(b).first;
    }
  }
  if (best_gap <= min_gap) return out;
  out.found = true;
  out.first_value = first(out.witness);
  out.second_value = second(out.witness);
  return out;
}

}  // namespace finspec
