#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "finspec/errors.hpp"

namespace finspec {

using Complex = std::complex<double>;

// A bounded operator on a finite-dimensional Hilbert space: a dense square
// complex matrix. All higher-level structure (algebras, triples, groups)
// is built from these.
using Operator = Eigen::MatrixXcd;

namespace tol {
// Relative tolerance for accepting a matrix as Hermitian.
inline constexpr double hermitian = 1e-10;
// Invertibility threshold on the smallest singular value, relative to the
// operator norm.
inline constexpr double singular = 1e-12;
// Relative tolerance on the projection residual for algebra membership.
inline constexpr double membership = 1e-8;
// Relative tolerance on the defining identities of an omega form and on
// group/Lie-algebra membership residuals.
inline constexpr double omega_form = 1e-8;
inline constexpr double group_membership = 1e-8;
}  // namespace tol

inline void require_square(const Operator& a, const char* where) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << where << ": expected nonempty square matrix, got " << a.rows()
       << "x" << a.cols();
    throw DimensionMismatch(os.str());
  }
}

inline void require_same_dim(const Operator& a, const Operator& b,
                             const char* where) {
  require_square(a, where);
  require_square(b, where);
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << where << ": operands act on different spaces (" << a.rows()
       << " vs " << b.rows() << ")";
    throw DimensionMismatch(os.str());
  }
}

// Operator norm: the largest singular value, computed as the square root of
// the largest eigenvalue of A*A. Deterministic and accurate at desk scale.
inline double op_norm(const Operator& a) {
  require_square(a, "op_norm");
  Eigen::SelfAdjointEigenSolver<Operator> es(a.adjoint() * a,
                                             Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

inline Operator adjoint(const Operator& a) {
  require_square(a, "adjoint");
  return a.adjoint();
}

// [A, B] = AB - BA.
inline Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

// ||A - A*|| / (1 + ||A||), the scale-free deviation from self-adjointness.
inline double hermiticity_defect(const Operator& a) {
  require_square(a, "hermiticity_defect");
  return op_norm(Operator(a - a.adjoint())) / (1.0 + op_norm(a));
}

inline bool is_hermitian(const Operator& a, double rel_tol = tol::hermitian) {
  return hermiticity_defect(a) <= rel_tol;
}

// A validated self-adjoint operator. Construction rejects matrices whose
// hermiticity defect exceeds the tolerance; the stored matrix is the raw
// input (symmetrization happens where it matters, in the eigensolver path).
class HermitianOperator {
 public:
  explicit HermitianOperator(Operator m, double rel_tol = tol::hermitian)
      : mat_(std::move(m)) {
    require_square(mat_, "HermitianOperator");
    const double defect = hermiticity_defect(mat_);
    if (defect > rel_tol) {
      std::ostringstream os;
      os << "HermitianOperator: defect " << defect << " exceeds tolerance "
         << rel_tol;
      throw NotHermitian(os.str(), defect);
    }
  }

  const Operator& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Operator mat_;
};

// |D| = sqrt(D*D) through the eigendecomposition of the symmetrized input:
// same eigenvectors, eigenvalues replaced by their absolute values.
inline Operator abs_operator(const HermitianOperator& d) {
  const Operator sym = 0.5 * (d.matrix() + d.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(sym);
  Eigen::VectorXd lam = es.eigenvalues().cwiseAbs();
  return es.eigenvectors() * lam.asDiagonal() *
         es.eigenvectors().adjoint();
}

// All singular values, nonincreasing.
inline Eigen::VectorXd singular_values(const Operator& a) {
  require_square(a, "singular_values");
  Eigen::JacobiSVD<Operator> svd(a);
  return svd.singularValues();
}

// Inverse through the SVD, guarded by the smallest singular value.
inline Operator matrix_inverse(const Operator& a,
                               double rel_tol = tol::singular) {
  require_square(a, "matrix_inverse");
  Eigen::JacobiSVD<Operator> svd(a,
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  const double threshold = rel_tol * sv(0);
  if (!(smallest > threshold)) {
    std::ostringstream os;
    os << "matrix_inverse: smallest singular value " << smallest
       << " below threshold " << threshold;
    throw NotInvertible(os.str(), smallest);
  }
  return svd.matrixV() * sv.cwiseInverse().asDiagonal() *
         svd.matrixU().adjoint();
}

// Normalized Frobenius inner product <A, B> = tr(A*B) / dim. The identity
// has unit norm, which keeps algebra bases well scaled.
inline Complex frobenius_inner(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "frobenius_inner");
  return a.conjugate().cwiseProduct(b).sum() / static_cast<double>(a.rows());
}

inline double frobenius_norm(const Operator& a) {
  require_square(a, "frobenius_norm");
  return a.norm() / std::sqrt(static_cast<double>(a.rows()));
}

// Kronecker product; block (i, j) of the result is a(i,j) * b.
inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Operator matrix_unit(Eigen::Index dim, Eigen::Index i,
                            Eigen::Index j) {
  Operator e = Operator::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

}  // namespace finspec
