#pragma once

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "finspec/operator.hpp"

namespace finspec {

// A unital *-subalgebra of the d x d complex matrices, stored as an
// orthonormal basis under the normalized Frobenius inner product
// <A, B> = tr(A*B)/d. The subspace, not the particular basis, is the
// canonical object; membership is a projection-residual test.
class StarAlgebra {
 public:
  struct Membership {
    bool inside;
    double residual;  // normalized Frobenius distance to the span
  };

  // Smallest unital *-subalgebra containing the generators: seeds the span
  // with the unit, the generators and their adjoints, then adjoins pairwise
  // products until the span stabilizes. Worst case returns all of M_d.
  static StarAlgebra close_from_generators(
      Eigen::Index ambient_dim, const std::vector<Operator>& generators) {
    if (ambient_dim <= 0)
      throw DimensionMismatch("close_from_generators: ambient_dim must be positive");
    for (const Operator& g : generators) {
      require_square(g, "close_from_generators");
      if (g.rows() != ambient_dim)
        throw DimensionMismatch(
            "close_from_generators: generator dimension differs from ambient_dim");
    }
    StarAlgebra a(ambient_dim);
    a.extend(Operator::Identity(ambient_dim, ambient_dim));
    for (const Operator& g : generators) {
      a.extend(g);
      a.extend(g.adjoint());
    }
    const Eigen::Index cap = ambient_dim * ambient_dim;
    bool grew = true;
    while (grew && static_cast<Eigen::Index>(a.basis_.size()) < cap) {
      grew = false;
      const std::size_t n = a.basis_.size();
      for (std::size_t i = 0; i < n && static_cast<Eigen::Index>(a.basis_.size()) < cap; ++i) {
        for (std::size_t j = 0; j < a.basis_.size() && static_cast<Eigen::Index>(a.basis_.size()) < cap; ++j) {
          if (a.extend(a.basis_[i] * a.basis_[j])) grew = true;
        }
      }
    }
    return a;
  }

  // Wraps an already orthonormal basis (used by amplification and direct
  // sums, whose bases are orthonormal by construction). Checks
  // orthonormality and that the unit lies in the span; product closure is
  // the caller's responsibility.
  static StarAlgebra from_orthonormal_basis(Eigen::Index ambient_dim,
                                            std::vector<Operator> basis) {
    StarAlgebra a(ambient_dim);
    a.basis_ = std::move(basis);
    for (std::size_t i = 0; i < a.basis_.size(); ++i) {
      for (std::size_t j = i; j < a.basis_.size(); ++j) {
        const Complex g = frobenius_inner(a.basis_[i], a.basis_[j]);
        const double expect = (i == j) ? 1.0 : 0.0;
        if (std::abs(g - expect) > 1e-9)
          throw ValidationError(
              "from_orthonormal_basis: basis is not orthonormal");
      }
    }
    if (!a.contains(Operator::Identity(ambient_dim, ambient_dim)))
      throw ValidationError("from_orthonormal_basis: unit not in span");
    return a;
  }

  Eigen::Index ambient_dim() const { return dim_; }
  const std::vector<Operator>& basis() const { return basis_; }
  Eigen::Index dimension() const {
    return static_cast<Eigen::Index>(basis_.size());
  }
  Operator unit() const { return Operator::Identity(dim_, dim_); }

  // Coefficients of the orthogonal projection onto the span.
  Eigen::VectorXcd coordinates(const Operator& m) const {
    require_member_dims(m);
    Eigen::VectorXcd c(dimension());
    for (Eigen::Index k = 0; k < dimension(); ++k)
      c(k) = frobenius_inner(basis_[k], m);
    return c;
  }

  Operator project(const Operator& m) const {
    const Eigen::VectorXcd c = coordinates(m);
    Operator p = Operator::Zero(dim_, dim_);
    for (Eigen::Index k = 0; k < dimension(); ++k) p += c(k) * basis_[k];
    return p;
  }

  Operator from_coordinates(const Eigen::VectorXcd& c) const {
    if (c.size() != dimension())
      throw DimensionMismatch("from_coordinates: wrong coefficient count");
    Operator p = Operator::Zero(dim_, dim_);
    for (Eigen::Index k = 0; k < dimension(); ++k) p += c(k) * basis_[k];
    return p;
  }

  Membership membership(const Operator& m,
                        double rel_tol = tol::membership) const {
    require_member_dims(m);
    const double residual = frobenius_norm(Operator(m - project(m)));
    const double scale = 1.0 + frobenius_norm(m);
    return Membership{residual <= rel_tol * scale, residual};
  }

  bool contains(const Operator& m, double rel_tol = tol::membership) const {
    return membership(m, rel_tol).inside;
  }

  void require_member(const Operator& m, const char* where,
                      double rel_tol = tol::membership) const {
    const Membership r = membership(m, rel_tol);
    if (!r.inside) {
      std::ostringstream os;
      os << where << ": element outside the algebra (projection residual "
         << r.residual << ")";
      throw NotInAlgebra(os.str(), r.residual);
    }
  }

  // Inverse taken in the ambient matrix algebra, with the membership of the
  // result asserted. For a finite-dimensional unital algebra the inverse of
  // a member is again a member; a failed cross-check signals tolerance
  // breakdown rather than genuine non-membership.
  Operator invert_in_algebra(const Operator& a) const {
    require_member(a, "invert_in_algebra");
    Operator inv = matrix_inverse(a);
    const Membership r = membership(inv);
    if (!r.inside) {
      std::ostringstream os;
      os << "invert_in_algebra: inverse fails the membership cross-check "
            "(residual "
         << r.residual << "); tolerance breakdown";
      throw NotInAlgebra(os.str(), r.residual);
    }
    return inv;
  }

  // True when the span is all of M_d.
  bool is_full() const { return dimension() == dim_ * dim_; }

 private:
  explicit StarAlgebra(Eigen::Index dim) : dim_(dim) {}

  void require_member_dims(const Operator& m) const {
    require_square(m, "StarAlgebra");
    if (m.rows() != dim_)
      throw DimensionMismatch(
          "StarAlgebra: element dimension differs from ambient_dim");
  }

  // Adjoins m to the basis if it leaves the current span. Two projection
  // sweeps keep the basis orthonormal to machine precision.
  bool extend(const Operator& m) {
    const double scale = frobenius_norm(m);
    Operator r = m;
    for (int sweep = 0; sweep < 2; ++sweep)
      for (const Operator& b : basis_) r -= frobenius_inner(b, r) * b;
    const double rnorm = frobenius_norm(r);
    if (rnorm <= 1e-10 * (1.0 + scale)) return false;
    basis_.push_back(r / rnorm);
    return true;
  }

  Eigen::Index dim_;
  std::vector<Operator> basis_;
};

}  // namespace finspec
