#pragma once

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "finspec/operator.hpp"
#include "finspec/star_algebra.hpp"

namespace finspec {

// A finite spectral triple: a unital *-subalgebra of M_d together with a
// Hermitian matrix D acting on the same space. D stands in for a spectral
// truncation of an unbounded Dirac operator; at finite dimension the
// compact-resolvent and smoothness requirements are automatic, so the only
// checked invariant is hermiticity. The triple owns both derivations,
// the commutator with D and the commutator with |D|.
class FiniteSpectralTriple {
 public:
  FiniteSpectralTriple(StarAlgebra algebra, HermitianOperator dirac,
                       int max_ladder_depth = 6)
      : algebra_(std::move(algebra)),
        dirac_(std::move(dirac)),
        abs_dirac_(abs_operator(dirac_)),
        max_ladder_depth_(max_ladder_depth) {
    if (algebra_.ambient_dim() != dirac_.dim())
      throw DimensionMismatch(
          "FiniteSpectralTriple: algebra and Dirac operator dimensions differ");
    if (max_ladder_depth_ < 0)
      throw ValidationError("FiniteSpectralTriple: negative ladder depth");
  }

  Eigen::Index hilbert_dim() const { return dirac_.dim(); }
  const StarAlgebra& algebra() const { return algebra_; }
  const Operator& dirac() const { return dirac_.matrix(); }
  const Operator& abs_dirac() const { return abs_dirac_; }
  int max_ladder_depth() const { return max_ladder_depth_; }

  // k-fold iterated commutator with D; k = 0 returns the element itself.
  Operator derivation(const Operator& a, int k) const {
    check_derivation_args(a, k, "derivation");
    Operator out = a;
    for (int i = 0; i < k; ++i) out = commutator(dirac_.matrix(), out);
    return out;
  }

  // k-fold iterated commutator with |D|.
  Operator abs_derivation(const Operator& a, int k) const {
    check_derivation_args(a, k, "abs_derivation");
    Operator out = a;
    for (int i = 0; i < k; ++i) out = commutator(abs_dirac_, out);
    return out;
  }

 private:
  void check_derivation_args(const Operator& a, int k,
                             const char* where) const {
    if (k < 0 || k > max_ladder_depth_) {
      std::ostringstream os;
      os << where << ": order " << k << " outside [0, " << max_ladder_depth_
         << "]";
      throw LadderDepthExceeded(os.str());
    }
    algebra_.require_member(a, where);
  }

  StarAlgebra algebra_;
  HermitianOperator dirac_;
  Operator abs_dirac_;
  int max_ladder_depth_;
};

// Matrix amplification: n x n matrices over the algebra acting on n copies
// of the Hilbert space, with the Dirac operator repeated along the diagonal.
// Elements of the amplified algebra are n x n block matrices with d x d
// blocks; the basis {sqrt(n) * kron(E_ij, b)} is orthonormal as it stands.
inline FiniteSpectralTriple amplify(const FiniteSpectralTriple& t,
                                    Eigen::Index n) {
  if (n < 1) throw ValidationError("amplify: n must be >= 1");
  const Eigen::Index d = t.hilbert_dim();
  const double scale = std::sqrt(static_cast<double>(n));
  std::vector<Operator> basis;
  basis.reserve(static_cast<std::size_t>(n * n) * t.algebra().basis().size());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (const Operator& b : t.algebra().basis())
        basis.push_back(scale * kron(matrix_unit(n, i, j), b));
  Operator dirac = kron(Operator::Identity(n, n), t.dirac());
  return FiniteSpectralTriple(
      StarAlgebra::from_orthonormal_basis(n * d, std::move(basis)),
      HermitianOperator(std::move(dirac)), t.max_ladder_depth());
}

// A direct sum of triples plus the block layout needed to embed and extract
// summand elements. The sum algebra's basis is the union of the summand
// bases placed in their diagonal blocks (rescaled to unit norm), so its
// dimension is the sum of the summand dimensions.
class DirectSum {
 public:
  explicit DirectSum(const std::vector<FiniteSpectralTriple>& parts)
      : triple_(build(parts)) {}

  const FiniteSpectralTriple& triple() const { return triple_; }
  std::size_t parts() const { return dims_.size(); }
  Eigen::Index part_dim(std::size_t i) const { return dims_.at(i); }
  Eigen::Index part_offset(std::size_t i) const { return offsets_.at(i); }

  // Places a summand element into its diagonal block, zero elsewhere.
  Operator embed(std::size_t i, const Operator& a) const {
    require_square(a, "DirectSum::embed");
    if (a.rows() != dims_.at(i))
      throw DimensionMismatch("DirectSum::embed: wrong summand dimension");
    Operator out = Operator::Zero(total_, total_);
    out.block(offsets_[i], offsets_[i], dims_[i], dims_[i]) = a;
    return out;
  }

  // Extracts the i-th diagonal block.
  Operator block_of(std::size_t i, const Operator& a) const {
    require_square(a, "DirectSum::block_of");
    if (a.rows() != total_)
      throw DimensionMismatch("DirectSum::block_of: wrong sum dimension");
    return a.block(offsets_.at(i), offsets_[i], dims_[i], dims_[i]);
  }

 private:
  FiniteSpectralTriple build(const std::vector<FiniteSpectralTriple>& parts) {
    if (parts.empty()) throw ValidationError("direct_sum: empty list");
    total_ = 0;
    int depth = parts.front().max_ladder_depth();
    for (const FiniteSpectralTriple& p : parts) {
      offsets_.push_back(total_);
      dims_.push_back(p.hilbert_dim());
      total_ += p.hilbert_dim();
      depth = std::min(depth, p.max_ladder_depth());
    }
    Operator dirac = Operator::Zero(total_, total_);
    std::vector<Operator> basis;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      dirac.block(offsets_[i], offsets_[i], dims_[i], dims_[i]) =
          parts[i].dirac();
      const double scale =
          std::sqrt(static_cast<double>(total_) / static_cast<double>(dims_[i]));
      for (const Operator& b : parts[i].algebra().basis())
        basis.push_back(scale * embed(i, b));
    }
    return FiniteSpectralTriple(
        StarAlgebra::from_orthonormal_basis(total_, std::move(basis)),
        HermitianOperator(std::move(dirac)), depth);
  }

  std::vector<Eigen::Index> offsets_;
  std::vector<Eigen::Index> dims_;
  Eigen::Index total_ = 0;
  FiniteSpectralTriple triple_;
};

inline DirectSum direct_sum(const std::vector<FiniteSpectralTriple>& parts) {
  return DirectSum(parts);
}

}  // namespace finspec
