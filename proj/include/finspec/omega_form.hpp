#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "finspec/operator.hpp"
#include "finspec/star_algebra.hpp"

namespace finspec {

// An omega form: an invertible algebra element with Omega^{-1} = Omega^* =
// eps * Omega, eps = +1 or -1. Each form carries the antilinear involution
// sigma(a) = -eps Omega a^* Omega whose fixed points are the real Lie
// algebra of the associated group {a : a^* Omega a = Omega}. eps = +1
// covers the unitary and pseudo-unitary families, eps = -1 the symplectic
// one.
class OmegaForm {
 public:
  // Validates the defining identities (within rel_tol, scaled by the norms
  // involved), infers the sign, and rejects anything else with a message
  // naming the identity that failed.
  static OmegaForm make(const Operator& omega, const StarAlgebra& algebra,
                        double rel_tol = tol::omega_form) {
    require_square(omega, "OmegaForm");
    if (omega.rows() != algebra.ambient_dim())
      throw DimensionMismatch("OmegaForm: dimension differs from algebra");
    algebra.require_member(omega, "OmegaForm");
    const double norm = op_norm(omega);
    const double scale = 1.0 + norm;
    const Operator id = Operator::Identity(omega.rows(), omega.cols());
    const double unitary_defect = op_norm(Operator(omega.adjoint() * omega - id));
    if (unitary_defect > rel_tol * scale * scale) {
      std::ostringstream os;
      os << "OmegaForm: Omega^* != Omega^{-1} (defect " << unitary_defect
         << ")";
      throw NotAnOmegaForm(os.str());
    }
    const double plus_defect = op_norm(Operator(omega.adjoint() - omega));
    const double minus_defect = op_norm(Operator(omega.adjoint() + omega));
    const int eps = plus_defect <= minus_defect ? 1 : -1;
    const double sign_defect = std::min(plus_defect, minus_defect);
    if (sign_defect > rel_tol * scale) {
      std::ostringstream os;
      os << "OmegaForm: Omega^* != +/-Omega (defects " << plus_defect << ", "
         << minus_defect << ")";
      throw NotAnOmegaForm(os.str());
    }
    const double square_defect =
        op_norm(Operator(omega * omega - static_cast<double>(eps) * id));
    if (square_defect > rel_tol * scale * scale) {
      std::ostringstream os;
      os << "OmegaForm: Omega^2 != eps*I (defect " << square_defect << ")";
      throw NotAnOmegaForm(os.str());
    }
    return OmegaForm(omega, eps);
  }

  const Operator& omega() const { return omega_; }
  int epsilon() const { return eps_; }
  Eigen::Index dim() const { return omega_.rows(); }

  // The antilinear involution -eps Omega a^* Omega. It commutes with the
  // adjoint and preserves the commutator bracket.
  Operator involution(const Operator& a) const {
    require_same_dim(a, omega_, "OmegaForm::involution");
    return -static_cast<double>(eps_) * omega_ * a.adjoint() * omega_;
  }

  struct MembershipResidual {
    bool inside = false;
    double residual = 0.0;   // defining-equation defect
    double cross_check = 0.0;  // independent route, must agree with residual
  };

  // Lie-algebra membership: x^* Omega + Omega x = 0, equivalently
  // sigma(x) = x. Both defects are computed; the fixed-point route is the
  // cross-check.
  MembershipResidual lie_algebra_membership(
      const Operator& x, double rel_tol = tol::group_membership) const {
    require_same_dim(x, omega_, "OmegaForm::lie_algebra_membership");
    const double defect =
        op_norm(Operator(x.adjoint() * omega_ + omega_ * x));
    const double fixed_point = op_norm(Operator(involution(x) - x));
    const double scale = 1.0 + op_norm(x) * op_norm(omega_);
    MembershipResidual out;
    out.residual = defect;
    out.cross_check = fixed_point;
    out.inside = defect <= rel_tol * scale && fixed_point <= rel_tol * scale;
    return out;
  }

  // Group membership: a^* Omega a = Omega. On members the explicit inverse
  // formula a^{-1} = eps Omega a^* Omega must hold as well; its defect is
  // the cross-check (and certifies invertibility).
  MembershipResidual group_membership(
      const Operator& a, double rel_tol = tol::group_membership) const {
    require_same_dim(a, omega_, "OmegaForm::group_membership");
    const double defect =
        op_norm(Operator(a.adjoint() * omega_ * a - omega_));
    const Operator candidate_inverse =
        static_cast<double>(eps_) * omega_ * a.adjoint() * omega_;
    const Operator id = Operator::Identity(dim(), dim());
    const double inverse_defect =
        op_norm(Operator(a * candidate_inverse - id));
    const double anorm = op_norm(a);
    const double scale = 1.0 + anorm * anorm * op_norm(omega_);
    MembershipResidual out;
    out.residual = defect;
    out.cross_check = inverse_defect;
    out.inside =
        defect <= rel_tol * scale && inverse_defect <= rel_tol * scale;
    return out;
  }

  // Splits x = u + i w with both parts fixed by the involution; this is the
  // real-form decomposition of the matrix algebra over this form.
  std::pair<Operator, Operator> real_form_split(const Operator& x) const {
    require_same_dim(x, omega_, "OmegaForm::real_form_split");
    const Operator s = involution(x);
    const Operator u = 0.5 * (x + s);
    const Operator w = (x - s) / Complex(0.0, 2.0);
    return {u, w};
  }

 private:
  OmegaForm(Operator omega, int eps) : omega_(std::move(omega)), eps_(eps) {}

  Operator omega_;
  int eps_;
};

enum class Family { unitary, symplectic, pseudo_unitary };
enum class MembershipKind { group, lie_algebra };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::unitary: return "unitary";
    case Family::symplectic: return "symplectic";
    case Family::pseudo_unitary: return "pseudo_unitary";
  }
  return "?";
}

// The reference form of each classical family: the identity (unitary), the
// skew block form [[0,-I],[I,0]] (symplectic), and the signature matrix
// diag(I_p, -I_q) (pseudo-unitary).
inline Operator family_omega(Family family, Eigen::Index dim,
                             Eigen::Index p = -1, Eigen::Index q = -1) {
  switch (family) {
    case Family::unitary:
      return Operator::Identity(dim, dim);
    case Family::symplectic: {
      if (dim % 2 != 0)
        throw BadBlockLayout("symplectic family needs even dimension");
      const Eigen::Index h = dim / 2;
      Operator omega = Operator::Zero(dim, dim);
      omega.block(0, h, h, h) = -Operator::Identity(h, h);
      omega.block(h, 0, h, h) = Operator::Identity(h, h);
      return omega;
    }
    case Family::pseudo_unitary: {
      if (p < 1 || q < 1 || p + q != dim)
        throw BadBlockLayout("pseudo_unitary family needs p, q >= 1 with p+q = dim");
      Operator omega = Operator::Identity(dim, dim);
      omega.block(p, p, q, q) = -Operator::Identity(q, q);
      return omega;
    }
  }
  throw BadBlockLayout("unknown family");
}

struct BlockEquationResidual {
  std::string equation;
  double residual = 0.0;
};

namespace detail {
// Largest singular value of a possibly rectangular block.
inline double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m,
                                                     Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}
}  // namespace detail

struct BlockReport {
  Family family;
  MembershipKind kind;
  std::vector<BlockEquationResidual> equations;
  double tolerance = 0.0;
  bool pass = false;

  double worst() const {
    double w = 0.0;
    for (const auto& e : equations) w = std::max(w, e.residual);
    return w;
  }
};

// Blockwise characterization of the classical families. Each equation of
// the 2x2 block description is evaluated separately so a failure names the
// equation that broke. Agrees with the corresponding OmegaForm membership
// test on clean instances by construction of the tolerances.
inline BlockReport classify_blocks(Family family, const Operator& a,
                                   MembershipKind kind, Eigen::Index p = -1,
                                   Eigen::Index q = -1,
                                   double rel_tol = tol::group_membership) {
  require_square(a, "classify_blocks");
  const Eigen::Index dim = a.rows();
  Eigen::Index top = 0, bottom = 0;
  if (family == Family::pseudo_unitary) {
    if (p < 1 || q < 1 || p + q != dim)
      throw BadBlockLayout("classify_blocks: need p, q >= 1 with p+q = dim");
    top = p;
    bottom = q;
  } else {
    if (dim % 2 != 0)
      throw BadBlockLayout("classify_blocks: even dimension required");
    top = bottom = dim / 2;
  }
  const Operator A = a.block(0, 0, top, top);
  const Operator B = a.block(0, top, top, bottom);
  const Operator C = a.block(top, 0, bottom, top);
  const Operator D = a.block(top, top, bottom, bottom);
  const Operator It = Operator::Identity(top, top);
  const Operator Ib = Operator::Identity(bottom, bottom);

  BlockReport report;
  report.family = family;
  report.kind = kind;
  auto eq = [&report](std::string name, const Eigen::MatrixXcd& defect) {
    report.equations.push_back({std::move(name), detail::spectral_norm(defect)});
  };

  if (kind == MembershipKind::group) {
    switch (family) {
      case Family::unitary:
        eq("a*.a + c*.c = I", A.adjoint() * A + C.adjoint() * C - It);
        eq("b*.b + d*.d = I", B.adjoint() * B + D.adjoint() * D - Ib);
        eq("a*.b + c*.d = 0", A.adjoint() * B + C.adjoint() * D);
        break;
      case Family::symplectic:
        eq("c*.a = a*.c", C.adjoint() * A - A.adjoint() * C);
        eq("d*.b = b*.d", D.adjoint() * B - B.adjoint() * D);
        eq("d*.a - b*.c = I", D.adjoint() * A - B.adjoint() * C - It);
        break;
      case Family::pseudo_unitary:
        eq("a*.a - c*.c = I", A.adjoint() * A - C.adjoint() * C - It);
        eq("d*.d - b*.b = I", D.adjoint() * D - B.adjoint() * B - Ib);
        eq("a*.b = c*.d", A.adjoint() * B - C.adjoint() * D);
        break;
    }
    const double anorm = op_norm(a);
    report.tolerance = rel_tol * (1.0 + anorm * anorm);
  } else {
    switch (family) {
      case Family::unitary:
        eq("a* + a = 0", A.adjoint() + A);
        eq("d* + d = 0", D.adjoint() + D);
        eq("c = -b*", C + B.adjoint());
        break;
      case Family::symplectic:
        eq("b* = b", B.adjoint() - B);
        eq("c* = c", C.adjoint() - C);
        eq("d = -a*", D + A.adjoint());
        break;
      case Family::pseudo_unitary:
        eq("a* + a = 0", A.adjoint() + A);
        eq("d* + d = 0", D.adjoint() + D);
        eq("c = b*", C - B.adjoint());
        break;
    }
    report.tolerance = rel_tol * (1.0 + op_norm(a));
  }
  report.pass = report.worst() <= report.tolerance;
  return report;
}

}  // namespace finspec
