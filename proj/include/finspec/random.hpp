#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "finspec/omega_form.hpp"
#include "finspec/star_algebra.hpp"

namespace finspec {

// Seeded generator for the verification campaigns. The uniform mapping is
// hand-rolled from the raw 64-bit stream so identical seeds give identical
// draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on the closed complex unit disc.
  Complex unit_disc() {
    const double r = std::sqrt(uniform());
    const double phi = 2.0 * std::numbers::pi * uniform();
    return Complex(r * std::cos(phi), r * std::sin(phi));
  }

 private:
  std::mt19937_64 gen_;
};

// Random element of the algebra: a combination of the basis with
// coefficients uniform in the unit disc, optionally rescaled to the target
// operator norm. Staying inside the span by construction keeps campaign
// draws honest algebra elements.
inline Operator random_algebra_element(const StarAlgebra& algebra, Rng& rng,
                                       double target_norm = 1.0) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Eigen::VectorXcd c(algebra.dimension());
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = rng.unit_disc();
    Operator a = algebra.from_coordinates(c);
    if (target_norm <= 0.0) return a;
    const double norm = op_norm(a);
    if (norm > 1e-12) return Operator(a * (target_norm / norm));
  }
  // Vanishingly unlikely; the unit is always available.
  return target_norm * algebra.unit();
}

// Random matrix with unit-disc entries (not confined to any algebra).
inline Operator random_matrix(Eigen::Index dim, Rng& rng) {
  Operator a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = rng.unit_disc();
  return a;
}

// Random element of the form's real Lie algebra, built by projecting a
// random matrix onto the fixed-point set of the involution.
inline Operator random_lie_element(const OmegaForm& form, Rng& rng,
                                   double target_norm = 1.0) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Operator x = random_matrix(form.dim(), rng);
    Operator u = form.real_form_split(x).first;
    const double norm = op_norm(u);
    if (norm > 1e-12) {
      if (target_norm > 0.0) u *= target_norm / norm;
      return u;
    }
  }
  throw Error("random_lie_element: degenerate draws");
}

}  // namespace finspec
