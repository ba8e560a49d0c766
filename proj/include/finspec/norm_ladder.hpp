#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "finspec/spectral_triple.hpp"

namespace finspec {

// The increasing family of submultiplicative *-norms a spectral triple puts
// on its algebra: level k adds the norm of the k-fold derivation divided by
// k!, and the ladder norm of order n is the running sum of those seminorms.

// Seminorms and running norms of one element up to a given depth.
struct NormLadderReport {
  std::string element_label;
  int depth = 0;
  std::vector<double> seminorms;  // seminorms[k] = ||derivation^k(a)|| / k!
  std::vector<double> norms;      // norms[k] = sum of seminorms[0..k]
};

namespace detail {
inline std::vector<Operator> derivation_powers(const FiniteSpectralTriple& t,
                                               const Operator& a, int n) {
  std::vector<Operator> powers;
  powers.reserve(static_cast<std::size_t>(n) + 1);
  powers.push_back(t.derivation(a, 0));  // validates membership and depth
  for (int k = 1; k <= n; ++k)
    powers.push_back(commutator(t.dirac(), powers.back()));
  return powers;
}

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j)
    c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
  return c;
}
}  // namespace detail

inline NormLadderReport norm_ladder(const FiniteSpectralTriple& t,
                                    const Operator& a, int depth,
                                    std::string label = {}) {
  const std::vector<Operator> powers = detail::derivation_powers(t, a, depth);
  NormLadderReport report;
  report.element_label = std::move(label);
  report.depth = depth;
  double factorial = 1.0;
  double running = 0.0;
  for (int k = 0; k <= depth; ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    const double seminorm = op_norm(powers[static_cast<std::size_t>(k)]) / factorial;
    running += seminorm;
    report.seminorms.push_back(seminorm);
    report.norms.push_back(running);
  }
  return report;
}

// ||derivation^k(a)|| / k!; order zero is the operator norm.
inline double derivation_seminorm(const FiniteSpectralTriple& t,
                                  const Operator& a, int k) {
  return norm_ladder(t, a, k).seminorms.back();
}

// Ladder norm of order n: the sum of the seminorms up to n.
inline double ladder_norm(const FiniteSpectralTriple& t, const Operator& a,
                          int n) {
  return norm_ladder(t, a, n).norms.back();
}

// Constants for the one-sided product bound
//   ||a.x||_n <= ||a||_0 ||x||_n + eta_n(a) ||x||_{n-1}.
// eta_1 is the norm of the first derivation of a; each further level adds
// alpha_k(a) = max_{1<=j<=k+1} binom(k+1, j) ||derivation^j(a)||.
struct ProductBoundConstants {
  std::vector<double> eta;    // eta[k-1] bounds level k, k = 1..n
  std::vector<double> alpha;  // alpha[k-1] is the increment from level k
};

inline ProductBoundConstants product_bound_constants(
    const FiniteSpectralTriple& t, const Operator& a, int n) {
  if (n < 1) throw ValidationError("product_bound_constants: n must be >= 1");
  const std::vector<Operator> powers = detail::derivation_powers(t, a, n);
  std::vector<double> power_norms;
  power_norms.reserve(powers.size());
  for (const Operator& p : powers) power_norms.push_back(op_norm(p));

  ProductBoundConstants out;
  out.eta.push_back(power_norms[1]);
  for (int k = 1; k + 1 <= n; ++k) {
    double alpha = 0.0;
    for (int j = 1; j <= k + 1; ++j)
      alpha = std::max(alpha, detail::binomial(k + 1, j) *
                                  power_norms[static_cast<std::size_t>(j)]);
    out.alpha.push_back(alpha);
    out.eta.push_back(out.eta.back() + alpha);
  }
  return out;
}

struct ProductBoundCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs; may be slightly negative within slack
};

// Evaluates the product bound for a given pair and level. The slack absorbs
// floating-point noise relative to the size of the right-hand side.
inline ProductBoundCheck check_product_bound(const FiniteSpectralTriple& t,
                                             const Operator& a,
                                             const Operator& x, int n,
                                             double slack = 1e-9) {
  if (n < 1) throw ValidationError("check_product_bound: n must be >= 1");
  const ProductBoundConstants c = product_bound_constants(t, a, n);
  const NormLadderReport xr = norm_ladder(t, x, n);
  ProductBoundCheck out;
  out.lhs = ladder_norm(t, Operator(a * x), n);
  out.rhs = norm_ladder(t, a, 0).norms[0] * xr.norms[static_cast<std::size_t>(n)] +
            c.eta[static_cast<std::size_t>(n - 1)] *
                xr.norms[static_cast<std::size_t>(n - 1)];
  out.margin = out.rhs - out.lhs;
  out.holds = out.lhs <= out.rhs + slack * out.rhs;
  return out;
}

}  // namespace finspec
