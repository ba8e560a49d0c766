#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "finspec/errors.hpp"

namespace finspec {

// Logarithmic-mean estimation for singular-value sequences: the means
// (1/log N) sum_{i<N} mu_i at a set of checkpoints, together with an
// extrapolation of the N -> infinity limit. Bounded means characterize the
// logarithmically divergent sequences the Dixmier trace sums.
struct DixmierEstimate {
  struct Checkpoint {
    std::int64_t n = 0;
    double mean = 0.0;
  };
  std::vector<Checkpoint> partial_means;
  double extrapolated = 0.0;
  bool converged = false;
};

namespace detail {
// Fits mean(N) = c + b / log N over the given checkpoints by least squares
// and returns c. With two points this is the exact solve.
inline double extrapolate_log_means(
    const std::vector<DixmierEstimate::Checkpoint>& pts) {
  const std::size_t m = pts.size();
  if (m == 1) return pts[0].mean;
  double sz = 0.0, szz = 0.0, sy = 0.0, szy = 0.0;
  for (const auto& p : pts) {
    const double z = 1.0 / std::log(static_cast<double>(p.n));
    sz += z;
    szz += z * z;
    sy += p.mean;
    szy += z * p.mean;
  }
  const double n = static_cast<double>(m);
  const double det = n * szz - sz * sz;
  if (std::abs(det) < 1e-30) return pts.back().mean;
  return (szz * sy - sz * szy) / det;
}
}  // namespace detail

// Logarithmic means of a nonincreasing sequence at each checkpoint.
// Checkpoints must be strictly increasing, at least 2, and within the
// sequence length. Convergence is declared when the last two checkpoint
// means differ by less than convergence_tol relatively; the extrapolation
// fits c + b/log N over the last three checkpoints.
inline DixmierEstimate dixmier_mean(const std::vector<double>& mu,
                                    const std::vector<std::int64_t>& checkpoints,
                                    double convergence_tol = 5e-3) {
  for (std::size_t i = 0; i + 1 < mu.size(); ++i) {
    if (mu[i + 1] > mu[i] * (1.0 + 1e-12) + 1e-300) {
      std::ostringstream os;
      os << "dixmier_mean: sequence increases at index " << i;
      throw NotSorted(os.str());
    }
    if (mu[i] < 0.0) throw ValidationError("dixmier_mean: negative entry");
  }
  if (checkpoints.empty())
    throw ValidationError("dixmier_mean: no checkpoints");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 2)
      throw ValidationError("dixmier_mean: checkpoints must be >= 2");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw ValidationError("dixmier_mean: checkpoints must increase");
    if (checkpoints[i] > static_cast<std::int64_t>(mu.size())) {
      std::ostringstream os;
      os << "dixmier_mean: checkpoint " << checkpoints[i]
         << " exceeds sequence length " << mu.size();
      throw LengthMismatch(os.str());
    }
  }

  DixmierEstimate out;
  double partial = 0.0;
  std::int64_t index = 0;
  for (std::int64_t n : checkpoints) {
    for (; index < n; ++index)
      partial += mu[static_cast<std::size_t>(index)];
    out.partial_means.push_back(
        {n, partial / std::log(static_cast<double>(n))});
  }

  const std::size_t m = out.partial_means.size();
  const std::size_t fit = std::min<std::size_t>(3, m);
  out.extrapolated = detail::extrapolate_log_means(
      {out.partial_means.end() - static_cast<std::ptrdiff_t>(fit),
       out.partial_means.end()});
  if (m >= 2) {
    const double last = out.partial_means[m - 1].mean;
    const double prev = out.partial_means[m - 2].mean;
    out.converged =
        std::abs(last - prev) < convergence_tol * std::max(1.0, std::abs(last));
  }
  return out;
}

// Eigenvalues +/-1, +/-2, ..., +/-n of the circle-type Dirac surrogate.
inline std::vector<double> circle_dirac_eigenvalues(std::int64_t n) {
  if (n < 1)
    throw ValidationError("circle_dirac_eigenvalues: n must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  for (std::int64_t k = 1; k <= n; ++k) {
    out.push_back(static_cast<double>(k));
    out.push_back(static_cast<double>(-k));
  }
  return out;
}

// Logarithmic-mean estimate of the weighted sequence L |D|^{-d} for
// simultaneously diagonal L and D given by matched eigenvalue lists. The
// product sequence is sorted nonincreasing before estimation. With L = I
// this estimates the mean of |D|^{-d} itself; the normalized trace of a
// weight L is then the ratio of the two estimates.
inline DixmierEstimate hypertrace_estimate(
    const std::vector<double>& l_diag,
    const std::vector<double>& dirac_eigenvalues, double d,
    const std::vector<std::int64_t>& checkpoints,
    double convergence_tol = 5e-3) {
  if (l_diag.size() != dirac_eigenvalues.size())
    throw LengthMismatch(
        "hypertrace_estimate: L and D eigenvalue lists differ in length");
  if (!(d > 0.0))
    throw ValidationError("hypertrace_estimate: d must be positive");
  std::vector<double> mu;
  mu.reserve(l_diag.size());
  for (std::size_t i = 0; i < l_diag.size(); ++i) {
    const double lam = std::abs(dirac_eigenvalues[i]);
    if (lam <= 0.0)
      throw ValidationError(
          "hypertrace_estimate: Dirac eigenvalue vanishes; |D|^{-d} undefined");
    mu.push_back(std::abs(l_diag[i]) * std::pow(lam, -d));
  }
  std::sort(mu.begin(), mu.end(), std::greater<double>());
  return dixmier_mean(mu, checkpoints, convergence_tol);
}

}  // namespace finspec
