#pragma once

#include <cmath>
#include <iostream>
#include <sstream>
#include <vector>

#include "finspec/operator.hpp"

namespace finspec {

// Exponential map of the invertible group: scaling and squaring around a
// truncated Taylor core. The scaled argument has norm <= 0.5, where the
// series converges to machine precision in at most ~25 terms.
inline Operator exp_map(const Operator& v) {
  require_square(v, "exp_map");
  const Eigen::Index d = v.rows();
  const double norm = op_norm(v);
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    squarings = std::min(squarings, 64);
  }
  const Operator x = v / std::pow(2.0, squarings);
  Operator term = Operator::Identity(d, d);
  Operator sum = term;
  for (int n = 1; n <= 40; ++n) {
    term = (x * term) / static_cast<double>(n);
    sum += term;
    if (term.norm() < 1e-20 * (1.0 + sum.norm())) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// Smallest series order whose tail bound ||w|| e^{||v||} ||v||^N / N! drops
// below the tolerance; the directional-derivative series is then truncated
// there.
inline int exp_derivative_order(double v_norm, double w_norm,
                                double tail_tol = 1e-12) {
  const double scale = (w_norm > 0 ? w_norm : 1.0) * std::exp(v_norm);
  double tail = scale;  // ||v||^N / N! at N = 0
  int n = 0;
  while (tail >= tail_tol && n < 160) {
    ++n;
    tail *= v_norm / static_cast<double>(n);
  }
  return std::max(n, 1);
}

// Directional (Gateaux) derivative of the exponential map at v along w:
// the series over n of (1/n!) sum_{j<n} v^j w v^{n-1-j}, truncated at the
// requested order.
inline Operator exp_derivative(const Operator& v, const Operator& w,
                               int truncation_order) {
  require_same_dim(v, w, "exp_derivative");
  if (truncation_order < 1)
    throw ValidationError("exp_derivative: truncation order must be >= 1");
  const Eigen::Index d = v.rows();
  const int order = truncation_order;

  // powers[j] = v^j, lefts[j] = v^j * w for j = 0..order-1
  std::vector<Operator> powers, lefts;
  powers.reserve(static_cast<std::size_t>(order));
  lefts.reserve(static_cast<std::size_t>(order));
  powers.push_back(Operator::Identity(d, d));
  lefts.push_back(w);
  for (int j = 1; j < order; ++j) {
    powers.push_back(powers.back() * v);
    lefts.push_back(powers.back() * w);
  }

  Operator sum = Operator::Zero(d, d);
  double factorial = 1.0;
  for (int n = 1; n <= order; ++n) {
    factorial *= static_cast<double>(n);
    Operator term = Operator::Zero(d, d);
    for (int j = 0; j <= n - 1; ++j)
      term += lefts[static_cast<std::size_t>(j)] *
              powers[static_cast<std::size_t>(n - 1 - j)];
    sum += term / factorial;
  }
  return sum;
}

// Adaptive-order variant using the tail bound above.
inline Operator exp_derivative(const Operator& v, const Operator& w) {
  return exp_derivative(v, w, exp_derivative_order(op_norm(v), op_norm(w)));
}

// Operator-norm distance to the identity.
inline double identity_distance(const Operator& g) {
  require_square(g, "identity_distance");
  return op_norm(Operator(g - Operator::Identity(g.rows(), g.cols())));
}

namespace detail {

// Principal square root by the Denman-Beavers iteration; quadratically
// convergent when no eigenvalue lies on the closed negative real axis,
// which holds throughout the ||g - I|| < 1 domain used below.
inline Operator sqrt_denman_beavers(const Operator& a) {
  const Eigen::Index d = a.rows();
  Operator y = a;
  Operator z = Operator::Identity(d, d);
  for (int it = 0; it < 60; ++it) {
    const Operator yn = 0.5 * (y + matrix_inverse(z));
    const Operator zn = 0.5 * (z + matrix_inverse(y));
    const double delta = (yn - y).norm();
    y = yn;
    z = zn;
    if (delta <= 1e-15 * (1.0 + y.norm())) break;
  }
  return y;
}

}  // namespace detail

// Principal logarithm near the identity by inverse scaling and squaring:
// repeated square roots push the argument close to the identity, where the
// Gregory series log(g) = 2 sum z^(2j+1)/(2j+1), z = (g-I)(g+I)^{-1},
// converges rapidly. Only defined on ||g - I|| < 1; the guaranteed
// diffeomorphism neighborhood ends at 1/2, so arguments beyond it are
// accepted with a warning.
inline Operator log_near_identity(const Operator& g) {
  require_square(g, "log_near_identity");
  const double dist = identity_distance(g);
  if (!(dist < 1.0)) {
    std::ostringstream os;
    os << "log_near_identity: ||g - I|| = " << dist
       << " is outside the neighborhood (< 1 required)";
    throw OutsideNeighborhood(os.str(), dist);
  }
  if (dist >= 0.5)
    std::cerr << "log_near_identity: warning: ||g - I|| = " << dist
              << " lies beyond the guaranteed neighborhood 1/2\n";
  const Eigen::Index d = g.rows();
  Operator a = g;
  int sqrts = 0;
  while (identity_distance(a) > 0.25 && sqrts < 40) {
    a = detail::sqrt_denman_beavers(a);
    ++sqrts;
  }
  const Operator id = Operator::Identity(d, d);
  const Operator z = (a - id) * matrix_inverse(Operator(a + id));
  const Operator z2 = z * z;
  Operator term = z;
  Operator sum = z;
  for (int j = 1; j <= 40; ++j) {
    term = term * z2;
    const Operator inc = term / static_cast<double>(2 * j + 1);
    sum += inc;
    if (inc.norm() < 1e-18 * (1.0 + sum.norm())) break;
  }
  return std::pow(2.0, sqrts + 1) * sum;
}

// Worst central-difference defect of the one-parameter group property
// d/dt exp(t v) = v exp(t v) over the grid. Small values certify the
// defining flow equation of the exponential.
inline double ode_residual(const Operator& v, const std::vector<double>& t_grid,
                           double step = 1e-5) {
  require_square(v, "ode_residual");
  double worst = 0.0;
  for (double t : t_grid) {
    const Operator plus = exp_map(Operator((t + step) * v));
    const Operator minus = exp_map(Operator((t - step) * v));
    const Operator fd = (plus - minus) / (2.0 * step);
    const Operator rhs = v * exp_map(Operator(t * v));
    worst = std::max(worst, op_norm(Operator(fd - rhs)));
  }
  return worst;
}

}  // namespace finspec
