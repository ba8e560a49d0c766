#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "finspec/exponential.hpp"
#include "finspec/operator.hpp"

namespace finspec {

// A group-valued curve known at finitely many parameter values. Times are
// strictly increasing and every value is invertible.
struct CurveSample {
  std::vector<double> times;
  std::vector<Operator> values;

  void validate() const {
    if (times.size() != values.size())
      throw LengthMismatch("CurveSample: times and values differ in length");
    if (times.empty()) throw ValidationError("CurveSample: empty sample");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1]))
        throw ValidationError("CurveSample: times must be strictly increasing");
    for (const Operator& g : values) {
      const Eigen::VectorXd sv = singular_values(g);
      if (!(sv(sv.size() - 1) > tol::singular * sv(0)))
        throw NotInvertible("CurveSample: value not invertible",
                            sv(sv.size() - 1));
    }
  }
};

// A piecewise-constant coefficient path: value k holds on
// [breakpoints[k], breakpoints[k+1]).
struct StepFunction {
  std::vector<double> breakpoints;  // m + 1 strictly increasing values
  std::vector<Operator> values;     // m operators

  void validate() const {
    if (breakpoints.size() < 2)
      throw ValidationError("StepFunction: need at least one interval");
    if (values.size() + 1 != breakpoints.size())
      throw LengthMismatch(
          "StepFunction: values must be one shorter than breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
      if (!(breakpoints[i] > breakpoints[i - 1]))
        throw ValidationError("StepFunction: breakpoints must increase");
  }
};

// Value of the product integral at time t: the ordered product of the step
// exponentials up to the interval containing t. At the left endpoint this is
// the identity.
inline Operator product_integral_at(const StepFunction& x, double t) {
  x.validate();
  if (t < x.breakpoints.front() || t > x.breakpoints.back())
    throw ValidationError("product_integral_at: t outside the time interval");
  const Eigen::Index d = x.values.front().rows();
  Operator acc = Operator::Identity(d, d);
  for (std::size_t k = 0; k < x.values.size(); ++k) {
    const double left = x.breakpoints[k];
    const double right = x.breakpoints[k + 1];
    const double stop = std::min(t, right);
    if (stop > left)
      acc = exp_map(Operator((stop - left) * x.values[k])) * acc;
    if (t <= right) break;
  }
  return acc;
}

// Samples the product integral at every breakpoint plus samples_per_step - 1
// equispaced interior points of each interval.
inline CurveSample product_integral(const StepFunction& x,
                                    int samples_per_step = 1) {
  x.validate();
  if (samples_per_step < 1)
    throw ValidationError("product_integral: samples_per_step must be >= 1");
  const Eigen::Index d = x.values.front().rows();
  CurveSample out;
  Operator left_value = Operator::Identity(d, d);
  out.times.push_back(x.breakpoints.front());
  out.values.push_back(left_value);
  for (std::size_t k = 0; k < x.values.size(); ++k) {
    const double left = x.breakpoints[k];
    const double width = x.breakpoints[k + 1] - left;
    for (int s = 1; s <= samples_per_step; ++s) {
      const double dt = width * static_cast<double>(s) /
                        static_cast<double>(samples_per_step);
      out.times.push_back(left + dt);
      out.values.push_back(exp_map(Operator(dt * x.values[k])) * left_value);
    }
    left_value = out.values.back();
  }
  return out;
}

// Logarithmic derivative U'(t) U(t)^{-1} estimated from the samples nearest
// to t by a central difference. For differentiable curves this equals the
// limit of (U(t+s/n) U(t)^{-1})^n that defines the derivative group-
// theoretically, and it is far better conditioned.
inline Operator log_derivative(const CurveSample& u, double t,
                               double max_gap = 0.1) {
  u.validate();
  const auto it = std::min_element(
      u.times.begin(), u.times.end(),
      [t](double a, double b) { return std::abs(a - t) < std::abs(b - t); });
  const std::size_t i = static_cast<std::size_t>(it - u.times.begin());
  if (i == 0 || i + 1 >= u.times.size())
    throw InsufficientSamples(
        "log_derivative: need samples on both sides of t");
  const double span = u.times[i + 1] - u.times[i - 1];
  if (std::abs(u.times[i] - t) > max_gap || span > 2.0 * max_gap) {
    std::ostringstream os;
    os << "log_derivative: samples near t = " << t
       << " are too sparse for finite differencing";
    throw InsufficientSamples(os.str());
  }
  const Operator diff = (u.values[i + 1] - u.values[i - 1]) / span;
  return diff * matrix_inverse(u.values[i]);
}

// Convenience: tabulates a curve given as a callable.
inline CurveSample sample_curve(const std::function<Operator(double)>& curve,
                                std::vector<double> times) {
  CurveSample out;
  out.times = std::move(times);
  out.values.reserve(out.times.size());
  for (double t : out.times) out.values.push_back(curve(t));
  out.validate();
  return out;
}

}  // namespace finspec
