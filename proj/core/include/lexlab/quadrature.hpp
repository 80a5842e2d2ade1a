#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace lexlab::quad {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct Options {
  double abs_tol = 1e-10;
  int max_depth = 50;
  /// Every interval is bisected at least this many times before the error test.
  int min_depth = 3;
  std::size_t max_evaluations = 50'000'000;
};

/// Adaptive Simpson with Richardson correction on [a, b]. Throws
/// QuadratureError when the depth or evaluation budget is exhausted before
/// the absolute tolerance is met.
Result adaptive_simpson(const std::function<double(double)>& f, double a, double b, const Options& opt = {});

/// Integrates separately over the pieces of [a, b] cut at `breakpoints`
/// (values outside (a, b) are ignored). Inside each piece the integrand is
/// sampled at points nudged one ulp inward from the piece ends, so a
/// function with a jump at a breakpoint is seen from the correct side.
/// The tolerance budget is shared in proportion to piece width.
Result integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints, const Options& opt = {});

}  // namespace lexlab::quad
