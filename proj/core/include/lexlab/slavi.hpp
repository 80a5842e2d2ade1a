#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lexlab/quadrature.hpp"

namespace lexlab::slavi {

/// A function N(lambda) on [0, 1] to be carried from bias to rank.
class BiasFunction {
 public:
  enum class Kind { step, ramp, tabulated };

  /// 0 below the transition point x, 1 from x onward.
  static BiasFunction step(double x);
  /// N(lambda) = lambda.
  static BiasFunction ramp();
  /// Piecewise-linear interpolant through (lambda, value) knots; lambdas
  /// strictly increasing inside [0, 1]. Held constant beyond the end knots.
  static BiasFunction tabulated(std::vector<std::pair<double, double>> table);

  Kind kind() const noexcept { return kind_; }
  double transition() const noexcept { return x_; }
  const std::vector<std::pair<double, double>>& table() const noexcept { return table_; }

  double operator()(double lambda) const;
  /// Points where the function or its derivative is not smooth.
  std::vector<double> breakpoints() const;

 private:
  BiasFunction(Kind k, double x, std::vector<std::pair<double, double>> t)
      : kind_(k), x_(x), table_(std::move(t)) {}
  Kind kind_;
  double x_;
  std::vector<std::pair<double, double>> table_;
};

/// Transform of the unit step with transition x:
///   N(r, x) = integral_x^1 e^(-lambda r) dlambda = (e^(-x r) - e^(-r)) / r,
/// with N(0, x) = 1 - x. Requires r >= 0 and 0 <= x <= 1.
double slavi_step(double r, double x);

/// Transform of the unit ramp:
///   N(r) = integral_0^1 lambda e^(-lambda r) dlambda = (1 - e^(-r)(r + 1)) / r^2,
/// with N(0) = 1/2. Requires r >= 0.
double slavi_ramp(double r);

/// 1/r - N(r, x) = (e^(-r) - expm1(-x r)) / r. Stays resolvable where the
/// rounded N(r, x) already equals the rounded 1/r (x = 0, r > ~37).
double slavi_step_gap(double r, double x);

inline constexpr double kDefaultTolerance = 1e-10;

/// integral_0^1 f(lambda) e^(-lambda r) dlambda by adaptive quadrature, cut at
/// the function's breakpoints. Absolute error target `tol`.
double slavi_numeric(const BiasFunction& f, double r, double tol = kDefaultTolerance);

/// Same transform for an arbitrary integrand with caller-supplied breakpoints.
quad::Result slavi_numeric(const std::function<double(double)>& f, double r, double tol,
                           const std::vector<double>& breakpoints = {});

struct RankEntry {
  int rank = 0;
  double frequency = 0.0;
};

class RankSeries {
 public:
  RankSeries() = default;
  /// Ranks must be strictly increasing positive integers, frequencies positive.
  explicit RankSeries(std::vector<RankEntry> entries);
  const std::vector<RankEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<RankEntry> entries_;
};

/// N(r) of `f` for r = 1 .. r_max. Closed forms for step and ramp.
RankSeries rank_series(const BiasFunction& f, int r_max);

struct ZipfFit {
  double alpha = 0.0;          // negated slope of ln f against ln r
  double log_intercept = 0.0;  // natural-log intercept
  double r_squared = 0.0;
};

/// Ordinary least squares of ln f on ln r. Needs at least two entries.
ZipfFit zipf_fit(const RankSeries& s);

struct StepBoundPoint {
  double r = 0.0;
  double x = 0.0;
  double value = 0.0;   // N(r, x)
  double bound = 0.0;   // 1 / r
  double margin = 0.0;  // bound - value, evaluated without cancellation
  bool ok = false;      // margin > 0
};

struct RampBoundPoint {
  double r = 0.0;
  double value = 0.0;   // ramp N(r)
  double scaled = 0.0;  // N(r) r^2
  bool ok = false;      // 1/r^2 scaled ramp <= 1, and for r >= 1 ramp <= N(r, 0) <= 1/r
};

struct BoundReport {
  std::vector<StepBoundPoint> step;
  std::vector<RampBoundPoint> ramp;
  double worst_step_margin = 0.0;
  /// At the largest grid r: ramp(r) r^2 and N(r, 0) r.
  double ramp_scaled_at_max_r = 0.0;
  double step_scaled_at_max_r = 0.0;
  /// ramp(r) r^2 is nondecreasing along the sorted grid.
  bool ramp_scaled_monotone = true;
  bool all_ok = true;
};

/// Checks N(r, x) < 1/r on the grid and the 1/r^2 <= N <= 1/r ordering of
/// the boundary functions. r values must be positive and x values in [0, 1).
BoundReport check_bounds(const std::vector<double>& r_grid, const std::vector<double>& x_grid);

}  // namespace lexlab::slavi
