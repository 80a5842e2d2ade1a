#include "lexlab/slavi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lexlab/error.hpp"

namespace lexlab::slavi {
namespace {

void require_r(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("rank r must be finite and non-negative");
}

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
}

// Below this r the ramp closed form loses digits to cancellation.
constexpr double kRampSeriesCutoff = 0.5;

// sum_k (-r)^k / (k! (k + 2)); terms fall below 1e-18 well before k = 25.
double ramp_series(double r) {
  double term = 1.0;  // (-r)^k / k!
  double sum = 0.5;
  for (int k = 1; k < 25; ++k) {
    term *= -r / k;
    sum += term / (k + 2);
  }
  return sum;
}

}  // namespace

BiasFunction BiasFunction::step(double x) {
  require_unit(x, "step transition x");
  return BiasFunction(Kind::step, x, {});
}

BiasFunction BiasFunction::ramp() { return BiasFunction(Kind::ramp, 0.0, {}); }

BiasFunction BiasFunction::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.empty()) throw DomainError("tabulated bias function needs at least one knot");
  for (std::size_t k = 0; k < table.size(); ++k) {
    require_unit(table[k].first, "tabulated lambda");
    if (!std::isfinite(table[k].second)) throw DomainError("tabulated value must be finite");
    if (k > 0 && !(table[k].first > table[k - 1].first))
      throw DomainError("tabulated lambdas must be strictly increasing");
  }
  return BiasFunction(Kind::tabulated, 0.0, std::move(table));
}

double BiasFunction::operator()(double lambda) const {
  switch (kind_) {
    case Kind::step:
      return lambda < x_ ? 0.0 : 1.0;
    case Kind::ramp:
      return lambda;
    case Kind::tabulated: {
      if (lambda <= table_.front().first) return table_.front().second;
      if (lambda >= table_.back().first) return table_.back().second;
      const auto hi = std::upper_bound(table_.begin(), table_.end(), lambda,
                                       [](double v, const auto& knot) { return v < knot.first; });
      const auto lo = hi - 1;
      const double t = (lambda - lo->first) / (hi->first - lo->first);
      return lo->second + t * (hi->second - lo->second);
    }
  }
  return 0.0;
}

std::vector<double> BiasFunction::breakpoints() const {
  switch (kind_) {
    case Kind::step:
      return {x_};
    case Kind::ramp:
      return {};
    case Kind::tabulated: {
      std::vector<double> b;
      for (const auto& [l, v] : table_) b.push_back(l);
      return b;
    }
  }
  return {};
}

double slavi_step(double r, double x) {
  require_r(r);
  require_unit(x, "transition x");
  const double width = 1.0 - x;
  if (r == 0.0) return width;
  // e^(-x r) - e^(-r) = -e^(-x r) expm1(-(1 - x) r), free of cancellation at small r.
  return -std::exp(-x * r) * std::expm1(-width * r) / r;
}

double slavi_step_gap(double r, double x) {
  require_r(r);
  require_unit(x, "transition x");
  if (r == 0.0) return INFINITY;
  return (std::exp(-r) - std::expm1(-x * r)) / r;
}

double slavi_ramp(double r) {
  require_r(r);
  if (r < kRampSeriesCutoff) return ramp_series(r);
  return (1.0 - std::exp(-r) * (r + 1.0)) / (r * r);
}

quad::Result slavi_numeric(const std::function<double(double)>& f, double r, double tol,
                           const std::vector<double>& breakpoints) {
  require_r(r);
  quad::Options opt;
  opt.abs_tol = tol;
  return quad::integrate_piecewise([&](double l) { return f(l) * std::exp(-l * r); }, 0.0, 1.0, breakpoints, opt);
}

double slavi_numeric(const BiasFunction& f, double r, double tol) {
  return slavi_numeric([&f](double l) { return f(l); }, r, tol, f.breakpoints()).value;
}

RankSeries::RankSeries(std::vector<RankEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].rank < 1) throw DomainError("ranks must be positive integers");
    if (k > 0 && entries_[k].rank <= entries_[k - 1].rank) throw DomainError("ranks must be strictly increasing");
    if (!(entries_[k].frequency > 0.0) || !std::isfinite(entries_[k].frequency))
      throw FitError("frequency at rank " + std::to_string(entries_[k].rank) + " is not positive");
  }
}

RankSeries rank_series(const BiasFunction& f, int r_max) {
  if (r_max < 1) throw DomainError("rank_series: r_max must be at least 1");
  std::vector<RankEntry> out;
  for (int r = 1; r <= r_max; ++r) {
    double v = 0.0;
    switch (f.kind()) {
      case BiasFunction::Kind::step:
        v = slavi_step(r, f.transition());
        break;
      case BiasFunction::Kind::ramp:
        v = slavi_ramp(r);
        break;
      case BiasFunction::Kind::tabulated:
        v = slavi_numeric(f, r);
        break;
    }
    out.push_back({r, v});
  }
  return RankSeries(std::move(out));
}

ZipfFit zipf_fit(const RankSeries& s) {
  const auto& e = s.entries();
  if (e.size() < 2) throw FitError("Zipf fit needs at least two ranks, got " + std::to_string(e.size()));
  const double n = static_cast<double>(e.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [r, f] : e) {
    mx += std::log(static_cast<double>(r));
    my += std::log(f);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [r, f] : e) {
    const double dx = std::log(static_cast<double>(r)) - mx;
    const double dy = std::log(f) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  ZipfFit fit;
  fit.alpha = -slope;
  fit.log_intercept = my - slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

BoundReport check_bounds(const std::vector<double>& r_grid, const std::vector<double>& x_grid) {
  if (r_grid.empty() || x_grid.empty()) throw DomainError("check_bounds: grids must be nonempty");
  for (double r : r_grid)
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("check_bounds: r values must be positive");
  for (double x : x_grid)
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("check_bounds: x values must lie in [0, 1)");

  BoundReport rep;
  rep.worst_step_margin = INFINITY;
  for (double r : r_grid) {
    for (double x : x_grid) {
      StepBoundPoint p{r, x, slavi_step(r, x), 1.0 / r};
      p.margin = slavi_step_gap(r, x);
      p.ok = p.margin > 0.0;
      rep.worst_step_margin = std::min(rep.worst_step_margin, p.margin);
      rep.all_ok = rep.all_ok && p.ok;
      rep.step.push_back(p);
    }
  }

  std::vector<double> sorted = r_grid;
  std::sort(sorted.begin(), sorted.end());
  double prev_scaled = -INFINITY;
  for (double r : sorted) {
    RampBoundPoint p{r, slavi_ramp(r)};
    // 1 - e^(-r)(r + 1) directly; value * r^2 can round above 1 for large r.
    p.scaled = r < kRampSeriesCutoff ? p.value * r * r : -std::expm1(-r) - r * std::exp(-r);
    p.ok = p.scaled <= 1.0;
    if (r >= 1.0) {
      const double step0 = slavi_step(r, 0.0);
      p.ok = p.ok && p.value <= step0 && step0 <= 1.0 / r;
    }
    rep.ramp_scaled_monotone = rep.ramp_scaled_monotone && p.scaled >= prev_scaled;
    prev_scaled = p.scaled;
    rep.all_ok = rep.all_ok && p.ok;
    rep.ramp.push_back(p);
  }
  const double r_max = sorted.back();
  rep.ramp_scaled_at_max_r = rep.ramp.back().scaled;
  rep.step_scaled_at_max_r = slavi_step(r_max, 0.0) * r_max;
  rep.all_ok = rep.all_ok && rep.ramp_scaled_monotone;
  return rep;
}

}  // namespace lexlab::slavi
