#include "lexlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lexlab/error.hpp"

namespace lexlab::quad {
namespace {

struct Simpson {
  const std::function<double(double)>& f;
  const Options& opt;
  std::size_t evaluations = 0;
  double error = 0.0;
  bool exhausted = false;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  double rule(double a, double fa, double fm, double fb, double b) const {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double recurse(double a, double fa, double m, double fm, double b, double fb, double whole, double tol,
                 int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = rule(a, fa, flm, fm, m);
    const double right = rule(m, fm, frm, fb, b);
    const double delta = left + right - whole;
    const bool settled = depth >= opt.min_depth && std::abs(delta) <= 15.0 * tol;
    if (settled) {
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= opt.max_depth || evaluations >= opt.max_evaluations) {
      exhausted = true;
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

Result adaptive_simpson(const std::function<double(double)>& f, double a, double b, const Options& opt) {
  if (!(opt.abs_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (a == b) return {};
  Simpson s{f, opt};
  const double fa = s.eval(a);
  const double fb = s.eval(b);
  const double m = 0.5 * (a + b);
  const double fm = s.eval(m);
  const double whole = s.rule(a, fa, fm, fb, b);
  const double value = s.recurse(a, fa, m, fm, b, fb, whole, opt.abs_tol, 0);
  if (s.exhausted || !std::isfinite(value))
    throw QuadratureError("adaptive Simpson did not converge", s.error);
  return {value, s.error, s.evaluations};
}

Result integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints, const Options& opt) {
  if (!(b > a)) throw DomainError("integrate_piecewise: need a < b");
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Result total;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const double inner_lo = std::nextafter(lo, hi);
    const double inner_hi = std::nextafter(hi, lo);
    if (inner_lo > inner_hi) continue;  // piece narrower than two ulps
    auto piece = [&](double x) { return f(std::clamp(x, inner_lo, inner_hi)); };
    Options sub = opt;
    sub.abs_tol = opt.abs_tol * (hi - lo) / (b - a);
    const Result r = adaptive_simpson(piece, lo, hi, sub);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
  }
  return total;
}

}  // namespace lexlab::quad
