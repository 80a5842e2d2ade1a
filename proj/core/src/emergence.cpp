#include "lexlab/emergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lexlab/error.hpp"

namespace lexlab::emergence {
namespace {

void check_guard(int n, int m) {
  if (n <= 0 || m <= 0) throw DomainError("matrix dimensions must be positive");
  if (n * m > kEnumerationGuard)
    throw SizeGuardError("exhaustive enumeration needs n*m <= " + std::to_string(kEnumerationGuard) +
                         ", got " + std::to_string(n * m));
}

struct Candidate {
  std::uint64_t code;
  info::InfoMeasures m;
};

std::vector<Candidate> valid_candidates(int n, int m) {
  check_guard(n, m);
  std::vector<Candidate> out;
  const std::uint64_t count = std::uint64_t{1} << (n * m);
  for (std::uint64_t code = 0; code < count; ++code) {
    const auto a = info::LexicalMatrix::from_code(n, m, code);
    if (a.valid()) out.push_back({code, info::measures(a)});
  }
  return out;
}

OptimumStats optimum_over(const std::vector<Candidate>& cands, info::Bias b) {
  OptimumStats s;
  s.omega_max = -INFINITY;
  for (const auto& c : cands) s.omega_max = std::max(s.omega_max, info::energy(c.m, b));
  double lex = 0.0;
  double mi = 0.0;
  for (const auto& c : cands) {
    if (info::energy(c.m, b) >= s.omega_max - kTieTolerance) {
      s.maximizers.push_back(c.code);
      lex += c.m.lexicon_size;
      mi += c.m.mutual_info;
    }
  }
  s.n_maximizers = s.maximizers.size();
  s.mean_lexicon = lex / static_cast<double>(s.n_maximizers);
  s.mean_mutual_info = mi / static_cast<double>(s.n_maximizers);
  return s;
}

info::LexicalMatrix repair(info::LexicalMatrix a, RngStream& rng) {
  for (int j = 0; j < a.n_objects(); ++j)
    if (a.column_links(j) == 0) a.set(static_cast<int>(rng.below(a.n_signals())), j, true);
  return a;
}

}  // namespace

OptimumStats enumerate_optimal(int n, int m, info::Bias b) {
  return optimum_over(valid_candidates(n, m), b);
}

double GAParams::rate_for(int n, int m) const {
  if (mutation_rate) return *mutation_rate;
  return std::min(2.0 / (static_cast<double>(n) * m), 0.5);
}

void GAParams::validate(int n, int m) const {
  if (n <= 0 || m <= 0) throw DomainError("matrix dimensions must be positive");
  const double rate = rate_for(n, m);
  if (!(rate > 0.0 && rate < 1.0)) throw DomainError("mutation rate must lie in (0, 1)");
  if (elitism < 1 || population_size < elitism)
    throw DomainError("GA needs population_size >= elitism >= 1");
  if (generations < 0) throw DomainError("generations must be non-negative");
}

info::LexicalMatrix mutate(const info::LexicalMatrix& a, double rate, RngStream& rng) {
  info::LexicalMatrix out = a;
  for (int i = 0; i < out.n_signals(); ++i)
    for (int j = 0; j < out.n_objects(); ++j)
      if (rng.bernoulli(rate)) out.flip(i, j);
  return repair(std::move(out), rng);
}

info::LexicalMatrix ga_optimize(int n, int m, info::Bias b, const GAParams& p) {
  p.validate(n, m);
  const double rate = p.rate_for(n, m);
  RngStream rng(p.seed);

  std::vector<info::LexicalMatrix> pop;
  pop.reserve(p.population_size);
  for (int k = 0; k < p.population_size; ++k) {
    info::LexicalMatrix a(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) a.set(i, j, rng.bernoulli(0.5));
    pop.push_back(repair(std::move(a), rng));
  }

  std::vector<double> fitness(pop.size());
  std::vector<std::size_t> order(pop.size());
  auto rank_population = [&] {
    for (std::size_t k = 0; k < pop.size(); ++k) fitness[k] = info::energy(pop[k], b);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return fitness[x] > fitness[y]; });
  };

  rank_population();
  for (int g = 0; g < p.generations; ++g) {
    std::vector<info::LexicalMatrix> next;
    next.reserve(pop.size());
    for (int e = 0; e < p.elitism; ++e) next.push_back(pop[order[e]]);
    while (next.size() < pop.size()) {
      const auto x = rng.below(pop.size());
      const auto y = rng.below(pop.size());
      const auto& parent = fitness[y] > fitness[x] ? pop[y] : pop[x];
      next.push_back(mutate(parent, rate, rng));
    }
    pop = std::move(next);
    rank_population();
  }
  return pop[order.front()];
}

std::vector<double> uniform_grid(int steps) {
  if (steps < 2) throw DomainError("uniform_grid: need at least 2 steps");
  std::vector<double> g;
  for (int k = 1; k < steps; ++k) g.push_back(static_cast<double>(k) / steps);
  return g;
}

EmergenceCurve sweep_lambda(int n, int m, const std::vector<double>& grid, Method method,
                            const GAParams& ga) {
  if (grid.empty()) throw DomainError("sweep_lambda: empty lambda grid");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw DomainError("sweep_lambda: lambda grid must be strictly increasing");
  for (double l : grid) info::Bias{l};

  EmergenceCurve curve;
  if (method == Method::exhaustive) {
    const auto cands = valid_candidates(n, m);
    for (double l : grid) {
      const auto s = optimum_over(cands, info::Bias(l));
      curve.points.push_back({l, s.omega_max, s.mean_lexicon, s.mean_mutual_info});
    }
  } else {
    for (double l : grid) {
      const info::Bias b(l);
      const auto best = ga_optimize(n, m, b, ga);
      const auto meas = info::measures(best);
      curve.points.push_back({l, info::energy(meas, b), static_cast<double>(meas.lexicon_size), meas.mutual_info});
    }
  }

  curve.transition_lambda = grid.front();
  double largest = 0.0;
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const double jump = std::abs(curve.points[k].mean_lexicon - curve.points[k - 1].mean_lexicon);
    if (jump > largest) {
      largest = jump;
      curve.transition_lambda = 0.5 * (grid[k - 1] + grid[k]);
      curve.has_transition = true;
    }
  }
  return curve;
}

}  // namespace lexlab::emergence
