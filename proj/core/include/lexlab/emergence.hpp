#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lexlab/infotheory.hpp"
#include "lexlab/rng.hpp"

namespace lexlab::emergence {

/// Largest n*m accepted by exhaustive enumeration (2^(n*m) candidate matrices).
inline constexpr int kEnumerationGuard = 20;

/// Exact optimum of the energy over all valid n x m matrices, with statistics
/// averaged over the full set of maximizers.
struct OptimumStats {
  double omega_max = 0.0;
  std::size_t n_maximizers = 0;
  double mean_lexicon = 0.0;
  double mean_mutual_info = 0.0;
  std::vector<std::uint64_t> maximizers;  // LexicalMatrix::code() of every maximizer
};

/// Two energies closer than this are treated as the same optimum.
inline constexpr double kTieTolerance = 1e-12;

OptimumStats enumerate_optimal(int n, int m, info::Bias b);

struct GAParams {
  int population_size = 32;
  /// Per-cell flip probability; unset means min(2 / (n*m), 0.5).
  std::optional<double> mutation_rate;
  int generations = 2000;
  int elitism = 1;
  std::uint64_t seed = 0;

  double rate_for(int n, int m) const;
  void validate(int n, int m) const;
};

/// Generational, mutation-only search maximizing the energy. Parents are
/// chosen by binary tournament; the top `elitism` matrices survive unchanged.
info::LexicalMatrix ga_optimize(int n, int m, info::Bias b, const GAParams& p);

/// Flips each cell independently with probability `rate`, then re-links any
/// emptied column at one uniformly chosen signal. Always returns a valid matrix.
info::LexicalMatrix mutate(const info::LexicalMatrix& a, double rate, RngStream& rng);

enum class Method { exhaustive, ga };

struct CurvePoint {
  double lambda = 0.0;
  double omega_max = 0.0;
  double mean_lexicon = 0.0;
  double mean_mutual_info = 0.0;
};

struct EmergenceCurve {
  std::vector<CurvePoint> points;
  /// Midpoint of the grid interval with the largest jump in mean lexicon size.
  /// For a single-point grid this is that point, with has_transition false.
  double transition_lambda = 0.0;
  bool has_transition = false;
};

EmergenceCurve sweep_lambda(int n, int m, const std::vector<double>& grid, Method method,
                            const GAParams& ga = {});

/// k / steps for k = 1 .. steps-1, i.e. the open unit interval at spacing 1/steps.
std::vector<double> uniform_grid(int steps);

}  // namespace lexlab::emergence
