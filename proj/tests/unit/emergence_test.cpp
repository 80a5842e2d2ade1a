#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "lexlab/emergence.hpp"
#include "lexlab/error.hpp"

using namespace lexlab;
using emergence::GAParams;
using info::Bias;
using info::LexicalMatrix;

TEST_CASE("exhaustive optimum for two signals, two objects, listener-leaning bias") {
  // Frozen from an independent brute force over the 16 matrices.
  const auto s = emergence::enumerate_optimal(2, 2, Bias(0.8));
  CHECK(s.omega_max == doctest::Approx(0.6).epsilon(1e-12));
  REQUIRE(s.n_maximizers == 2);
  const std::set<std::uint64_t> got(s.maximizers.begin(), s.maximizers.end());
  const std::set<std::uint64_t> want{LexicalMatrix{{1, 0}, {0, 1}}.code(), LexicalMatrix{{0, 1}, {1, 0}}.code()};
  CHECK(got == want);
  CHECK(s.mean_lexicon == 2.0);
}

TEST_CASE("exhaustive optimum for speaker-leaning bias is a single-signal system") {
  const auto s = emergence::enumerate_optimal(2, 2, Bias(0.3));
  CHECK(s.omega_max == 0.0);
  const std::set<std::uint64_t> got(s.maximizers.begin(), s.maximizers.end());
  CHECK(got.count(LexicalMatrix{{1, 1}, {0, 0}}.code()) == 1);
  CHECK(got.count(LexicalMatrix{{0, 0}, {1, 1}}.code()) == 1);
  CHECK(s.mean_lexicon == 1.0);
}

TEST_CASE("maximizers at equal bias are non-synonymous") {
  const auto s = emergence::enumerate_optimal(3, 3, Bias(0.5));
  CHECK(std::abs(s.omega_max) < 1e-12);
  CHECK(s.n_maximizers == 27);
  for (auto code : s.maximizers) {
    const auto a = LexicalMatrix::from_code(3, 3, code);
    for (int j = 0; j < 3; ++j) CHECK(a.column_links(j) == 1);
  }
}

TEST_CASE("enumeration guard") {
  CHECK_THROWS_AS(emergence::enumerate_optimal(5, 5, Bias(0.5)), SizeGuardError);
  CHECK_NOTHROW(emergence::enumerate_optimal(4, 5, Bias(0.5)));
}

TEST_CASE("optimum is zero for every speaker-leaning bias within the guard") {
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; n * m <= 12; ++m)
      for (double l : {0.1, 0.3, 0.5}) CHECK(std::abs(emergence::enumerate_optimal(n, m, Bias(l)).omega_max) < 1e-12);
}

TEST_CASE("square systems above equal bias are optimized by permutations") {
  for (int n = 2; n <= 4; ++n)
    for (double l : {0.6, 0.9}) {
      const auto s = emergence::enumerate_optimal(n, n, Bias(l));
      CHECK(s.omega_max == doctest::Approx((2 * l - 1) * std::log2(static_cast<double>(n))).epsilon(1e-12));
      CHECK(info::energy(LexicalMatrix::identity(n), Bias(l)) ==
            doctest::Approx(s.omega_max).epsilon(1e-12));
    }
}

TEST_CASE("mutation with zero rate leaves the matrix alone") {
  RngStream rng(5);
  const LexicalMatrix a{{1, 0, 1}, {0, 1, 0}};
  CHECK(emergence::mutate(a, 0.0, rng) == a);
}

TEST_CASE("mutation with unit rate complements then repairs") {
  RngStream rng(6);
  for (int k = 0; k < 50; ++k) {
    const auto b = emergence::mutate(LexicalMatrix::identity(2), 1.0, rng);
    CHECK(b.valid());
    CHECK(b.link(0, 1));
    CHECK(b.link(1, 0));
  }
  // A single-row matrix loses every link and must be fully re-linked.
  const auto c = emergence::mutate(LexicalMatrix{{1, 1, 1}}, 1.0, rng);
  CHECK(c == LexicalMatrix{{1, 1, 1}});
}

TEST_CASE("mutation is reproducible from the stream state") {
  const LexicalMatrix a = LexicalMatrix::identity(4);
  RngStream r1(99);
  RngStream r2(99);
  for (int k = 0; k < 20; ++k) CHECK(emergence::mutate(a, 0.3, r1) == emergence::mutate(a, 0.3, r2));
}

TEST_CASE("GA reaches the listener-leaning optimum on a 3x3 system") {
  GAParams p;
  p.seed = 11;
  const auto best = emergence::ga_optimize(3, 3, Bias(0.9), p);
  CHECK(best.valid());
  CHECK(std::abs(info::energy(best, Bias(0.9)) - 0.8 * std::log2(3.0)) < 1e-9);
}

TEST_CASE("GA is deterministic and never beats the exhaustive optimum") {
  GAParams p;
  p.seed = 3;
  p.generations = 50;
  for (double l : {0.2, 0.5, 0.7}) {
    const auto a = emergence::ga_optimize(3, 2, Bias(l), p);
    const auto b = emergence::ga_optimize(3, 2, Bias(l), p);
    CHECK(a == b);
    CHECK(a.valid());
    CHECK(info::energy(a, Bias(l)) <= emergence::enumerate_optimal(3, 2, Bias(l)).omega_max + 1e-12);
  }
}

TEST_CASE("GA on a 1x1 system returns the only valid matrix") {
  GAParams p;
  p.generations = 5;
  CHECK(emergence::ga_optimize(1, 1, Bias(0.4), p) == LexicalMatrix{{1}});
}

TEST_CASE("GA parameter validation") {
  GAParams p;
  p.elitism = 0;
  CHECK_THROWS_AS(p.validate(2, 2), DomainError);
  p.elitism = 40;
  CHECK_THROWS_AS(p.validate(2, 2), DomainError);
  p = {};
  p.mutation_rate = 1.0;
  CHECK_THROWS_AS(p.validate(2, 2), DomainError);
  p = {};
  CHECK(p.rate_for(3, 3) == doctest::Approx(2.0 / 9));
  CHECK(p.rate_for(1, 1) == 0.5);
}

TEST_CASE("lambda sweep reproduces the lexicon jump") {
  const auto curve = emergence::sweep_lambda(3, 3, emergence::uniform_grid(20), emergence::Method::exhaustive);
  REQUIRE(curve.points.size() == 19);
  for (const auto& p : curve.points) {
    if (p.lambda < 0.5) {
      CHECK(p.mean_lexicon == 1.0);
      CHECK(p.mean_mutual_info == 0.0);
    } else if (p.lambda > 0.5) {
      CHECK(p.mean_lexicon == 3.0);
      CHECK(std::abs(p.mean_mutual_info - std::log2(3.0)) < 1e-9);
    } else {
      CHECK(p.mean_lexicon == doctest::Approx(57.0 / 27.0));
    }
  }
  for (std::size_t k = 1; k < curve.points.size(); ++k)
    CHECK(curve.points[k].mean_lexicon >= curve.points[k - 1].mean_lexicon);
  CHECK(curve.has_transition);
  CHECK(curve.transition_lambda == doctest::Approx(0.475));
}

TEST_CASE("single-point grid reports no transition") {
  const auto curve = emergence::sweep_lambda(2, 2, {0.5}, emergence::Method::exhaustive);
  CHECK_FALSE(curve.has_transition);
  CHECK(curve.transition_lambda == 0.5);
}

TEST_CASE("sweep input validation") {
  CHECK_THROWS_AS(emergence::sweep_lambda(2, 2, {}, emergence::Method::exhaustive), DomainError);
  CHECK_THROWS_AS(emergence::sweep_lambda(2, 2, {0.5, 0.4}, emergence::Method::exhaustive), DomainError);
  CHECK_THROWS_AS(emergence::sweep_lambda(5, 5, {0.5}, emergence::Method::exhaustive), SizeGuardError);
  GAParams p;
  p.generations = 10;
  CHECK_NOTHROW(emergence::sweep_lambda(5, 5, {0.5}, emergence::Method::ga, p));
}
