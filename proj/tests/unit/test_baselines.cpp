#include <doctest.h>

#include "fixsat/baselines.hpp"
#include "fixsat/generator.hpp"
#include "fixsat/rng.hpp"
#include "support/fixtures.hpp"

using namespace fixsat;
using fixsat::test::make_formula;

namespace {

// (x1 v x2)(-x2 v x1)(-x1 v x2)(-x1 v -x2): every one of the four assignments
// violates some clause.
Formula unsat_2sat() { return make_formula(2, {{1, 2}, {-2, 1}, {-1, 2}, {-1, -2}}); }

bool brute_force_satisfiable(const Formula& f) {
  const std::uint32_t n = f.num_vars();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Assignment a(n);
    for (Var v = 1; v <= n; ++v) a.set(v, ((mask >> (v - 1)) & 1) != 0);
    if (evaluate(f, a)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("the unsatisfiable fixture has no model") { CHECK_FALSE(brute_force_satisfiable(unsat_2sat())); }

TEST_CASE("unit clause") {
  CHECK(unit_clause_solve(make_formula(3, {{1, 2, 3}}), 1).solved());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = unit_clause_solve(unsat_2sat(), seed);
    CHECK_FALSE(r.solved());
    CHECK(r.failure == "contradiction");
  }
  // A false first choice leaves a unit that is handled before any free step.
  const auto forced = make_formula(2, {{1, 2}});
  for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK(unit_clause_solve(forced, seed).solved());
}

TEST_CASE("shortest clause") {
  CHECK(shortest_clause_solve(make_formula(3, {{1, 2, 3}}), 4).solved());
  for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK_FALSE(shortest_clause_solve(unsat_2sat(), seed).solved());
}

TEST_CASE("walksat") {
  const auto r = walksat_solve(make_formula(3, {{1, 2, 3}, {1, -2, 3}}), 0, 100);
  CHECK(r.solved());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto one = walksat_solve(make_formula(1, {{1, 1, 1}}), seed, 10);
    REQUIRE(one.solved());
    CHECK(one.steps <= 1);
    const auto fail = walksat_solve(unsat_2sat(), seed, 37);
    CHECK_FALSE(fail.solved());
    CHECK(fail.steps == 37);
    CHECK(fail.failure == "flip budget exhausted");
  }
  CHECK_THROWS_AS(walksat_solve(unsat_2sat(), 0, 0), std::invalid_argument);
  CHECK(default_max_flips(make_formula(4, {{1, 2, 3}})) == 600);
}

TEST_CASE("pure literal reduction") {
  SUBCASE("single clause") {
    const auto red = pure_literal_reduce(make_formula(3, {{1, 2, 3}}));
    CHECK(red.partial.assigned(1));
    CHECK(red.partial.value(1));
    CHECK(red.partial.assigned_count() == 1);
    CHECK(red.residual.empty());
  }
  SUBCASE("no pure literal") {
    const auto red = pure_literal_reduce(make_formula(2, {{1, -2}, {2, -1}}));
    CHECK(red.partial.assigned_count() == 0);
    CHECK(red.residual == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("empty formula") {
    const auto red = pure_literal_reduce(Formula(3, 3, {}));
    CHECK(red.partial.assigned_count() == 0);
    CHECK(red.residual.empty());
  }
  SUBCASE("cascade") {
    // x3 is pure; removing clause 0 makes -x1 pure, which removes clause 1.
    const auto red = pure_literal_reduce(make_formula(3, {{1, 3}, {-1, 2}, {-2, -1}}));
    CHECK(red.residual.empty());
    CHECK(pure_literal_solve(make_formula(3, {{1, 3}, {-1, 2}, {-2, -1}})).solved());
  }
  CHECK_FALSE(pure_literal_solve(unsat_2sat()).solved());
}

TEST_CASE("baselines are deterministic and sound on random formulas") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto k = static_cast<std::uint32_t>(2 + rng.below(4));
    const auto n = static_cast<std::uint32_t>(4 + rng.below(12));
    const auto m = rng.below(std::uint64_t{n} * (1u << k) / k * 2);
    const auto f = sample_formula({n, k, m, rng.next()});
    const bool satisfiable = brute_force_satisfiable(f);
    const BaselineAlgorithm algs[] = {BaselineAlgorithm::unit_clause, BaselineAlgorithm::shortest_clause,
                                      BaselineAlgorithm::walksat, BaselineAlgorithm::pure_literal};
    for (auto alg : algs) {
      const BaselineConfig cfg{alg, rng.next(), 0};
      const auto a = run_baseline(f, cfg);
      const auto b = run_baseline(f, cfg);
      CHECK(a.solved() == b.solved());
      CHECK(a.steps == b.steps);
      if (a.solved()) {
        CHECK(evaluate(f, *a.assignment));
        CHECK(*a.assignment == *b.assignment);
        CHECK(satisfiable);
      }
    }
  }
}

TEST_CASE("unit clause beats random guessing at moderate density") {
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    solved += unit_clause_solve(sample_formula(GeneratorConfig::from_density(2000, 3, 1.0, seed)), seed).solved();
  }
  CHECK(solved >= 8);
}
