#include <doctest.h>

#include <algorithm>
#include <vector>

#include "fixsat/fix_solver.hpp"
#include "fixsat/generator.hpp"
#include "fixsat/instrumentation.hpp"
#include "fixsat/predicates.hpp"
#include "fixsat/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fixsat;
using fixsat::test::all_true;
using fixsat::test::make_formula;
using fixsat::test::order_of;

namespace {

void check_phase1_counters(const Formula& f, const Phase1Process& p) {
  const auto mismatch = fixsat::test::phase1_mismatch(f, p);
  REQUIRE_MESSAGE(!mismatch, mismatch.value_or(""));
}

void check_phase2_counters(const Formula& f, const Phase2Process& p) {
  const auto mismatch = fixsat::test::phase2_mismatch(f, p);
  REQUIRE_MESSAGE(!mismatch, mismatch.value_or(""));
}

}  // namespace

TEST_CASE("solver windows") {
  const auto p3 = SolverParams::for_width(3);
  CHECK(p3.k1 == 2);
  CHECK(p3.scan_end == 1);
  CHECK(p3.fallback_pos == 1);
  CHECK(p3.safe_repair_begin == p3.safe_repair_end);
  CHECK(p3.forced_repair_begin == 0);
  CHECK(p3.forced_repair_end == 3);

  const auto p6 = SolverParams::for_width(6);
  CHECK(p6.k1 == 3);
  CHECK(p6.safe_repair_begin == p6.safe_repair_end);
  CHECK(p6.forced_repair_begin == 1);

  const auto p16 = SolverParams::for_width(16);
  CHECK(p16.k1 == 8);
  CHECK(p16.scan_end == 7);
  CHECK(p16.safe_repair_begin == 8);
  CHECK(p16.safe_repair_end == 11);
  CHECK(p16.forced_repair_begin == 11);
  CHECK(p16.forced_repair_end == 16);

  CHECK_THROWS_AS(SolverParams::for_width(1), FormulaError);
}

// -- predicates ----------------------------------------------------------------

TEST_CASE("is_z_unique") {
  const auto f = make_formula(3, {{1, -2, -3}});
  CHECK(is_z_unique(f, VarSet(3), 0));
  CHECK_FALSE(is_z_unique(f, VarSet(3, {1}), 0));
  CHECK_FALSE(is_z_unique(f, VarSet(3, {2}), 0));
  CHECK_FALSE(is_z_unique(make_formula(3, {{1, 1, -2}}), VarSet(3), 0));
}

TEST_CASE("is_z_safe") {
  const auto f = make_formula(3, {{1, -2, -3}});
  CHECK_FALSE(is_z_safe(1, f, VarSet(3)));
  CHECK(is_z_safe(2, f, VarSet(3)));
  CHECK_THROWS_AS(is_z_safe(1, f, VarSet(3, {1})), std::invalid_argument);
  const auto none_unique = make_formula(4, {{1, 2, 3}, {-1, -2, -3}});
  for (Var x = 1; x <= 4; ++x) CHECK(is_z_safe(x, none_unique, VarSet(4)));
}

TEST_CASE("is_endangered") {
  const auto f = make_formula(3, {{-1, -2, -3}});
  CHECK(is_endangered(f, VarSet(3, {1}), VarSet(3, {1}), 0));
  CHECK_FALSE(is_endangered(f, VarSet(3, {1}), VarSet(3), 0));
  const auto g = make_formula(4, {{-1, 4, -2}});
  CHECK_FALSE(is_endangered(g, VarSet(4, {1, 2}), VarSet(4, {1, 2}), 0));
}

TEST_CASE("is_zz_safe") {
  const auto f = make_formula(3, {{1, 2, -3}});
  CHECK_FALSE(is_zz_safe(1, f, VarSet(3, {2}), VarSet(3)));
  CHECK_FALSE(is_zz_safe(3, f, VarSet(3), VarSet(3, {3})));
  CHECK(is_zz_safe(3, make_formula(3, {{1, 2, 1}}), VarSet(3), VarSet(3)));
  CHECK(is_zz_safe(3, f, VarSet(3, {2}), VarSet(3)));
}

// -- Phase 1 -----------------------------------------------------------------------

TEST_CASE("phase 1 picks the first safe variable") {
  const auto f = make_formula(3, {{-1, -2, -3}});
  const auto p = run_phase1(f);
  CHECK(order_of(p.z()) == std::vector<Var>{1});
  CHECK(p.fallback_count() == 0);
  Assignment expected = all_true(3);
  expected.set(1, false);
  CHECK(p.sigma() == expected);
}

TEST_CASE("phase 1 without all-negative clauses") {
  const auto f = make_formula(3, {{1, -2, 3}, {-1, 2, -3}});
  const auto p = run_phase1(f);
  CHECK(p.z().empty());
  CHECK(p.sigma() == all_true(3));
}

TEST_CASE("phase 1 falls back to position k1") {
  const auto f = make_formula(5, {{2, -4, -5}, {-2, -3, -1}});
  const auto p = run_phase1(f, true);
  CHECK(order_of(p.z()) == std::vector<Var>{3});
  CHECK(p.fallback_count() == 1);
  REQUIRE(p.trace().size() == 1);
  CHECK(p.trace()[0].t == 1);
  CHECK(p.trace()[0].clause == 1);
  CHECK(p.trace()[0].var == 3);
  CHECK(p.trace()[0].fallback);
}

TEST_CASE("phase 1 skips clauses already hit by Z") {
  const auto f = make_formula(5, {{-1, -2, -3}, {-1, -4, -5}});
  const auto p = run_phase1(f);
  CHECK(order_of(p.z()) == std::vector<Var>{1});
}

TEST_CASE("phase 1 adding a variable already in Z is impossible") {
  // Clause 1 repeats x1; the first clause already put x1 in Z.
  const auto f = make_formula(2, {{-1, -2}, {-1, -1}});
  const auto p = run_phase1(f);
  CHECK(p.z().size() == 1);
}

TEST_CASE("phase 1 invariants on random formulas") {
  Rng rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t ks[] = {3, 6, 8};
    const std::uint32_t k = ks[trial % 3];
    const auto n = static_cast<std::uint32_t>(5 + rng.below(46));
    const auto m = 1 + rng.below(n * (k == 3 ? 6 : 20));
    const auto f = sample_formula({n, k, m, rng.next()});
    Phase1Process p(f, true);
    check_phase1_counters(f, p);
    while (p.step()) check_phase1_counters(f, p);
    check_phase1_counters(f, p);
    for (std::size_t t = 0; t < p.trace().size(); ++t) {
      CHECK(p.trace()[t].t == t + 1);
      CHECK(p.z().order()[t] == p.trace()[t].var);
    }
    const auto sigma = p.sigma();
    for (std::size_t i = 0; i < f.num_clauses(); ++i) {
      bool all_negative = true;
      for (Lit l : f.clause(i)) all_negative = all_negative && l.is_negative();
      if (all_negative) CHECK(clause_satisfied(f.clause(i), sigma));
    }
  }
}

// -- Phase 2 ----------------------------------------------------------------

TEST_CASE("phase 2 with nothing to repair") {
  const auto f = make_formula(3, {{1, 2, 3}});
  const auto p = run_phase2(f, VarSet(3));
  CHECK(p.z_prime().empty());
  CHECK(p.iterations() == 0);
  CHECK(p.status() == Phase2Process::Status::done);
}

TEST_CASE("phase 2 forced repair trace") {
  const auto f = make_formula(6, {{1, -2, -3, -4, -5, -6}});
  Phase2Process p(f, VarSet(6, {1}));
  CHECK(p.queue_contents() == std::vector<std::size_t>{0});
  CHECK(p.step());
  CHECK(order_of(p.z_prime()) == std::vector<Var>{2, 3, 4});
  CHECK(p.is_endangered(0));
  CHECK(p.distinct_in_z_prime(0) == 3);
  CHECK(p.queue_contents().empty());
  CHECK_FALSE(p.step());
  CHECK(p.status() == Phase2Process::Status::done);
  CHECK(p.iterations() == 1);
}

TEST_CASE("phase 2 reports a degenerate clause") {
  // Two distinct variables in the forced window cannot supply three.
  const auto f = make_formula(2, {{-1, -1, -2, -2, -1, -2}});
  Phase2Process p(f, VarSet(2));
  p.run();
  CHECK(p.status() == Phase2Process::Status::degenerate_clause);
  CHECK(p.degenerate_clause() == std::optional<std::size_t>{0});
}

TEST_CASE("phase 2 safe repair window at k = 16") {
  std::vector<int> lits(16);
  lits[0] = 1;
  for (int j = 1; j < 16; ++j) lits[static_cast<std::size_t>(j)] = -(j + 1);
  std::vector<Lit> v;
  for (int l : lits) v.push_back(Lit(l));
  const Formula f(16, 16, v);
  auto p = run_phase2(f, VarSet(16, {1}));
  // 1-based positions 9..11 lie in the safe window.
  CHECK(order_of(p.z_prime()) == std::vector<Var>{9, 10, 11});
}

TEST_CASE("phase 2 counters agree with definitions after every step") {
  Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t ks[] = {3, 6, 8};
    const std::uint32_t k = ks[trial % 3];
    const auto n = static_cast<std::uint32_t>(5 + rng.below(46));
    const auto m = 1 + rng.below(n * (k == 3 ? 6 : 20));
    const auto f = sample_formula({n, k, m, rng.next()});
    const auto p1 = run_phase1(f);
    Phase2Process p(f, p1.z());
    check_phase2_counters(f, p);
    std::size_t before = 0;
    while (p.step()) {
      check_phase2_counters(f, p);
      CHECK(p.z_prime().size() == before + 3);
      before = p.z_prime().size();
    }
    check_phase2_counters(f, p);
    if (p.status() == Phase2Process::Status::done) {
      for (std::size_t i = 0; i < f.num_clauses(); ++i) {
        CHECK((!is_endangered(f, p1.z(), p.z_prime(), i) || distinct_vars_in(f, i, p.z_prime()) >= 3));
      }
    }
  }
}

// -- Phase 3 and full solver --------------------------------------------------------

TEST_CASE("phase 3 with no endangered clauses") {
  const auto f = make_formula(3, {{-1, 2, 3}});
  const auto out = run_phase3(f, VarSet(3, {1}), VarSet(3));
  REQUIRE(out.solved());
  Assignment expected = all_true(3);
  expected.set(1, false);
  CHECK(*out.assignment == expected);
}

TEST_CASE("phase 3 matching trace") {
  const auto f = make_formula(6, {{1, -2, -3, -4, -5, -6}});
  const auto out = run_phase3(f, VarSet(6, {1}), VarSet(6, {2, 3, 4}));
  REQUIRE(out.solved());
  const auto& a = *out.assignment;
  CHECK_FALSE(a.value(1));
  CHECK(a.value(5));
  CHECK(a.value(6));
  // Exactly one of x2..x4 is matched and set false.
  CHECK((a.value(2) ? 0 : 1) + (a.value(3) ? 0 : 1) + (a.value(4) ? 0 : 1) == 1);
  CHECK(evaluate(f, a));
  CHECK(out.stats.endangered_count == 1);
  CHECK(out.stats.matching_covered);
}

TEST_CASE("phase 3 reports a Hall violation") {
  const auto f = make_formula(9, {{-9, -9, 1}, {-9, 1, 1}});
  const auto out = run_phase3(f, VarSet(9, {1, 9}), VarSet(9, {9}));
  CHECK_FALSE(out.solved());
  CHECK(out.failure == FixFailure::matching_not_found);
  REQUIRE(out.hall_violation.has_value());
  CHECK(out.hall_violation->clauses.size() == 2);
  CHECK(out.hall_violation->neighborhood == std::vector<Var>{9});
}

TEST_CASE("fix_solve fixtures") {
  SUBCASE("positive literal everywhere") {
    const auto f = make_formula(4, {{1, -2, -3}, {-1, 4, -2}});
    const auto out = fix_solve(f);
    REQUIRE(out.solved());
    CHECK(*out.assignment == all_true(4));
  }
  SUBCASE("single all-negative clause") {
    const auto f = make_formula(3, {{-1, -2, -3}});
    const auto out = fix_solve(f, {true});
    REQUIRE(out.solved());
    CHECK_FALSE(out.assignment->value(1));
    CHECK(out.stats.z_size == 1);
    CHECK(out.stats.fallback_count == 0);
    CHECK(out.trace.size() == 1);
  }
  SUBCASE("fallback fixture") {
    const auto out = fix_solve(make_formula(5, {{2, -4, -5}, {-2, -3, -1}}));
    REQUIRE(out.solved());
    CHECK(out.stats.fallback_count == 1);
  }
  SUBCASE("degenerate clause") {
    const auto out = fix_solve(make_formula(2, {{1, -2, -2, -2, -2, -2}, {-1, -1, -1, -2, -2, -2}}));
    CHECK(out.failure == FixFailure::degenerate_clause);
    CHECK(out.stats.has(Anomaly::degenerate_clause));
  }
  SUBCASE("k below two") { CHECK_THROWS_AS(fix_solve(make_formula(2, {{-1}})), FormulaError); }
}

TEST_CASE("fix_solve is sound and deterministic on random formulas") {
  Rng rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint32_t ks[] = {3, 5, 8, 10};
    const std::uint32_t k = ks[trial % 4];
    const auto n = static_cast<std::uint32_t>(20 + rng.below(300));
    const double density = static_cast<double>(1u << k) / k * (0.05 + 0.3 * static_cast<double>(rng.below(100)) / 100.0);
    const auto f = sample_formula(GeneratorConfig::from_density(n, k, density, rng.next()));
    const auto a = fix_solve(f);
    const auto b = fix_solve(f);
    CHECK(a.solved() == b.solved());
    CHECK(a.stats == b.stats);
    if (a.solved()) {
      CHECK(evaluate(f, *a.assignment));
      CHECK(*a.assignment == *b.assignment);
    }
    CHECK(a.stats.z_prime_size == 3 * a.stats.phase2_iterations);
  }
}

TEST_CASE("fix_solve succeeds well inside its regime") {
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    solved += fix_solve(sample_formula(GeneratorConfig::from_density(5000, 5, 1.5, seed))).solved() ? 1 : 0;
  }
  CHECK(solved >= 9);
}
