#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixsat/formula.hpp"

namespace fixsat {

enum class BaselineAlgorithm { unit_clause, shortest_clause, walksat, pure_literal };

struct BaselineConfig {
  BaselineAlgorithm algorithm = BaselineAlgorithm::unit_clause;
  std::uint64_t seed = 0;
  /// Walksat flip budget; 0 selects the default 50 * n * k.
  std::uint64_t max_flips = 0;
};

struct BaselineResult {
  std::optional<Assignment> assignment;
  /// Empty on success.
  std::string failure;
  /// Variable assignments (UC, SC, PL) or flips (Walksat) performed.
  std::uint64_t steps = 0;

  bool solved() const { return assignment.has_value(); }
};

/// Three-valued assignment produced by the pure literal rule.
class PartialAssignment {
public:
  explicit PartialAssignment(std::uint32_t num_vars) : values_(std::size_t{num_vars} + 1, -1) {}
  bool assigned(Var v) const { return values_[v] >= 0; }
  bool value(Var v) const { return values_[v] == 1; }
  void set(Var v, bool value) { values_[v] = value ? 1 : 0; }
  std::size_t assigned_count() const;
  /// Unassigned variables become `fill`.
  Assignment complete(bool fill = true) const;

private:
  std::vector<std::int8_t> values_;
};

/// Unit Clause: while some clause has no true literal and exactly one
/// unassigned literal, satisfy the one with the least index; otherwise set a
/// uniformly random unassigned variable to a uniformly random value. Fails
/// on a clause whose literals are all false.
BaselineResult unit_clause_solve(const Formula& formula, std::uint64_t seed);

/// Shortest Clause: pick a uniformly random clause among the unsatisfied
/// clauses with the fewest unassigned literals (fewer than k) and set a
/// uniformly random unassigned literal of it true; with no shortened clause,
/// set a random variable randomly.
BaselineResult shortest_clause_solve(const Formula& formula, std::uint64_t seed);

/// Random walk: from a uniformly random assignment, repeatedly flip the
/// variable at a uniformly random position of a uniformly random unsatisfied
/// clause. Fails after max_flips flips. Throws std::invalid_argument if
/// max_flips is 0.
BaselineResult walksat_solve(const Formula& formula, std::uint64_t seed, std::uint64_t max_flips);

std::uint64_t default_max_flips(const Formula& formula);

struct PureLiteralReduction {
  PartialAssignment partial;
  /// Ascending indices of the clauses the pure literals did not satisfy.
  std::vector<std::size_t> residual;
};

/// Applies the pure literal rule to a fixpoint, lowest variable first.
PureLiteralReduction pure_literal_reduce(const Formula& formula);

/// Succeeds iff the reduction satisfies every clause; untouched variables
/// are set true.
BaselineResult pure_literal_solve(const Formula& formula);

BaselineResult run_baseline(const Formula& formula, const BaselineConfig& config);

}  // namespace fixsat
