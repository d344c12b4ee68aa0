#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixsat/formula.hpp"
#include "fixsat/phase_stats.hpp"

namespace fixsat {

enum class Algorithm { fix, unit_clause, shortest_clause, walksat, pure_literal };

/// "fix", "uc", "sc", "walksat", "pl" (case-insensitive). Throws std::invalid_argument.
Algorithm parse_algorithm(std::string_view name);
const char* to_string(Algorithm algorithm);

/// Outcome of one solver call on one formula, independent of the algorithm.
struct SolveResult {
  std::optional<Assignment> assignment;
  std::string failure;
  std::optional<PhaseStats> stats;  ///< Fix only
  std::uint64_t steps = 0;
  bool solved() const { return assignment.has_value(); }
};

/// Dispatches to Fix or a baseline. seed is ignored by the deterministic
/// algorithms; max_flips 0 selects the Walksat default. Every returned
/// assignment has been checked with evaluate.
SolveResult solve(const Formula& formula, Algorithm algorithm, std::uint64_t seed, std::uint64_t max_flips = 0);

enum class OutputFormat { csv, jsonl };

struct SweepConfig {
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  std::vector<double> densities;
  std::uint32_t repetitions = 1;
  std::vector<Algorithm> algorithms = {Algorithm::fix};
  std::uint64_t base_seed = 0;
  /// Worker threads; 0 reads FIXSAT_JOBS from the environment, else 1.
  unsigned parallelism = 0;
  std::uint64_t max_flips = 0;

  /// Throws std::invalid_argument on empty grids, non-positive densities,
  /// zero repetitions or invalid dimensions.
  void validate() const;
};

struct ResultRow {
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  double density = 0;
  Algorithm algorithm = Algorithm::fix;
  /// Formula seed; the solver seed is derived from it and the algorithm.
  std::uint64_t seed = 0;
  bool success = false;
  double runtime_ms = 0;
  std::optional<PhaseStats> phase_stats;
  std::optional<std::string> failure_reason;
  /// assignment_hash of the returned assignment, 0 on failure.
  std::uint64_t assignment_hash = 0;
};

/// Formula seed for repetition `rep` at a density: depends on the density
/// value itself, not on its position in the grid.
std::uint64_t point_seed(std::uint64_t base_seed, double density, std::uint32_t rep);
/// Seed handed to a randomized solver for a formula.
std::uint64_t solver_seed(std::uint64_t formula_seed, Algorithm algorithm);

/// Regenerates the formula of a row and solves it again.
ResultRow rerun(const ResultRow& row, std::uint64_t max_flips = 0);

/// Runs every (density, repetition, algorithm) task. on_row receives rows in
/// (density, repetition, algorithm) order as soon as that prefix is complete,
/// whatever the number of worker threads.
std::vector<ResultRow> run_sweep(const SweepConfig& config,
                                 const std::function<void(const ResultRow&)>& on_row = {});

/// Fixed CSV header matching write_csv_row.
std::string csv_header();
void write_csv_row(std::ostream& out, const ResultRow& row, bool include_runtime = true);
void write_jsonl_row(std::ostream& out, const ResultRow& row, bool include_runtime = true);

/// Success fraction with a Wilson score interval.
struct SuccessEstimate {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double fraction = 0;
  double lower = 0;
  double upper = 0;
};

/// Wilson interval at the given normal quantile (1.96 for 95%).
SuccessEstimate wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Estimate over the rows at a (density, algorithm) point. Throws
/// std::invalid_argument if no row matches.
SuccessEstimate estimate_success_rate(const std::vector<ResultRow>& rows, double density, Algorithm algorithm);

struct SummaryEntry {
  double density = 0;
  Algorithm algorithm = Algorithm::fix;
  SuccessEstimate estimate;
};

/// One entry per (density, algorithm) in sweep order.
std::vector<SummaryEntry> summarize(const std::vector<ResultRow>& rows);
void write_summary_table(std::ostream& out, const std::vector<SummaryEntry>& summary);

/// Density at which the success fraction of `algorithm` first falls below
/// 1/2, linearly interpolated between adjacent grid points. nullopt when it
/// never reaches 1/2 or never drops below it.
std::optional<double> half_success_density(const std::vector<SummaryEntry>& summary, Algorithm algorithm);

}  // namespace fixsat
