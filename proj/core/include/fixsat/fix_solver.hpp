#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "fixsat/formula.hpp"
#include "fixsat/matching.hpp"
#include "fixsat/phase_stats.hpp"
#include "fixsat/var_set.hpp"

namespace fixsat {

/// Position windows of the Fix algorithm, as 0-based half-open ranges.
/// With k1 = ceil(k/2) and 1-based positions j:
///   safe scan      1 <= j < k1
///   fallback       j = k1
///   safe repair    k1 < j <= k-5
///   forced repair  k-5 < j <= k
struct SolverParams {
  std::uint32_t k = 0;
  std::uint32_t k1 = 0;
  std::size_t scan_end = 0;
  std::size_t fallback_pos = 0;
  std::size_t safe_repair_begin = 0, safe_repair_end = 0;
  std::size_t forced_repair_begin = 0, forced_repair_end = 0;

  /// Requires k >= 2.
  static SolverParams for_width(std::uint32_t k);
};

/// Phase 1: scans the clauses in order and, for every all-negative clause
/// without a Z variable, adds one of its variables to Z, preferring Z-safe
/// ones among the positions before k1.
///
/// Per-clause counters: positive occurrences with variable outside Z, and
/// negative occurrences with variable in Z. A clause is Z-unique iff these
/// are 1 and 0. unique_support(x) counts Z-unique clauses where x is the
/// remaining positive literal, so x is Z-safe iff it is 0.
class Phase1Process {
public:
  explicit Phase1Process(const Formula& formula, bool record_trace = false);

  /// Performs the next selection. Returns false once the scan is complete.
  bool step();
  void run() {
    while (step()) {
    }
  }
  bool done() const { return next_clause_ >= formula_->num_clauses(); }

  const SolverParams& params() const { return params_; }
  const VarSet& z() const { return z_; }
  /// sigma_Z: Z false, every other variable true.
  Assignment sigma() const;

  std::uint32_t positive_outside(std::size_t clause) const { return pos_outside_[clause]; }
  std::uint32_t negative_inside(std::size_t clause) const { return neg_inside_[clause]; }
  bool is_unique(std::size_t clause) const { return pos_outside_[clause] == 1 && neg_inside_[clause] == 0; }
  std::uint32_t unique_support(Var x) const { return unique_support_[x]; }
  /// x must not be in Z.
  bool is_safe(Var x) const { return unique_support_[x] == 0; }
  std::size_t unique_count() const { return unique_count_; }
  std::size_t fallback_count() const { return fallback_count_; }
  const std::vector<TraceRecord>& trace() const { return trace_; }

private:
  void add(Var x);

  const Formula* formula_;
  SolverParams params_;
  VarSet z_;
  std::vector<std::uint8_t> pos_outside_;
  std::vector<std::uint8_t> neg_inside_;
  // XOR of the variables counted in pos_outside_; equals the remaining
  // positive variable whenever the count is 1.
  std::vector<std::uint32_t> pos_outside_xor_;
  std::vector<std::uint32_t> unique_support_;
  std::size_t unique_count_ = 0;
  std::size_t next_clause_ = 0;
  std::size_t fallback_count_ = 0;
  bool record_trace_;
  std::vector<TraceRecord> trace_;
};

/// Phase 2: while some endangered clause has fewer than three distinct Z'
/// variables, take the least such clause and add three of its variables to
/// Z', preferring (Z,Z')-safe ones from the safe-repair window and otherwise
/// the first three distinct variables outside Z' in the forced-repair window.
class Phase2Process {
public:
  enum class Status { running, done, degenerate_clause };

  /// z is copied; the formula must outlive the process.
  Phase2Process(const Formula& formula, const VarSet& z);

  /// Runs one loop iteration. Returns false when the queue is empty or a
  /// degenerate clause stopped the loop.
  bool step();
  void run() {
    while (step()) {
    }
  }
  Status status() const { return status_; }
  /// Clause on which the forced repair failed, if any.
  std::optional<std::size_t> degenerate_clause() const { return degenerate_clause_; }

  const VarSet& z() const { return z_; }
  const VarSet& z_prime() const { return z_prime_; }
  std::size_t iterations() const { return iterations_; }
  std::size_t initial_queue_size() const { return initial_queue_size_; }

  /// Literals true under sigma_Z whose variable is outside Z'.
  std::uint32_t support(std::size_t clause) const { return support_[clause]; }
  bool is_endangered(std::size_t clause) const { return support_[clause] == 0; }
  std::uint32_t distinct_in_z_prime(std::size_t clause) const { return distinct_[clause]; }
  /// Positions that are not dead: positive with variable outside Z and Z',
  /// or negative with variable in Z.
  std::uint32_t live(std::size_t clause) const { return pos_live_[clause] + neg_inside_[clause]; }
  /// Clauses whose only live literal is x, positively.
  std::uint32_t unsafe_support(Var x) const { return unsafe_support_[x]; }
  bool is_safe(Var x) const { return !z_.contains(x) && !z_prime_.contains(x) && unsafe_support_[x] == 0; }
  bool in_queue(std::size_t clause) const { return in_queue_[clause] != 0; }
  /// Current queue, ascending.
  std::vector<std::size_t> queue_contents() const;

private:
  void add(Var x);
  void enqueue_if_needed(std::uint32_t clause);

  const Formula* formula_;
  SolverParams params_;
  VarSet z_;
  VarSet z_prime_;
  std::vector<std::uint8_t> support_;
  std::vector<std::uint8_t> distinct_;
  std::vector<std::uint8_t> pos_live_;
  std::vector<std::uint8_t> neg_inside_;
  std::vector<std::uint32_t> pos_live_xor_;
  std::vector<std::uint32_t> unsafe_support_;
  std::vector<std::uint8_t> in_queue_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap_;
  std::size_t iterations_ = 0;
  std::size_t initial_queue_size_ = 0;
  Status status_ = Status::running;
  std::optional<std::size_t> degenerate_clause_;
};

enum class FixFailure { none, degenerate_clause, matching_not_found, internal_error };

const char* to_string(FixFailure failure);

struct FixOutcome {
  /// Present iff the run succeeded; always satisfies the formula.
  std::optional<Assignment> assignment;
  FixFailure failure = FixFailure::none;
  std::string detail;
  PhaseStats stats;
  /// Phase-1 selection trace, filled when tracing is enabled.
  std::vector<TraceRecord> trace;
  /// Deficient clause set when Phase 3 fails.
  std::optional<HallViolation> hall_violation;

  bool solved() const { return assignment.has_value(); }
};

struct FixOptions {
  bool trace = false;
};

Phase1Process run_phase1(const Formula& formula, bool record_trace = false);
Phase2Process run_phase2(const Formula& formula, const VarSet& z);

/// Phase 3: matches endangered clauses to Z' variables and builds
/// sigma_{Z,Z',M}. Fills matching-related fields of the outcome's stats.
FixOutcome run_phase3(const Formula& formula, const VarSet& z, const VarSet& z_prime);

/// sigma_{Z,Z',M}: Z minus Z' false, a matched variable false when it
/// occurs negatively in its matched clause, everything else true.
Assignment assignment_from_matching(const Formula& formula, const VarSet& z, const VarSet& z_prime,
                                    const Matching& matching);

/// Runs the three phases. Deterministic; requires k >= 2.
FixOutcome fix_solve(const Formula& formula, const FixOptions& options = {});

}  // namespace fixsat
