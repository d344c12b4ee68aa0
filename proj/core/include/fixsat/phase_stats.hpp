#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fixsat {

enum class Anomaly : std::uint32_t {
  none = 0,
  /// Repair step found fewer than three distinct eligible variables.
  degenerate_clause = 1u << 0,
  /// No matching covers the endangered clauses.
  matching_not_found = 1u << 1,
  /// A covering matching produced an assignment that fails evaluation.
  internal_error = 1u << 2,
};

/// Quantities recorded by one Fix run.
struct PhaseStats {
  std::size_t z_size = 0;
  /// Z-unique clauses when the Phase-1 scan ends.
  std::size_t z_unique_count = 0;
  /// Clauses unsatisfied under sigma_Z; the initial repair queue.
  std::size_t unsat_after_phase1 = 0;
  std::size_t z_prime_size = 0;
  std::size_t endangered_count = 0;
  std::size_t phase2_iterations = 0;
  bool matching_covered = false;
  /// Times Phase 1 fell back to the clause's middle position.
  std::size_t fallback_count = 0;
  std::uint32_t anomaly_flags = 0;

  bool has(Anomaly a) const { return (anomaly_flags & static_cast<std::uint32_t>(a)) != 0; }
  void flag(Anomaly a) { anomaly_flags |= static_cast<std::uint32_t>(a); }

  friend bool operator==(const PhaseStats&, const PhaseStats&) = default;
};

/// One Phase-1 selection step. After record t, |Z| = t.
struct TraceRecord {
  std::size_t t = 0;
  std::size_t clause = 0;
  std::uint32_t var = 0;
  bool fallback = false;
  std::size_t z_unique_count = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

std::vector<std::string> anomaly_names(std::uint32_t flags);

}  // namespace fixsat
