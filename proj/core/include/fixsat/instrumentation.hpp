#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixsat/fix_solver.hpp"
#include "fixsat/generator.hpp"
#include "fixsat/phase_stats.hpp"

namespace fixsat {

void record_phase1(PhaseStats& stats, const Phase1Process& phase1);
void record_phase2(PhaseStats& stats, const Phase2Process& phase2);
/// Copies endangered count, coverage and anomaly flags from a Phase-3 result.
void record_phase3(PhaseStats& stats, const PhaseStats& phase3);

/// Stats of a run assembled from its phase objects; phase2 and phase3 may be
/// null when the run stopped earlier.
PhaseStats collect_stats(const Phase1Process& phase1, const Phase2Process* phase2, const FixOutcome* phase3);

/// Asymptotic whp bounds for the structural quantities of a Fix run,
/// evaluated at finite (n, k, m). epsilon is read off the density through
/// m/n = (1 - epsilon) 2^k ln(k) / k.
struct ReferenceBounds {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint64_t m = 0;
  double epsilon = 0;
  double omega = 0;
  /// 4 n ln(omega) / k; absent when omega <= 1.
  std::optional<double> z_bound;
  double z_unique_bound = 0;
  double unsat_bound = 0;
  double z_prime_bound = 0;
  /// 2^-k m, the expected number of all-negative clauses.
  double all_negative_expectation = 0;

  /// False outside the theorem's regime (epsilon <= 0).
  bool applicable() const { return epsilon > 0; }

  static ReferenceBounds for_instance(std::uint32_t n, std::uint32_t k, std::uint64_t m);
};

/// m/n = (1 - epsilon) 2^k ln(k) / k solved for epsilon.
double implied_epsilon(std::uint32_t n, std::uint32_t k, std::uint64_t m);

enum class BoundStatus { pass, fail, not_applicable };

struct BoundCheck {
  std::string name;
  double observed = 0;
  double bound = 0;
  double limit = 0;  ///< slack * bound
  double ratio = 0;  ///< observed / bound, 0 when bound is 0
  BoundStatus status = BoundStatus::not_applicable;
};

struct BoundsReport {
  double slack = 1;
  std::vector<BoundCheck> checks;

  const BoundCheck* find(const std::string& name) const;
};

/// Compares each recorded quantity with slack * bound. Reports, never
/// throws on violation; whether a violation matters is for the caller.
/// Throws std::invalid_argument if slack < 1.
BoundsReport check_bounds(const PhaseStats& stats, const ReferenceBounds& bounds, double slack = 1.5);

const char* to_string(BoundStatus status);

void to_json(nlohmann::json& j, const PhaseStats& stats);
void from_json(const nlohmann::json& j, PhaseStats& stats);
void to_json(nlohmann::json& j, const TraceRecord& record);
void to_json(nlohmann::json& j, const GeneratorConfig& config);
void from_json(const nlohmann::json& j, GeneratorConfig& config);
void to_json(nlohmann::json& j, const BoundsReport& report);

}  // namespace fixsat
