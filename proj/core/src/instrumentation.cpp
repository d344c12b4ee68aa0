#include "fixsat/instrumentation.hpp"

#include <cmath>
#include <stdexcept>

namespace fixsat {

std::vector<std::string> anomaly_names(std::uint32_t flags) {
  std::vector<std::string> names;
  if (flags & static_cast<std::uint32_t>(Anomaly::degenerate_clause)) names.emplace_back("degenerate-clause");
  if (flags & static_cast<std::uint32_t>(Anomaly::matching_not_found)) names.emplace_back("matching-not-found");
  if (flags & static_cast<std::uint32_t>(Anomaly::internal_error)) names.emplace_back("internal-error");
  return names;
}

void record_phase1(PhaseStats& stats, const Phase1Process& phase1) {
  stats.z_size = phase1.z().size();
  stats.z_unique_count = phase1.unique_count();
  stats.fallback_count = phase1.fallback_count();
}

void record_phase2(PhaseStats& stats, const Phase2Process& phase2) {
  stats.unsat_after_phase1 = phase2.initial_queue_size();
  stats.z_prime_size = phase2.z_prime().size();
  stats.phase2_iterations = phase2.iterations();
  if (phase2.status() == Phase2Process::Status::degenerate_clause) stats.flag(Anomaly::degenerate_clause);
}

void record_phase3(PhaseStats& stats, const PhaseStats& phase3) {
  stats.endangered_count = phase3.endangered_count;
  stats.matching_covered = phase3.matching_covered;
  stats.anomaly_flags |= phase3.anomaly_flags;
}

PhaseStats collect_stats(const Phase1Process& phase1, const Phase2Process* phase2, const FixOutcome* phase3) {
  PhaseStats stats;
  record_phase1(stats, phase1);
  if (phase2) record_phase2(stats, *phase2);
  if (phase3) record_phase3(stats, phase3->stats);
  return stats;
}

double implied_epsilon(std::uint32_t n, std::uint32_t k, std::uint64_t m) {
  if (n == 0 || k < 2) return 0;
  const double density = static_cast<double>(m) / n;
  const double scale = std::ldexp(1.0, static_cast<int>(k)) * std::log(static_cast<double>(k)) / k;
  return 1.0 - density / scale;
}

ReferenceBounds ReferenceBounds::for_instance(std::uint32_t n, std::uint32_t k, std::uint64_t m) {
  ReferenceBounds b;
  b.n = n;
  b.k = k;
  b.m = m;
  b.epsilon = implied_epsilon(n, k, m);
  const double kd = k;
  const double nd = n;
  b.omega = (1.0 - b.epsilon) * std::log(kd);
  if (b.omega > 1.0) b.z_bound = 4.0 * nd * std::log(b.omega) / kd;
  b.z_unique_bound = (1.0 + b.epsilon / 3.0) * b.omega * nd;
  b.unsat_bound = std::exp(-std::pow(kd, b.epsilon / 8.0)) * nd;
  b.z_prime_bound = nd * std::pow(kd, -12.0);
  b.all_negative_expectation = std::ldexp(static_cast<double>(m), -static_cast<int>(k));
  return b;
}

const BoundCheck* BoundsReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

BoundsReport check_bounds(const PhaseStats& stats, const ReferenceBounds& bounds, double slack) {
  if (!(slack >= 1.0)) throw std::invalid_argument("slack must be >= 1");
  BoundsReport report;
  report.slack = slack;
  auto add = [&](std::string name, double observed, std::optional<double> bound) {
    BoundCheck c;
    c.name = std::move(name);
    c.observed = observed;
    if (bound && bounds.applicable()) {
      c.bound = *bound;
      c.limit = slack * *bound;
      c.ratio = *bound > 0 ? observed / *bound : 0;
      c.status = observed <= c.limit ? BoundStatus::pass : BoundStatus::fail;
    }
    report.checks.push_back(std::move(c));
  };
  add("z_size", static_cast<double>(stats.z_size), bounds.z_bound);
  add("z_unique_count", static_cast<double>(stats.z_unique_count), bounds.z_unique_bound);
  add("unsat_after_phase1", static_cast<double>(stats.unsat_after_phase1), bounds.unsat_bound);
  add("unsat_vs_all_negative", static_cast<double>(stats.unsat_after_phase1), bounds.all_negative_expectation);
  add("z_prime_size", static_cast<double>(stats.z_prime_size), bounds.z_prime_bound);
  return report;
}

const char* to_string(BoundStatus status) {
  switch (status) {
    case BoundStatus::pass: return "pass";
    case BoundStatus::fail: return "fail";
    case BoundStatus::not_applicable: return "not-applicable";
  }
  return "unknown";
}

void to_json(nlohmann::json& j, const PhaseStats& s) {
  j = nlohmann::json{{"z_size", s.z_size},
                     {"z_unique_count", s.z_unique_count},
                     {"unsat_after_phase1", s.unsat_after_phase1},
                     {"z_prime_size", s.z_prime_size},
                     {"endangered_count", s.endangered_count},
                     {"phase2_iterations", s.phase2_iterations},
                     {"matching_covered", s.matching_covered},
                     {"fallback_count", s.fallback_count},
                     {"anomalies", anomaly_names(s.anomaly_flags)}};
}

void from_json(const nlohmann::json& j, PhaseStats& s) {
  j.at("z_size").get_to(s.z_size);
  j.at("z_unique_count").get_to(s.z_unique_count);
  j.at("unsat_after_phase1").get_to(s.unsat_after_phase1);
  j.at("z_prime_size").get_to(s.z_prime_size);
  j.at("endangered_count").get_to(s.endangered_count);
  j.at("phase2_iterations").get_to(s.phase2_iterations);
  j.at("matching_covered").get_to(s.matching_covered);
  j.at("fallback_count").get_to(s.fallback_count);
  s.anomaly_flags = 0;
  for (const auto& name : j.at("anomalies")) {
    if (name == "degenerate-clause") s.flag(Anomaly::degenerate_clause);
    else if (name == "matching-not-found") s.flag(Anomaly::matching_not_found);
    else if (name == "internal-error") s.flag(Anomaly::internal_error);
    else throw std::invalid_argument("unknown anomaly '" + name.get<std::string>() + "'");
  }
}

void to_json(nlohmann::json& j, const TraceRecord& r) {
  j = nlohmann::json{{"t", r.t}, {"clause", r.clause}, {"var", r.var}, {"fallback", r.fallback},
                     {"z_unique_count", r.z_unique_count}};
}

void to_json(nlohmann::json& j, const GeneratorConfig& c) {
  j = nlohmann::json{{"n", c.n}, {"k", c.k}, {"m", c.m}, {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, GeneratorConfig& c) {
  j.at("n").get_to(c.n);
  j.at("k").get_to(c.k);
  j.at("m").get_to(c.m);
  j.at("seed").get_to(c.seed);
}

void to_json(nlohmann::json& j, const BoundsReport& report) {
  j = nlohmann::json{{"slack", report.slack}, {"checks", nlohmann::json::array()}};
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"observed", c.observed},
                           {"bound", c.bound},
                           {"limit", c.limit},
                           {"ratio", c.ratio},
                           {"status", to_string(c.status)}});
  }
}

}  // namespace fixsat
