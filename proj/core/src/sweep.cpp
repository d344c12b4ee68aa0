#include "fixsat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "fixsat/baselines.hpp"
#include "fixsat/fix_solver.hpp"
#include "fixsat/generator.hpp"
#include "fixsat/instrumentation.hpp"
#include "fixsat/rng.hpp"

namespace fixsat {
namespace {

std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

unsigned resolve_parallelism(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FIXSAT_JOBS")) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), value);
    if (ec == std::errc() && value > 0) return value;
  }
  return 1;
}

ResultRow run_task(const SweepConfig& config, double density, Algorithm algorithm,
                   const Formula& formula, std::uint64_t formula_seed) {
  ResultRow row;
  row.k = config.k;
  row.n = config.n;
  row.m = formula.num_clauses();
  row.density = density;
  row.algorithm = algorithm;
  row.seed = formula_seed;
  const auto start = std::chrono::steady_clock::now();
  auto result = solve(formula, algorithm, solver_seed(formula_seed, algorithm), config.max_flips);
  row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.success = result.solved();
  row.phase_stats = result.stats;
  if (result.solved()) {
    row.assignment_hash = assignment_hash(*result.assignment);
  } else {
    row.failure_reason = result.failure;
  }
  return row;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "fix") return Algorithm::fix;
  if (lower == "uc") return Algorithm::unit_clause;
  if (lower == "sc") return Algorithm::shortest_clause;
  if (lower == "walksat") return Algorithm::walksat;
  if (lower == "pl") return Algorithm::pure_literal;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "' (expected fix, uc, sc, walksat, pl)");
}

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::fix: return "FIX";
    case Algorithm::unit_clause: return "UC";
    case Algorithm::shortest_clause: return "SC";
    case Algorithm::walksat: return "WALKSAT";
    case Algorithm::pure_literal: return "PL";
  }
  return "?";
}

SolveResult solve(const Formula& formula, Algorithm algorithm, std::uint64_t seed, std::uint64_t max_flips) {
  SolveResult out;
  if (algorithm == Algorithm::fix) {
    auto fix = fix_solve(formula);
    out.stats = fix.stats;
    out.steps = fix.stats.z_size + fix.stats.z_prime_size;
    if (fix.solved()) {
      out.assignment = std::move(fix.assignment);
    } else {
      out.failure = to_string(fix.failure);
    }
  } else {
    BaselineConfig config;
    config.seed = seed;
    config.max_flips = max_flips;
    switch (algorithm) {
      case Algorithm::unit_clause: config.algorithm = BaselineAlgorithm::unit_clause; break;
      case Algorithm::shortest_clause: config.algorithm = BaselineAlgorithm::shortest_clause; break;
      case Algorithm::walksat: config.algorithm = BaselineAlgorithm::walksat; break;
      default: config.algorithm = BaselineAlgorithm::pure_literal; break;
    }
    auto result = run_baseline(formula, config);
    out.steps = result.steps;
    out.assignment = std::move(result.assignment);
    out.failure = std::move(result.failure);
  }
  if (out.assignment && !evaluate(formula, *out.assignment)) {
    throw std::logic_error(std::string(to_string(algorithm)) + " returned a non-satisfying assignment");
  }
  return out;
}

void SweepConfig::validate() const {
  GeneratorConfig{n, k, 0, 0}.validate();
  if (densities.empty()) throw std::invalid_argument("density grid is empty");
  for (double d : densities) {
    if (!(d > 0) || !std::isfinite(d)) throw std::invalid_argument("densities must be positive");
  }
  if (repetitions == 0) throw std::invalid_argument("repetitions must be at least 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
  if (std::find(algorithms.begin(), algorithms.end(), Algorithm::fix) != algorithms.end() && k < 2) {
    throw std::invalid_argument("FIX requires k >= 2");
  }
}

std::uint64_t point_seed(std::uint64_t base_seed, double density, std::uint32_t rep) {
  return derive_seed(base_seed ^ mix64(std::bit_cast<std::uint64_t>(density)), rep);
}

std::uint64_t solver_seed(std::uint64_t formula_seed, Algorithm algorithm) {
  return derive_seed(formula_seed, 0x5eed0000u + static_cast<unsigned>(algorithm));
}

ResultRow rerun(const ResultRow& row, std::uint64_t max_flips) {
  SweepConfig config;
  config.k = row.k;
  config.n = row.n;
  config.max_flips = max_flips;
  const auto formula = sample_formula(GeneratorConfig{row.n, row.k, row.m, row.seed});
  return run_task(config, row.density, row.algorithm, formula, row.seed);
}

std::vector<ResultRow> run_sweep(const SweepConfig& config, const std::function<void(const ResultRow&)>& on_row) {
  config.validate();
  struct Task {
    double density;
    std::uint32_t rep;
  };
  std::vector<Task> tasks;
  for (double d : config.densities) {
    for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) tasks.push_back({d, rep});
  }
  const std::size_t per_task = config.algorithms.size();
  std::vector<std::optional<ResultRow>> slots(tasks.size() * per_task);
  std::vector<ResultRow> rows;
  rows.reserve(slots.size());

  std::mutex mutex;
  std::size_t emitted = 0;
  std::atomic<std::size_t> next_task{0};
  std::exception_ptr error;

  // Emits the completed prefix; caller holds the mutex.
  auto flush = [&] {
    while (emitted < slots.size() && slots[emitted]) {
      rows.push_back(std::move(*slots[emitted]));
      slots[emitted].reset();
      if (on_row) on_row(rows.back());
      ++emitted;
    }
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t t = next_task.fetch_add(1);
      if (t >= tasks.size()) return;
      {
        std::lock_guard lock(mutex);
        if (error) return;
      }
      try {
        const auto& task = tasks[t];
        const auto seed = point_seed(config.base_seed, task.density, task.rep);
        const auto formula =
            sample_formula(GeneratorConfig::from_density(config.n, config.k, task.density, seed));
        for (std::size_t a = 0; a < per_task; ++a) {
          auto row = run_task(config, task.density, config.algorithms[a], formula, seed);
          std::lock_guard lock(mutex);
          slots[t * per_task + a] = std::move(row);
          flush();
        }
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  const unsigned jobs = std::min<std::size_t>(resolve_parallelism(config.parallelism), tasks.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

std::string csv_header() {
  return "k,n,m,density,algorithm,seed,success,runtime_ms,z_size,z_unique_count,unsat_after_phase1,"
         "z_prime_size,endangered_count,phase2_iterations,matching_covered,fallback_count,anomalies,"
         "failure_reason,assignment_hash";
}

void write_csv_row(std::ostream& out, const ResultRow& row, bool include_runtime) {
  out << row.k << ',' << row.n << ',' << row.m << ',' << format_double(row.density) << ','
      << to_string(row.algorithm) << ',' << row.seed << ',' << (row.success ? "true" : "false") << ',';
  if (include_runtime) out << std::fixed << std::setprecision(3) << row.runtime_ms << std::defaultfloat;
  out << ',';
  if (const auto& s = row.phase_stats) {
    std::string anomalies;
    for (const auto& name : anomaly_names(s->anomaly_flags)) {
      if (!anomalies.empty()) anomalies += ';';
      anomalies += name;
    }
    out << s->z_size << ',' << s->z_unique_count << ',' << s->unsat_after_phase1 << ',' << s->z_prime_size << ','
        << s->endangered_count << ',' << s->phase2_iterations << ',' << (s->matching_covered ? "true" : "false")
        << ',' << s->fallback_count << ',' << anomalies << ',';
  } else {
    out << ",,,,,,,,,";
  }
  out << csv_escape(row.failure_reason.value_or("")) << ',';
  if (row.success) out << row.assignment_hash;
  out << '\n';
}

void write_jsonl_row(std::ostream& out, const ResultRow& row, bool include_runtime) {
  nlohmann::json j{{"k", row.k},
                   {"n", row.n},
                   {"m", row.m},
                   {"density", row.density},
                   {"algorithm", to_string(row.algorithm)},
                   {"seed", row.seed},
                   {"success", row.success},
                   {"generator", GeneratorConfig{row.n, row.k, row.m, row.seed}}};
  if (include_runtime) j["runtime_ms"] = row.runtime_ms;
  j["phase_stats"] = row.phase_stats ? nlohmann::json(*row.phase_stats) : nlohmann::json(nullptr);
  j["failure_reason"] = row.failure_reason ? nlohmann::json(*row.failure_reason) : nlohmann::json(nullptr);
  j["assignment_hash"] = row.success ? nlohmann::json(row.assignment_hash) : nlohmann::json(nullptr);
  out << j.dump() << '\n';
}

SuccessEstimate wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  SuccessEstimate e;
  e.trials = trials;
  e.successes = successes;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  e.fraction = p;
  e.lower = std::max(0.0, center - half);
  e.upper = std::min(1.0, center + half);
  return e;
}

SuccessEstimate estimate_success_rate(const std::vector<ResultRow>& rows, double density, Algorithm algorithm) {
  std::size_t trials = 0, successes = 0;
  for (const auto& r : rows) {
    if (r.density == density && r.algorithm == algorithm) {
      ++trials;
      successes += r.success ? 1 : 0;
    }
  }
  if (trials == 0) throw std::invalid_argument("no rows at the requested point");
  return wilson_interval(successes, trials);
}

std::vector<SummaryEntry> summarize(const std::vector<ResultRow>& rows) {
  std::vector<SummaryEntry> out;
  std::map<std::pair<double, int>, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.density, static_cast<int>(r.algorithm));
    auto [it, inserted] = counts.try_emplace(key, 0, 0);
    if (inserted) out.push_back({r.density, r.algorithm, {}});
    ++it->second.first;
    it->second.second += r.success ? 1 : 0;
  }
  for (auto& e : out) {
    const auto& [trials, successes] = counts.at({e.density, static_cast<int>(e.algorithm)});
    e.estimate = wilson_interval(successes, trials);
  }
  return out;
}

void write_summary_table(std::ostream& out, const std::vector<SummaryEntry>& summary) {
  out << std::left << std::setw(10) << "density" << std::setw(10) << "algorithm" << std::setw(10) << "success"
      << std::setw(8) << "trials" << "wilson95\n";
  for (const auto& e : summary) {
    out << std::left << std::setw(10) << format_double(e.density) << std::setw(10) << to_string(e.algorithm)
        << std::setw(10) << std::fixed << std::setprecision(3) << e.estimate.fraction << std::setw(8)
        << e.estimate.trials << '[' << e.estimate.lower << ", " << e.estimate.upper << "]\n"
        << std::defaultfloat;
  }
}

std::optional<double> half_success_density(const std::vector<SummaryEntry>& summary, Algorithm algorithm) {
  std::vector<std::pair<double, double>> curve;
  for (const auto& e : summary) {
    if (e.algorithm == algorithm) curve.emplace_back(e.density, e.estimate.fraction);
  }
  std::sort(curve.begin(), curve.end());
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const auto [d0, f0] = curve[i - 1];
    const auto [d1, f1] = curve[i];
    if (f0 >= 0.5 && f1 < 0.5) return d0 + (f0 - 0.5) / (f0 - f1) * (d1 - d0);
  }
  return std::nullopt;
}

}  // namespace fixsat
