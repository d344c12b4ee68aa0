#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fixsat/dimacs.hpp"
#include "fixsat/fix_solver.hpp"
#include "fixsat/generator.hpp"
#include "fixsat/instrumentation.hpp"
#include "fixsat/sweep.hpp"

namespace fixsat::cli {
namespace {

class CliError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Formula load_formula(const std::string& path) { return parse_dimacs(read_input(path)); }

void write_model(std::ostream& out, const Assignment& a) {
  constexpr int kPerLine = 16;
  int on_line = 0;
  for (Var v = 1; v <= a.num_vars(); ++v) {
    if (on_line == 0) out << 'v';
    out << ' ' << (a.value(v) ? "" : "-") << v;
    if (++on_line == kPerLine) {
      out << '\n';
      on_line = 0;
    }
  }
  out << (on_line == 0 ? "v" : "") << " 0\n";
}

// Reads "v"-lines (or bare integers) into a total assignment over n variables.
Assignment parse_model(const std::string& text, std::uint32_t n) {
  Assignment a(n, true);
  std::vector<std::uint8_t> seen(std::size_t{n} + 1, 0);
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string tok;
    bool first = true;
    while (tokens >> tok) {
      if (first && (tok == "c" || tok == "s")) break;
      if (first && tok == "v") {
        first = false;
        continue;
      }
      first = false;
      long long value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw CliError("assignment line " + std::to_string(line_no) + ": bad token '" + tok + "'");
      }
      if (value == 0) continue;
      const auto v = static_cast<std::uint64_t>(value < 0 ? -value : value);
      if (v > n) throw CliError("assignment mentions variable " + std::to_string(v) + " > " + std::to_string(n));
      a.set(static_cast<Var>(v), value > 0);
      seen[v] = 1;
    }
  }
  for (Var v = 1; v <= n; ++v) {
    if (!seen[v]) throw CliError("assignment does not set variable " + std::to_string(v));
  }
  return a;
}

std::vector<double> density_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
  if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
    throw CliError("--density-range expects from:to:step with step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  std::vector<double> grid;
  for (std::size_t i = 0; i < count; ++i) grid.push_back(std::round((parts[0] + i * parts[2]) * 1e9) / 1e9);
  return grid;
}

struct GenOptions {
  std::uint32_t n = 0, k = 0;
  std::uint64_t m = 0;
  double density = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool force = false;
};

struct SolveOptions {
  std::string input;
  std::string algo = "fix";
  std::uint64_t seed = 0;
  std::uint64_t max_flips = 0;
  std::string trace;
  bool stats = false;
};

struct SweepOptions {
  std::uint32_t n = 0, k = 0;
  std::vector<double> densities;
  std::string range;
  std::uint32_t reps = 1;
  std::vector<std::string> algos = {"fix"};
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  std::uint64_t max_flips = 0;
  std::string out = "-";
  std::string format = "csv";
  bool summary = false;
  bool omit_runtime = false;
};

struct ValidateOptions {
  std::string cnf;
  std::string model;
};

int cmd_gen(const GenOptions& o, CLI::App& app, std::ostream& out, std::ostream& err) {
  if (o.n == 0 || o.k == 0) {
    err << "gen: --n and --k must be at least 1\n";
    return kExitUsage;
  }
  const bool by_density = app.count("--density") > 0;
  GeneratorConfig config = by_density ? GeneratorConfig::from_density(o.n, o.k, o.density, o.seed)
                                      : GeneratorConfig{o.n, o.k, o.m, o.seed};
  config.validate();
  if (o.out != "-" && std::filesystem::exists(o.out) && !o.force) {
    err << "gen: '" << o.out << "' exists; pass --force to overwrite\n";
    return kExitError;
  }
  const auto formula = sample_formula(config);
  auto emit = [&](std::ostream& os) {
    os << "c generator " << nlohmann::json(config).dump() << '\n';
    write_dimacs(os, formula);
  };
  if (o.out == "-") {
    emit(out);
  } else {
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw CliError("cannot write '" + o.out + "'");
    emit(file);
    if (!file) throw CliError("write to '" + o.out + "' failed");
  }
  return kExitOk;
}

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const auto formula = load_formula(o.input);
  const auto algorithm = parse_algorithm(o.algo);
  out << "c algorithm " << to_string(algorithm) << '\n';

  std::optional<Assignment> model;
  std::string failure;
  std::optional<PhaseStats> stats;
  if (algorithm == Algorithm::fix) {
    if (formula.width() < 2) throw CliError("FIX requires clause width k >= 2");
    auto outcome = fix_solve(formula, FixOptions{!o.trace.empty()});
    stats = outcome.stats;
    if (!o.trace.empty()) {
      nlohmann::json j;
      j["stats"] = outcome.stats;
      j["trace"] = outcome.trace;
      j["bounds"] = check_bounds(outcome.stats,
                                 ReferenceBounds::for_instance(formula.num_vars(), formula.width(),
                                                               formula.num_clauses()));
      std::ofstream file(o.trace);
      if (!file) throw CliError("cannot write trace '" + o.trace + "'");
      file << j.dump(2) << '\n';
    }
    model = std::move(outcome.assignment);
    if (!model) failure = std::string(to_string(outcome.failure)) + ": " + outcome.detail;
  } else {
    auto result = solve(formula, algorithm, o.seed, o.max_flips);
    model = std::move(result.assignment);
    failure = result.failure;
  }
  if (o.stats && stats) out << "c stats " << nlohmann::json(*stats).dump() << '\n';
  if (model) {
    out << "s SATISFIABLE\n";
    write_model(out, *model);
    return kExitSolved;
  }
  out << "s FAIL " << failure << '\n';
  return kExitFailed;
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  SweepConfig config;
  config.k = o.k;
  config.n = o.n;
  config.densities = o.range.empty() ? o.densities : density_range(o.range);
  config.repetitions = o.reps;
  config.algorithms.clear();
  for (const auto& a : o.algos) config.algorithms.push_back(parse_algorithm(a));
  config.base_seed = o.seed;
  config.parallelism = o.jobs;
  config.max_flips = o.max_flips;
  try {
    config.validate();
  } catch (const std::exception& e) {
    err << "sweep: " << e.what() << '\n';
    return kExitUsage;
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* sink = &out;
  if (o.out != "-") {
    file = std::make_unique<std::ofstream>(o.out, std::ios::binary | std::ios::trunc);
    if (!*file) throw CliError("cannot write '" + o.out + "'");
    sink = file.get();
  }
  const bool csv = o.format == "csv";
  if (csv) *sink << csv_header() << '\n';
  const auto rows = run_sweep(config, [&](const ResultRow& row) {
    if (csv) {
      write_csv_row(*sink, row, !o.omit_runtime);
    } else {
      write_jsonl_row(*sink, row, !o.omit_runtime);
    }
    sink->flush();
  });
  if (o.summary) write_summary_table(file ? out : err, summarize(rows));
  return kExitOk;
}

int cmd_validate(const ValidateOptions& o, std::ostream& out) {
  const auto formula = load_formula(o.cnf);
  const auto model = parse_model(read_input(o.model), formula.num_vars());
  const auto unsat = unsatisfied_indices(formula, model);
  if (unsat.empty()) {
    out << "OK: assignment satisfies all " << formula.num_clauses() << " clauses\n";
    return kExitOk;
  }
  out << "INVALID: " << unsat.size() << " clauses unsatisfied; first (1-based):";
  for (std::size_t i = 0; i < std::min<std::size_t>(unsat.size(), 10); ++i) out << ' ' << unsat[i] + 1;
  out << '\n';
  return kExitFailed;
}

const CLI::Validator kAlgorithmName(
    [](std::string& name) -> std::string {
      try {
        parse_algorithm(name);
        return {};
      } catch (const std::invalid_argument& e) {
        return e.what();
      }
    },
    "ALGORITHM");

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fixsat: Fix algorithm for random k-SAT, baselines and experiment sweeps"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Sample a uniform random k-SAT formula as DIMACS");
  g->add_option("--n", gen.n, "Number of variables")->required();
  g->add_option("--k", gen.k, "Clause width")->required();
  auto* m_opt = g->add_option("--m", gen.m, "Number of clauses");
  auto* d_opt = g->add_option("--density", gen.density, "Clauses per variable; m = floor(density * n)");
  m_opt->excludes(d_opt);
  g->callback([&] {
    if (m_opt->count() + d_opt->count() == 0) throw CLI::RequiredError("--m or --density");
  });
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("-o,--out", gen.out, "Output path, '-' for stdout")->required();
  g->add_flag("--force", gen.force, "Overwrite an existing output file");

  SolveOptions solve_opts;
  auto* s = app.add_subcommand("solve", "Solve a k-uniform DIMACS formula");
  s->add_option("input", solve_opts.input, "DIMACS file, '-' for stdin")->required();
  s->add_option("--algo", solve_opts.algo, "fix | uc | sc | walksat | pl")->check(kAlgorithmName);
  s->add_option("--seed", solve_opts.seed, "Seed for randomized baselines");
  s->add_option("--max-flips", solve_opts.max_flips, "Walksat flip budget (default 50*n*k)");
  s->add_option("--trace", solve_opts.trace, "Write Fix phase statistics and Phase-1 trace as JSON");
  s->add_flag("--stats", solve_opts.stats, "Print Fix phase statistics as a comment line");

  SweepOptions sweep;
  auto* w = app.add_subcommand("sweep", "Success rates over a density grid");
  w->add_option("--n", sweep.n, "Number of variables")->required();
  w->add_option("--k", sweep.k, "Clause width")->required();
  auto* dl = w->add_option("--densities", sweep.densities, "Comma-separated densities")->delimiter(',');
  auto* dr = w->add_option("--density-range", sweep.range, "Grid from:to:step (inclusive)");
  dl->excludes(dr);
  w->add_option("--reps", sweep.reps, "Repetitions per density");
  w->add_option("--algos", sweep.algos, "Comma-separated algorithms")->delimiter(',')->check(kAlgorithmName);
  w->add_option("--seed", sweep.seed, "Base seed");
  w->add_option("--jobs", sweep.jobs, "Worker threads (default: $FIXSAT_JOBS or 1)");
  w->add_option("--max-flips", sweep.max_flips, "Walksat flip budget");
  w->add_option("-o,--out", sweep.out, "Result path, '-' for stdout");
  w->add_option("--format", sweep.format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  w->add_flag("--summary", sweep.summary, "Print per-point success rates with Wilson intervals");
  w->add_flag("--omit-runtime", sweep.omit_runtime, "Leave runtime_ms empty (byte-stable output)");

  ValidateOptions validate;
  auto* v = app.add_subcommand("validate", "Check an assignment against a CNF");
  v->add_option("cnf", validate.cnf, "DIMACS file")->required();
  v->add_option("assignment", validate.model, "File with 'v' lines or signed integers")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return cmd_gen(gen, *g, out, err);
    if (*s) return cmd_solve(solve_opts, out);
    if (*w) {
      if (sweep.densities.empty() && sweep.range.empty()) {
        err << "sweep: give --densities or --density-range\n";
        return kExitUsage;
      }
      return cmd_sweep(sweep, out, err);
    }
    if (*v) return cmd_validate(validate, out);
  } catch (const DimacsError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace fixsat::cli
