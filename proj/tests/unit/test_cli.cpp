#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixsat/dimacs.hpp"
#include "fixsat/generator.hpp"

using namespace fixsat;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fixsat-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("gen writes a formula that parses back") {
  TempDir dir;
  const auto path = dir.file("f.cnf");
  CHECK(run_cli({"gen", "--n", "5", "--k", "3", "--m", "4", "--seed", "42", "-o", path}).code == cli::kExitOk);
  CHECK(parse_dimacs(read_file(path)) == sample_formula({5, 3, 4, 42}));
  CHECK(read_file(path).rfind("c generator ", 0) == 0);

  CHECK(run_cli({"gen", "--n", "5", "--k", "3", "--m", "4", "-o", path}).code == cli::kExitError);
  CHECK(run_cli({"gen", "--n", "5", "--k", "3", "--m", "4", "-o", path, "--force"}).code == cli::kExitOk);
}

TEST_CASE("gen derives m from the density") {
  const auto r = run_cli({"gen", "--n", "1000", "--k", "10", "--density", "120", "--seed", "1", "-o", "-"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\np cnf 1000 120000\n") != std::string::npos);
}

TEST_CASE("gen usage errors") {
  CHECK(run_cli({"gen", "--n", "0", "--k", "3", "--m", "4", "-o", "-"}).code == cli::kExitUsage);
  CHECK(run_cli({"gen", "--n", "5", "--k", "3", "-o", "-"}).code == cli::kExitUsage);
  CHECK(run_cli({"gen", "--n", "5", "--k", "3", "--m", "4", "--density", "2", "-o", "-"}).code == cli::kExitUsage);
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
}

TEST_CASE("solve and validate") {
  TempDir dir;
  const auto cnf = dir.file("hand.cnf");
  write_file(cnf, "p cnf 3 1\n-1 -2 -3 0\n");
  const auto r = run_cli({"solve", cnf, "--algo", "fix"});
  CHECK(r.code == cli::kExitSolved);
  CHECK(r.out.find("s SATISFIABLE") != std::string::npos);
  CHECK(r.out.find("v -1 2 3 0") != std::string::npos);

  const auto model = dir.file("model.txt");
  write_file(model, r.out);
  const auto ok = run_cli({"validate", cnf, model});
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.out.rfind("OK", 0) == 0);

  write_file(model, "v 1 2 3 0\n");
  const auto bad = run_cli({"validate", cnf, model});
  CHECK(bad.code == cli::kExitFailed);
  CHECK(bad.out.find("INVALID") != std::string::npos);

  write_file(model, "v 1 2 0\n");
  CHECK(run_cli({"validate", cnf, model}).code == cli::kExitError);
}

TEST_CASE("solve reports failures and errors") {
  TempDir dir;
  const auto unsat = dir.file("unsat.cnf");
  write_file(unsat, "p cnf 2 4\n1 2 0\n-2 1 0\n-1 2 0\n-1 -2 0\n");
  const auto r = run_cli({"solve", unsat, "--algo", "walksat", "--seed", "7", "--max-flips", "1"});
  CHECK(r.code == cli::kExitFailed);
  CHECK(r.out.find("s FAIL flip budget exhausted") != std::string::npos);

  const auto broken = dir.file("broken.cnf");
  write_file(broken, "p cnf 2 2\n1 0\n1 -2 0\n");
  const auto e = run_cli({"solve", broken});
  CHECK(e.code == cli::kExitError);
  CHECK(e.err.find("non-uniform") != std::string::npos);

  CHECK(run_cli({"solve", dir.file("missing.cnf")}).code == cli::kExitError);
  CHECK(run_cli({"solve", unsat, "--algo", "magic"}).code == cli::kExitUsage);
}

TEST_CASE("solve writes a trace") {
  TempDir dir;
  const auto cnf = dir.file("f.cnf");
  write_file(cnf, write_dimacs(sample_formula({40, 3, 60, 3})));
  const auto trace = dir.file("trace.json");
  const auto r = run_cli({"solve", cnf, "--trace", trace, "--stats"});
  CHECK((r.code == cli::kExitSolved || r.code == cli::kExitFailed));
  CHECK(r.out.find("c stats {") != std::string::npos);
  const auto text = read_file(trace);
  CHECK(text.find("\"trace\"") != std::string::npos);
  CHECK(text.find("\"bounds\"") != std::string::npos);
}

TEST_CASE("sweep output is byte-stable") {
  const std::vector<std::string> args = {"sweep", "--n", "50", "--k", "3", "--densities", "1,3", "--reps", "2",
                                         "--algos", "fix,uc,sc,walksat,pl", "--seed", "5", "--omit-runtime"};
  auto serial = args;
  serial.insert(serial.end(), {"--jobs", "1"});
  auto parallel = args;
  parallel.insert(parallel.end(), {"--jobs", "4"});
  const auto a = run_cli(serial);
  const auto b = run_cli(parallel);
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("k,n,m,density", 0) == 0);

  auto range = args;
  range[5] = "--density-range";
  range[6] = "1:3:2";
  CHECK(run_cli(range).out == a.out);

  auto jsonl = args;
  jsonl.insert(jsonl.end(), {"--format", "jsonl", "--summary"});
  const auto j = run_cli(jsonl);
  CHECK(j.code == cli::kExitOk);
  CHECK(j.out.find("{\"") != std::string::npos);
  CHECK(j.err.find("wilson95") != std::string::npos);
}
