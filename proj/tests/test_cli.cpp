#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ellip/cli.hpp"
#include "ellip/logreg.hpp"
#include "ellip/trace_io.hpp"

using namespace ellip;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "ellip");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("ellip_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"run", "--help"}).code == kExitOk);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"run", "--kappa", "0.5"}).code == kExitUsage);
  CHECK(run({"run", "--solver", "newton"}).code == kExitUsage);
  CHECK(run({"run", "--problem", "svm"}).code == kExitUsage);
  CHECK(run({"run", "--n", "abc"}).code == kExitUsage);
  CHECK(run({"gen", "--problem", "quadratic"}).code == kExitUsage);
}

TEST_CASE("run on a two-dimensional quadratic") {
  const auto dir = scratch("run");
  const Outcome o = run({"run", "--problem", "quadratic", "--n", "2", "--kappa", "10", "--seed", "1", "--solver", "me",
                         "--out", dir.string()});
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("me") != std::string::npos);
  std::ifstream in(dir / "trace_me.csv");
  const auto records = read_trace_csv(in);
  CHECK(records.size() <= 2);
  CHECK_FALSE(std::filesystem::exists(dir / "trace_gd-l.csv"));
}

TEST_CASE("iteration cap is a solver failure") {
  const Outcome o = run({"run", "--n", "30", "--max-outer", "2"});
  CHECK(o.code == kExitSolverFailure);
  CHECK(o.err.find("max-iterations") != std::string::npos);
}

TEST_CASE("compare prints every solver") {
  const Outcome o = run({"compare", "--n", "40", "--kappa", "10", "--seed", "2"});
  CHECK(o.code == kExitOk);
  for (const char* name : {"me", "gd-exact", "gd-l", "fast-gd"}) CHECK(o.out.find(name) != std::string::npos);
}

TEST_CASE("verify") {
  const Outcome o = run({"verify", "--problem", "logreg", "--n", "200", "--m", "100", "--kappa", "50", "--seed", "7"});
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("overall: PASS") != std::string::npos);
}

TEST_CASE("gen writes a loadable instance") {
  const auto dir = scratch("gen");
  const auto file = dir / "inst.txt";
  CHECK(run({"gen", "--n", "12", "--m", "6", "--kappa", "40", "--seed", "3", "--file", file.string()}).code ==
        kExitOk);
  std::ifstream in(file);
  const LogRegProblem p = read_logreg(in);
  const LogRegProblem q = generate_logreg(12, 6, 40.0, 3);
  CHECK(p.data() == q.data());
  CHECK(p.mu() == q.mu());
  CHECK(run({"run", "--instance", file.string(), "--solver", "gd-exact"}).code == kExitOk);
  const Outcome stdout_gen = run({"gen", "--n", "3", "--m", "2", "--kappa", "5"});
  CHECK(stdout_gen.code == kExitOk);
  CHECK(stdout_gen.out.rfind("3 2 ", 0) == 0);
}

TEST_CASE("config file with flag override") {
  const auto dir = scratch("config");
  {
    std::ofstream cfg(dir / "run.toml");
    cfg << "[run]\nproblem = \"quadratic\"\nn = 2\nkappa = 1e6\nsolver = [\"me\"]\n";
  }
  const Outcome o = run({"--config", (dir / "run.toml").string(), "run", "--kappa", "0.5"});
  CHECK(o.code == kExitUsage);
  const Outcome ok = run({"--config", (dir / "run.toml").string(), "run", "--kappa", "20"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("problem=quadratic n=2 kappa=20") != std::string::npos);
  CHECK(run({"--config", (dir / "missing.toml").string(), "run"}).code == kExitUsage);
}
