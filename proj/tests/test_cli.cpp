#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <string>

#include "bec/runner.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace bec;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kRun = R"(
[params]
eps = 0.05
[grid]
N = 48
[initial]
kind = cosine
amplitude = 0.2
[run]
t_end = 0.004
snapshot_interval = 0.001
)";

RunConfig config_in(const std::string& text, const fs::path& dir) {
  RunConfig c = parse_config(text);
  c.out_dir = dir.string();
  return c;
}

json read_json(const fs::path& p) { return json::parse(testing::read_file(p)); }

int count_lines(const fs::path& p) {
  std::ifstream in(p);
  int n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("run writes the documented artifacts") {
  const auto dir = testing::scratch_dir("run");
  REQUIRE(cmd_run(config_in(kRun, dir)) == kExitOk);
  for (const char* f : {"snapshots.csv", "diagnostics.csv", "summary.json", "timing.json", "schema.md"})
    CHECK(fs::exists(dir / f));
  const auto diag = testing::read_file(dir / "diagnostics.csv");
  CHECK(diag.rfind("t,mass_beta,grad_energy,diss1,diss2,diss3,diss4,diss5,sup_u,sup_bound,holder_C,deadcore,energy,"
                   "entropy\n",
                   0) == 0);
  CHECK(count_lines(dir / "diagnostics.csv") == 6);
  CHECK(testing::read_file(dir / "snapshots.csv").rfind("t,x,u\n", 0) == 0);
  CHECK(count_lines(dir / "snapshots.csv") == 1 + 5 * 49);
  const auto s = read_json(dir / "summary.json");
  CHECK(s["stop"]["kind"] == "Completed");
  CHECK(s["code_version"] == code_version());
  CHECK(s["config"]["params.eps"] == "0.05");
  CHECK(s["mass"]["relative_drift"].get<double>() <= 1e-12);
}

TEST_CASE("constant initial data completes") {
  const auto dir = testing::scratch_dir("constant");
  REQUIRE(cmd_run(config_in("[initial]\nkind = constant\nvalue = 1.5\n[grid]\nN = 32\n[run]\nt_end = 0.001\n", dir)) ==
          kExitOk);
  CHECK(read_json(dir / "summary.json")["stop"]["kind"] == "Completed");
}

TEST_CASE("reruns are byte-identical") {
  const auto a = testing::scratch_dir("det_a");
  const auto b = testing::scratch_dir("det_b");
  REQUIRE(cmd_run(config_in(kRun, a)) == kExitOk);
  REQUIRE(cmd_run(config_in(kRun, b)) == kExitOk);
  for (const char* f : {"snapshots.csv", "diagnostics.csv", "summary.json", "schema.md"})
    CHECK(testing::read_file(a / f) == testing::read_file(b / f));
}

TEST_CASE("invalid parameters exit with a validation error") {
  const auto dir = testing::scratch_dir("invalid");
  CHECK(cmd_run(config_in("[params]\ngamma = 1\n", dir)) == kExitConfig);
  const auto e = read_json(dir / "error.json");
  CHECK(e["error"] == "validation");
  bool named = false;
  for (const auto& v : e["violations"]) named = named || v["name"] == "gamma.upper";
  CHECK(named);
}

TEST_CASE("verify") {
  SUBCASE("empty corpus") {
    const auto dir = testing::scratch_dir("verify_empty");
    CHECK(cmd_verify(config_in("[verify]\ncorpus = 0\n", dir)) == kExitOk);
    CHECK(fs::file_size(dir / "inequalities.jsonl") == 0);
  }
  SUBCASE("small corpus passes with one line per report") {
    const auto dir = testing::scratch_dir("verify_small");
    CHECK(cmd_verify(config_in("[params]\neps = 0.05\n[verify]\ncorpus = 20\n", dir)) == kExitOk);
    CHECK(count_lines(dir / "inequalities.jsonl") == 20 * (5 * 3 + 2));
    std::ifstream in(dir / "inequalities.jsonl");
    std::string line;
    std::getline(in, line);
    const auto first = json::parse(line);
    CHECK(first["lemma"] == "L2");
    CHECK(first["pass"] == true);
    CHECK(read_json(dir / "summary.json")["failures"] == 0);
  }
  SUBCASE("shrunken constants fail") {
    const auto dir = testing::scratch_dir("verify_mutant");
    CHECK(cmd_verify(config_in("[verify]\ncorpus = 20\nconstant_scale = 0.1\n", dir)) == kExitFailure);
    CHECK(read_json(dir / "summary.json")["failures"].get<int>() > 0);
  }
}

TEST_CASE("continuation reports decreasing distances") {
  const auto dir = testing::scratch_dir("continuation");
  const char* text = R"(
[params]
eps = 0.2
[grid]
N = 48
[initial]
amplitude = 0.2
[run]
t_end = 0.004
[continuation]
eps = 0.2, 0.1, 0.05
interval = 0.001
)";
  REQUIRE(cmd_continuation(config_in(text, dir)) == kExitOk);
  const auto r = read_json(dir / "continuation.json");
  REQUIRE(r["distances"].size() == 2);
  CHECK(r["distances"][0].get<double>() > r["distances"][1].get<double>());
  CHECK(r["cauchy"] == true);
  CHECK(count_lines(dir / "index.csv") == 3);
}

TEST_CASE("steady residual ratio") {
  const auto dir = testing::scratch_dir("steady");
  REQUIRE(cmd_steady(config_in("[steady]\nsigma = 1.5\nN = 256, 512\n", dir)) == kExitOk);
  const auto r = read_json(dir / "steady.json");
  REQUIRE(r["results"].size() == 2);
  const double a = r["results"][0]["discrete_residual"];
  const double b = r["results"][1]["discrete_residual"];
  CHECK(a / b >= 3.5);
}

TEST_CASE("sweep") {
  SUBCASE("one cell reproduces a plain run") {
    const auto run_dir = testing::scratch_dir("sweep_run");
    const auto sweep_dir = testing::scratch_dir("sweep_one");
    REQUIRE(cmd_run(config_in(kRun, run_dir)) == kExitOk);
    REQUIRE(cmd_sweep(config_in(std::string(kRun) + "[sweep]\nparams.n = 2\n", sweep_dir)) == kExitOk);
    const auto cell = sweep_dir / "cell_0000";
    for (const char* f : {"snapshots.csv", "diagnostics.csv", "schema.md"})
      CHECK(testing::read_file(run_dir / f) == testing::read_file(cell / f));
    auto a = read_json(run_dir / "summary.json");
    auto b = read_json(cell / "summary.json");
    b["config"].erase("params.n");
    CHECK(a == b);
    CHECK(count_lines(sweep_dir / "index.csv") == 2);
  }
  SUBCASE("partial failures are recorded per cell") {
    const auto dir = testing::scratch_dir("sweep_partial");
    const std::string text = std::string(kRun) + "[sweep]\nparams.gamma = 0, 1\nworkers = 2\n";
    CHECK(cmd_sweep(config_in(text, dir)) == kExitFailure);
    const auto index = testing::read_file(dir / "index.csv");
    CHECK(index.find("cell_0000,0,ok,Completed") != std::string::npos);
    CHECK(index.find("cell_0001,1,invalid") != std::string::npos);
    CHECK(read_json(dir / "cell_0001" / "error.json")["error"] == "validation");
  }
}

#ifdef BECSIM_PATH
TEST_CASE("command-line entry point") {
  const auto dir = testing::scratch_dir("exe");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "bad.ini");
    out << "[params]\ngamma = 1\n";
  }
  {
    std::ofstream out(dir / "ok.ini");
    out << kRun;
  }
  const std::string exe = BECSIM_PATH;
  auto call = [&](const std::string& args) {
    const int status = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(call("run " + (dir / "ok.ini").string() + " --out " + (dir / "ok").string()) == 0);
  CHECK(fs::exists(dir / "ok" / "summary.json"));
  CHECK(call("run " + (dir / "bad.ini").string() + " --out " + (dir / "bad").string()) == 2);
  CHECK(read_json(dir / "bad" / "error.json")["violations"][0]["name"] == "gamma.upper");
  CHECK(call("run " + (dir / "missing.ini").string() + " --out " + (dir / "missing").string()) == 2);
  CHECK(call("explode " + (dir / "ok.ini").string()) == 2);
  CHECK(call("") == 2);
  CHECK(run_command("explode", RunConfig{}) == kExitConfig);
}
#endif
