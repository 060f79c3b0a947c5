#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "rftrlp/graph.hpp"
#include "support.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Run run(const std::string& args) {
  const auto err_path = std::filesystem::temp_directory_path() / "rftrlp_cli_stderr.txt";
  const std::string cmd = std::string(RFTRLP_CLI_PATH) + " " + args + " 2>" + err_path.string();
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  return r;
}

std::string fixture(const std::string& name) { return support::fixture_path(name).string(); }

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rftrlp_cli_" + name);
}

}  // namespace

TEST_SUITE("command line") {
  TEST_CASE("solve then check the reported set") {
    for (const char* method : {"fb", "cb", "it"}) {
      const auto solved = run("solve -i " + fixture("two_triangles.json") + " --method " + method);
      REQUIRE(solved.code == 0);
      const auto chosen = nlohmann::json::parse(solved.out)["solution"]["chosen"];
      std::string list;
      for (const auto& v : chosen) list += (list.empty() ? "" : ",") + std::to_string(v.get<int>());
      const auto check = run("oracle -i " + fixture("two_triangles.json") + " --check " + list);
      CHECK(check.code == 0);
      CHECK(nlohmann::json::parse(check.out)["feasible"] == true);
    }
  }

  TEST_CASE("gen is reproducible") {
    const auto a = scratch("gen_a.json"), b = scratch("gen_b.json");
    REQUIRE(run("gen --n 8 --dens 0.6 --scenarios 3 --seed 7 -o " + a.string()).code == 0);
    REQUIRE(run("gen --n 8 --dens 0.6 --scenarios 3 --seed 7 -o " + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
  }

  TEST_CASE("validate rejects a path graph") {
    const auto r = run("validate -i " + fixture("path4.json"));
    CHECK(r.code == 1);
    const auto err = nlohmann::json::parse(r.err.substr(0, r.err.find('\n')));
    CHECK(err["error"] == "connectivity");
    CHECK(err["message"].get<std::string>().find("2-edge-connected") != std::string::npos);
    CHECK(run("validate -i " + fixture("cycle4.json")).code == 0);
  }

  TEST_CASE("infeasible solve exits 1") {
    CHECK(run("solve -i " + fixture("cycle5.json")).code == 1);
    CHECK(run("oracle -i " + fixture("cycle5.json")).code == 1);
  }

  TEST_CASE("usage errors exit 2 with a machine-readable line") {
    const auto r = run("solve --method simplex -i " + fixture("cycle4.json"));
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.err.substr(0, r.err.find('\n')))["error"] == "usage");
    CHECK(run("").code == 2);
  }

  TEST_CASE("missing files exit 1") {
    const auto r = run("solve -i /nonexistent/instance.json");
    CHECK(r.code == 1);
    CHECK_FALSE(r.err.empty());
  }

  TEST_CASE("transform with a failed edge") {
    const auto r = run("transform -i " + fixture("cycle4.json") + " --fail 1,2");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["m_edges"].size() == 3);
    CHECK(doc["failed_edges"].size() == 1);
  }

  TEST_CASE("LP export writes a file") {
    const auto lp = scratch("model.lp");
    REQUIRE(run("solve -i " + fixture("cycle4.json") + " --export-lp " + lp.string() + " -o " +
                scratch("sol.json").string())
                .code == 0);
    CHECK(slurp(lp).find("Subject To") != std::string::npos);
  }

  TEST_CASE("bench then profile") {
    const auto dir = scratch("bench_dir");
    std::filesystem::remove_all(dir);
    const auto spec = scratch("spec.json");
    std::ofstream(spec) << R"({"methods": ["fb", "cb"], "time_limit": 30,
      "batches": [{"flavor": "gen2", "n": 6, "dens": 0.6, "scenarios": 2, "count": 2}]})";
    REQUIRE(run("bench --spec " + spec.string() + " -o " + dir.string()).code == 0);
    const auto profile = scratch("profile.csv");
    REQUIRE(run("profile -i " + dir.string() + " -o " + profile.string()).code == 0);
    CHECK(slurp(profile).rfind("method,tau,k\n", 0) == 0);
    std::filesystem::remove_all(dir);
  }
}
