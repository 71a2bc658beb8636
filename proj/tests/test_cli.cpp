// End-to-end checks of the command-line tool: output schemas, exit codes,
// and byte-level determinism across repeated runs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(MJTORIC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string data(const std::string& name) {
  return std::string(MJTORIC_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("membership command") {
  RunResult r = run_cli("membership --input " + data("cusp.json") + " --m 3 --lambda 1/2");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("member") == true);
  CHECK(j.at("lambda") == "1/2");

  RunResult r2 = run_cli("membership --input " + data("cusp.json") + " --m 2 --lambda 1/2");
  CHECK(nlohmann::json::parse(r2.out).at("member") == false);
}

TEST_CASE("generators command with exactness certificate") {
  RunResult r = run_cli("generators --input " + data("cusp.json") +
                        " --lambda 0 --degree-bound 20");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("generators") == nlohmann::json::parse("[[2],[3]]"));
  CHECK(j.at("completeness") == "EXACT");
}

TEST_CASE("threshold and jumping commands") {
  RunResult r = run_cli("threshold --input " + data("smooth2.json") + " --m 0,0");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("threshold") == "5/6");
  CHECK(j.at("never_member") == false);

  RunResult rj = run_cli("jumping --input " + data("cusp.json") +
                         " --lambda 2 --degree-bound 20");
  auto jj = nlohmann::json::parse(rj.out);
  CHECK(jj.at("candidates") == nlohmann::json::parse(R"(["1/2","1","3/2","2"])"));
  CHECK(jj.at("completeness") == "EXACT");
}

TEST_CASE("algebra commands") {
  auto markov = nlohmann::json::parse(
      run_cli("markov --input " + data("ns345.json")).out);
  CHECK(markov.at("markov_basis") ==
        nlohmann::json::parse("[[1,-2,1],[3,-1,-1],[2,1,-2]]"));
  CHECK(markov.at("verified_generating") == true);

  auto logjac = nlohmann::json::parse(
      run_cli("log-jacobian --input " + data("cusp.json")).out);
  CHECK(logjac.at("log_jacobian") == nlohmann::json::parse("[[2],[3]]"));

  auto jac = nlohmann::json::parse(run_cli("jacobian --input " + data("quadric.json")).out);
  CHECK(jac.at("jacobian") == nlohmann::json::parse("[[1,0],[1,1],[1,2]]"));
  CHECK(jac.at("shift") == nlohmann::json::parse("[[-1,-1]]"));

  auto newton = nlohmann::json::parse(run_cli("newton --input " + data("smooth2.json")).out);
  CHECK(newton.at("facets").size() == 3);
}

TEST_CASE("verify command passes on every bundled problem") {
  for (const char* name : {"cusp.json", "cusp25.json", "ns345.json", "smooth2.json",
                           "quadric.json"}) {
    RunResult r = run_cli("verify --input " + data(name) + " --samples 60 --seed 7");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("all_pass") == true);
    for (const auto& c : j.at("checks")) CHECK(c.at("pass") == true);
  }
}

TEST_CASE("output bytes are deterministic") {
  const std::string invocations[] = {
      "verify --input " + data("quadric.json") + " --samples 40 --seed 11",
      "generators --input " + data("ns345.json") + " --lambda 5/6 --degree-bound 30",
      "markov --input " + data("cusp25.json")};
  for (const auto& inv : invocations) {
    RunResult a = run_cli(inv);
    RunResult b = run_cli(inv);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("text format renders one key per line") {
  RunResult r = run_cli("membership --input " + data("cusp.json") +
                        " --m 3 --lambda 1/2 --format text");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("member = true") != std::string::npos);
}

TEST_CASE("invalid input exits with code 1") {
  CHECK(run_cli("membership --input /nonexistent.json --m 1 --lambda 0").exit_code == 1);
  CHECK(run_cli("membership --input " + data("cusp.json") + " --lambda 1/2").exit_code ==
        1);  // missing --m
  CHECK(run_cli("membership --input " + data("cusp.json") + " --m 1 --lambda 1/2")
            .exit_code == 1);  // not in the semigroup
  CHECK(run_cli("membership --input " + data("cusp.json") + " --m 2 --lambda -1/2")
            .exit_code == 1);
}

TEST_CASE("exhausted budgets exit with code 2") {
  CHECK(run_cli("markov --input " + data("ns345.json") + " --spair-cap 1").exit_code == 2);
  CHECK(run_cli("verify --input " + data("smooth2.json") + " --refinement-cap 1")
            .exit_code == 2);
}
