#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef ALUSAFE_CLI
#error "ALUSAFE_CLI must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(ALUSAFE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("analyze exit codes follow the verdicts") {
  CHECK(run("analyze --op mul --op add3 --width 8").exit_code == 0);
  CHECK(run("analyze --op div_classical --width 8").exit_code == 1);
  CHECK(run("analyze --op mul --op add2 --width 4").exit_code == 1);
  CHECK(run("analyze --op nosuch --width 4").exit_code == 2);
  CHECK(run("analyze --op mul").exit_code == 2);  // width needed for builtins
  CHECK(run("analyze").exit_code == 2);
}

TEST_CASE("analyze emits parseable reports") {
  RunResult r = run("analyze --op div_classical --width 8 --format json");
  CHECK(r.exit_code == 1);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j[0]["verdict"] == "UNSAFE");
  CHECK(j[0]["condition_odd"]["violating_tuple"] == nlohmann::json({1, 3}));
  CHECK(j[0]["condition_odd"]["output"] == 0);
  CHECK(j[0]["coverage"]["mode"] == "exhaustive");
}

TEST_CASE("patch then analyze round trip") {
  auto dir = std::filesystem::temp_directory_path();
  auto patched = (dir / "cli_safe_div.json").string();
  RunResult p = run("patch --op div_classical --width 4 --out-op " + patched + " --format json");
  CHECK(p.exit_code == 0);
  auto pj = nlohmann::json::parse(p.out);
  CHECK(pj["changed_entries"] == 33);
  CHECK(pj["zero_point_changed"] == false);

  CHECK(run("analyze --op " + patched).exit_code == 0);

  RunResult zero_delta = run("patch --op mul --width 4 --out-op " + patched + " --format json");
  CHECK(nlohmann::json::parse(zero_delta.out)["changed_entries"] == 0);

  RunResult a2 = run("patch --op add2 --width 2 --out-op " + patched + " --format json");
  CHECK(nlohmann::json::parse(a2.out)["changed_entries"] == 4);
  std::filesystem::remove(patched);
}

TEST_CASE("witness command") {
  RunResult r = run("witness --op div_classical --width 4 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["claimed_constant"] == 0);
  CHECK(j["verification"]["verified"] == true);
  CHECK(j["verification"]["mode"] == "exhaustive");
  CHECK(j["verification"]["inputs_checked"] == 16);

  CHECK(run("witness --op mul --width 4").exit_code == 1);
  CHECK(run("witness --op add2 --width 2").exit_code == 0);
}

TEST_CASE("closure command reports sizes and dumps deterministically") {
  RunResult r = run("closure --ops mul,add3 --width 3 --vars 1");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["size"] == 64);
  CHECK(j["contains_constant"] == false);
  CHECK(j["valid"] == true);

  auto dir = std::filesystem::temp_directory_path();
  auto d1 = (dir / "cli_dump1.txt").string(), d2 = (dir / "cli_dump2.txt").string();
  run("closure --ops mul,add2 --width 2 --vars 1 --dump " + d1);
  run("closure --ops mul,add2 --width 2 --vars 1 --dump " + d2);
  std::ifstream f1(d1), f2(d2);
  std::string s1((std::istreambuf_iterator<char>(f1)), {});
  std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);
  CHECK(!s1.empty());
  std::filesystem::remove(d1);
  std::filesystem::remove(d2);

  RunResult csv = run("closure --ops mul,add3 --width 3 --vars 1 --format csv");
  CHECK(csv.out.find("mul+add3,3,1,projections,64,") != std::string::npos);
}

TEST_CASE("count command") {
  RunResult r = run("count --width 2 --arity 2 --conditions i,ii");
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["analytic"] == 67108864);
  CHECK(j["brute"] == "skipped");

  RunResult rb = run("count --width 1 --arity 2 --conditions i,ii --brute --format csv");
  CHECK(rb.out.find("1,2,i+ii,2,4,4") != std::string::npos);

  CHECK(run("count --width 2 --arity 2 --conditions i,iv").exit_code == 2);
}

TEST_CASE("search command") {
  RunResult empty = run("search --ops mul,add3 --width 2 --vars 2 --max-nodes 9");
  CHECK(empty.exit_code == 0);
  CHECK(empty.out.find("no constant formulas found") != std::string::npos);

  RunResult found = run("search --ops mul,add2 --width 2 --vars 1 --until-closure --format json");
  auto j = nlohmann::json::parse(found.out);
  CHECK(j["findings"].size() > 0);
  CHECK(j["complete"] == true);
}

TEST_CASE("identical invocations produce byte-identical output") {
  for (const char* cmd : {"analyze --op div_classical --op safe_div --width 8 --format json",
                          "closure --ops mul,add3 --width 2 --vars 2",
                          "count --width 2 --arity 2 --conditions i,ii,iii",
                          "search --ops mul,add3 --width 2 --vars 2 --max-nodes 7 --format json"}) {
    RunResult a = run(cmd), b = run(cmd);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
  }
}

TEST_CASE("operator files resolve in place of builtin names") {
  auto dir = std::filesystem::temp_directory_path();
  auto path = (dir / "cli_add3w2.json").string();
  run("patch --op add3 --width 2 --out-op " + path);  // writes a dense add3 (already safe)
  RunResult r = run("closure --ops mul," + path + " --width 2 --vars 2");
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["size"] == 8192);
  std::filesystem::remove(path);
}
