#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(T1M_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliRun res;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string scene(const std::string& name) {
  return std::string(T1M_SCENE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("cli verify prop3 holds") {
  CliRun r = run_cli("verify prop3 --config " + scene("desitter_slant.scene") + " --samples 32");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"holds\": true") != std::string::npos);
}

TEST_CASE("cli classify emits byte-identical reports") {
  std::string args = "classify --config " + scene("desitter_nonslant.scene") + " --samples 48";
  CliRun a = run_cli(args);
  CliRun b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"config_hash\"") != std::string::npos);
}

TEST_CASE("cli rejects malformed expressions with exit 2") {
  CliRun r = run_cli("classify --config " + scene("bad_expr.scene"));
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("ParseError") != std::string::npos);
  CHECK(r.out.find("offset 5") != std::string::npos);
}

TEST_CASE("cli geodesic lift exits 3") {
  CliRun r = run_cli("classify --config " + scene("flat_geodesic_lift.scene") + " --samples 24");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("GeodesicLift") != std::string::npos);
}

TEST_CASE("cli sweep produces the csv table") {
  CliRun r = run_cli("sweep a 0.5:2.0:0.25 --config " + scene("thm8_flat.scene") +
                     " --format csv");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 8);
  CHECK(r.out.find("a,residual,holds") == 0);
  // every row sits on the zero locus kappa = 15a/64
  std::string body = r.out.substr(r.out.find('\n') + 1);
  size_t pos = 0;
  while ((pos = body.find('\n')) != std::string::npos) {
    std::string row = body.substr(0, pos);
    body = body.substr(pos + 1);
    CHECK(row.find(",1,") != std::string::npos);
  }
}

TEST_CASE("cli csv classify table") {
  CliRun r = run_cli("classify --config " + scene("desitter_nonslant.scene") +
                     " --samples 32 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("s,L,theta,", 0) == 0);
}

TEST_CASE("cli missing config exits 2") {
  CliRun r = run_cli("classify --config /nonexistent.scene");
  CHECK(r.exit_code == 2);
}
