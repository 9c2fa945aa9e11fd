#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"
#include "tricount/cli.hpp"
#include "tricount/oracle.hpp"
#include "tricount/stream.hpp"

using namespace tricount;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tricount_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text = "") const {
    const auto p = path / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }
};

int exit_status(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("gen then oracle") {
  TempDir dir;
  const std::string s = dir.file("s.el");
  REQUIRE(run({"gen", "--kind", "quantum-hard", "--T", "6", "--noise", "48", "--seed", "7", "-o", s}).code == 0);
  const EdgeStream stream = read_stream_file(s);
  CHECK(stream.m() == 66);

  const Result r = run({"oracle", s, "--k", "4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["T"] == 6);
  CHECK(j["T_less_k"].get<double>() == triangle_stats(stream, 4.0).t_less_k);

  std::ifstream in(s);
  std::string first;
  std::string second;
  std::getline(in, first);
  std::getline(in, second);
  CHECK(first == "# n=61 m=66");
  CHECK(second == "# truth T=6 deltaE=1 deltaV=6");

  const Result csv = run({"oracle", s, "--k", "4", "--format", "csv"});
  CHECK(csv.out.rfind("T,deltaE,deltaV,k,T_less_k,T_greater_k\n6,1,6,4,", 0) == 0);
}

TEST_CASE("gen writes to stdout by default") {
  const Result r = run({"gen", "--kind", "classical-hard", "--hubs", "2", "--spokes", "4", "--tris", "2"});
  CHECK(r.code == 0);
  CHECK(parse_stream(r.out).m() == 12);
  CHECK(r.out.find("# truth T=4 deltaE=1 deltaV=2") != std::string::npos);
  CHECK(run({"gen", "--kind", "random", "--n", "10", "--m", "46"}).code == kExitUsage);
}

TEST_CASE("exact mode returns the oracle count") {
  TempDir dir;
  const std::string s = dir.file("s.el");
  run({"gen", "--kind", "classical-hard", "--hubs", "4", "--spokes", "6", "--tris", "3", "-o", s});
  const Result r = run({"estimate", s, "--mode", "exact"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["estimate"].get<double>() == 12.0);
  CHECK(j["mode"] == "exact");
}

TEST_CASE("estimate is reproducible and seed-sensitive") {
  TempDir dir;
  const std::string s = dir.file("s.el", "0 1\n0 2\n2 3\n1 2\n1 3\n");
  const std::vector<std::string> args{"estimate", s, "--seed", "11", "--groups", "3", "--copies", "500"};
  const Result a = run(args);
  const Result b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other[3] = "12";
  CHECK(run(other).out != a.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["q_copies"] == 500);
  CHECK(j["c_copies"] == 500);
  CHECK(j["groups"] == 3);
  CHECK(j["bounds"] == "oracle");
}

TEST_CASE("estimate writes traces") {
  TempDir dir;
  const std::string s = dir.file("s.el", "0 1\n0 2\n1 2\n");
  const std::string prefix = (dir.path / "tr").string();
  REQUIRE(run({"estimate", s, "--copies", "5", "--groups", "1", "--trace", prefix}).code == 0);
  CHECK(fs::exists(prefix + ".quantum.csv"));
  CHECK(fs::exists(prefix + ".classical.csv"));
}

TEST_CASE("experiment CSV") {
  TempDir dir;
  const std::string s = dir.file("s.el", "0 1\n0 2\n1 2\n");
  const std::vector<std::string> args{"experiment", s, "--trials", "4", "--copies", "200", "--groups", "3",
                                      "--seed", "1"};
  const Result a = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == run(args).out);
  std::istringstream in(a.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "trial,seed,k,estimate,q_part,c_part,abs_err,rel_err");
  int rows = 0;
  while (std::getline(in, line) && line[0] != '#') ++rows;
  CHECK(rows == 4);
  CHECK(line.rfind("# summary mode=hybrid trials=4 ", 0) == 0);
  CHECK(line.find("success_rate=") != std::string::npos);
}

TEST_CASE("usage and input errors exit 2") {
  TempDir dir;
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"oracle", dir.file("none.el"), "--k", "2"}).code == kExitUsage);
  const std::string s = dir.file("s.el", "0 1\n0 2\n1 2\n");
  CHECK(run({"oracle", s}).code == kExitUsage);
  CHECK(run({"oracle", s, "--k", "0.5"}).code == kExitUsage);
  CHECK(run({"estimate", s, "--bogus"}).code == kExitUsage);
  CHECK(run({"estimate", s, "--epsilon", "2"}).code == kExitUsage);
  CHECK(run({"estimate", s, "--mode", "psychic"}).code == kExitUsage);
  CHECK(run({"oracle", dir.file("dup.el", "0 1\n1 2\n1 0\n"), "--k", "2"}).code == kExitUsage);
  CHECK(run({"oracle", dir.file("loop.el", "0 1\n3 3\n"), "--k", "2"}).code == kExitUsage);
  CHECK(run({"oracle", dir.file("bad.el", "0 1\nx y\n"), "--k", "2"}).code == kExitUsage);

  const Result r = run({"oracle", dir.file("dup2.el", "0 1\n1 0\n"), "--k", "2"});
  CHECK(r.err.find("duplicate") != std::string::npos);
}

TEST_CASE("subprocess exit codes") {
  TempDir dir;
  const std::string exe = TRICOUNT_EXE;
  const std::string quiet = " >/dev/null 2>&1";
  const std::string good = dir.file("good.el", "0 1\n0 2\n1 2\n");
  CHECK(exit_status(exe + " oracle " + good + " --k 2" + quiet) == 0);
  CHECK(exit_status(exe + " oracle " + dir.file("dup.el", "0 1\n1 0\n") + " --k 2" + quiet) == 2);
  CHECK(exit_status(exe + " oracle " + dir.file("loop.el", "3 3\n") + " --k 2" + quiet) == 2);
  CHECK(exit_status(exe + " oracle " + good + " --nope" + quiet) == 2);
  CHECK(exit_status(exe + " estimate " + (dir.path / "missing.el").string() + quiet) == 2);
}
