#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "helpers.hpp"
#include "steiner/bench_io.hpp"

using namespace steiner;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "steiner");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

// Splits an echoed command line, honouring single quotes.
std::vector<std::string> shell_split(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  for (char ch : text) {
    if (ch == '\'') {
      quoted = !quoted;
      any = true;
    } else if (ch == ' ' && !quoted) {
      if (any) out.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += ch;
      any = true;
    }
  }
  if (any) out.push_back(cur);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "steiner_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("solve on a two-pin net") {
  const auto r = invoke({"solve", testing::fixture("two_pin.net"), "--pop", "10", "--iters", "10"});
  REQUIRE(r.code == cli::kOk);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 2);
  CHECK(out[0].rfind("net two pins 2 length 4.828", 0) == 0);
  CHECK(out[1].rfind("particle 1 2 ", 0) == 0);
  CHECK(r.err.rfind("# steiner solve", 0) == 0);

  const auto rect = invoke({"solve", testing::fixture("two_pin.net"), "--mode", "rect", "--pop",
                            "10", "--iters", "10"});
  CHECK(lines(rect.out)[0].find("length 6.0000") != std::string::npos);
}

TEST_CASE("solve writes JSON results") {
  const auto path = scratch("solve.json");
  const auto r = invoke({"solve", testing::fixture("table1.net"), "--pop", "10", "--iters", "20",
                         "--out", path.string()});
  REQUIRE(r.code == cli::kOk);
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["results"].size() == 1);
  CHECK(doc["results"][0]["history"].size() == 21);
  CHECK(doc["config"]["population"] == 10);
}

TEST_CASE("echoed command reproduces the output") {
  const auto first = invoke({"solve", testing::fixture("table1.net"), "--pop", "12", "--iters",
                             "30", "--seed", "77", "--stages", "CM6", "--choices", "0123"});
  REQUIRE(first.code == cli::kOk);
  const std::string echo = lines(first.err).front();
  REQUIRE(echo.rfind("# steiner ", 0) == 0);
  auto args = shell_split(echo.substr(10));
  const auto second = invoke(args);
  CHECK(second.code == cli::kOk);
  CHECK(second.out == first.out);
}

TEST_CASE("STEINER_SEED sets the default seed") {
  const auto base = invoke({"solve", testing::fixture("table1.net"), "--pop", "8", "--iters", "15",
                            "--seed", "5"});
  ::setenv("STEINER_SEED", "5", 1);
  const auto env = invoke({"solve", testing::fixture("table1.net"), "--pop", "8", "--iters", "15"});
  ::setenv("STEINER_SEED", "nope", 1);
  const auto bad = invoke({"solve", testing::fixture("table1.net")});
  ::unsetenv("STEINER_SEED");
  CHECK(env.out == base.out);
  CHECK(bad.code == cli::kInputError);
}

TEST_CASE("sweep produces one row per stage plan") {
  const auto nets = scratch("sweep.net");
  REQUIRE(invoke({"gen", "--sizes", "6", "--per-size", "1", "--range", "0,20", "--seed", "3",
                  "--out", nets.string()})
              .code == cli::kOk);
  const auto r = invoke({"sweep", nets.string(), "--depth", "2", "--pop", "8", "--iters", "8"});
  REQUIRE(r.code == cli::kOk);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 5);
  CHECK(out[1].rfind("CM1,", 0) == 0);
  CHECK(out[4].rfind("CM4,", 0) == 0);

  const auto r3 = invoke({"sweep", nets.string(), "--depth", "3", "--pop", "8", "--iters", "8"});
  CHECK(lines(r3.out).size() == 9);
}

TEST_CASE("ablate and batch reports") {
  const auto csv = scratch("ablate.csv");
  const auto r = invoke({"ablate", testing::fixture("table1.net"), "--pop", "8", "--iters", "10",
                         "--config", "R mode=rect", "--config", "X mode=x stages=PS k=1",
                         "--config", "X2 choices=01", "--baseline", "R", "--csv", csv.string()});
  REQUIRE(r.code == cli::kOk);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 4);
  CHECK(out[1].rfind("R,0.0000,", 0) == 0);
  std::ifstream in(csv);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(lines(text).size() == 1 + 1 + 3);

  const auto b = invoke({"batch", testing::fixture("table1.net"), "--pop", "8", "--iters", "10",
                         "--repeats", "3"});
  REQUIRE(b.code == cli::kOk);
  CHECK(lines(b.out).size() == 2);

  CHECK(invoke({"ablate", testing::fixture("table1.net"), "--config", "A", "--baseline", "B"}).code ==
        cli::kInputError);
  CHECK(invoke({"ablate", testing::fixture("table1.net"), "--config", "A bogus=1"}).code ==
        cli::kInputError);
}

TEST_CASE("oracle on the unit square") {
  const auto r = invoke({"oracle", testing::fixture("unit_square.net"), "--exact-rsmt",
                         "--best-in-space", "--mst"});
  REQUIRE(r.code == cli::kOk);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 1);
  CHECK(out[0].find("exact_rsmt 3.0000") != std::string::npos);
  CHECK(out[0].find("best_in_space 3.0000") != std::string::npos);
  CHECK(out[0].find("mst_manhattan 3.0000") != std::string::npos);
  CHECK(invoke({"oracle", testing::fixture("table1.net")}).code == cli::kInputError);
}

TEST_CASE("render writes SVG") {
  const auto r = invoke({"render", testing::fixture("table1.net"), "--particle",
                         "7 6 0 6 4 1 7 5 1 5 1 2 1 3 0 1 8 1 5 2 2 10.0100"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("<svg") != std::string::npos);
  const auto solved = invoke({"render", testing::fixture("table1.net"), "--pop", "8", "--iters", "5"});
  CHECK(solved.code == cli::kOk);
  CHECK(invoke({"render", testing::fixture("table1.net"), "--particle", "1 2 0 2 1 0 0.5"}).code ==
        cli::kInputError);
  CHECK(invoke({"render", testing::fixture("table1.net"), "--net", "nope"}).code ==
        cli::kInputError);
}

TEST_CASE("gen is deterministic") {
  const auto a = invoke({"gen", "--sizes", "5,7", "--per-size", "2", "--seed", "9"});
  const auto b = invoke({"gen", "--sizes", "5,7", "--per-size", "2", "--seed", "9"});
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(parse_netfile(a.out).nets.size() == 4);
  CHECK(invoke({"gen", "--sizes", "5,x"}).code == cli::kInputError);
  CHECK(invoke({"gen", "--range", "5"}).code == cli::kInputError);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"solve"}).code == cli::kUsage);
  CHECK(invoke({"--help"}).code == cli::kOk);
  CHECK(invoke({"solve", testing::fixture("missing.net")}).code == cli::kInputError);
  CHECK(invoke({"solve", testing::fixture("table1.net"), "--mode", "hex"}).code == cli::kInputError);
  CHECK(invoke({"solve", testing::fixture("table1.net"), "--pop", "1"}).code == cli::kInputError);
  CHECK(invoke({"solve", testing::fixture("table1.net"), "--stages", "CM99"}).code ==
        cli::kInputError);
}
