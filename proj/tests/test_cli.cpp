#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mcilp/cli.hpp"
#include "support.hpp"

using namespace mcilp;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("mcilp_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("reference outputs on E1") {
  CHECK(run({"count", "E1"}).out == "pareto: 4\nstrategies: 4\n");
  CHECK(run({"enumerate", "E1"}).out == "0 3\n1 2\n2 1\n3 0\n");
  CHECK(run({"nearest", "E1", "--norm", "linf", "--point", "0 0"}).out == "point: 1 2\ndistance: 2\n");
  CHECK(run({"ideal", "E1"}).out == "ideal: 0 0\n");
  CHECK(run({"enumerate", "E1", "--limit", "2"}).out == "0 3\n1 2\n");
  CHECK(run({"rank", "E1", "--norm", "linf", "--point", "0 0", "--limit", "2"}).out == "1 2 ; 2\n2 1 ; 2\n");
}

TEST_CASE("problem files and named instances agree") {
  auto p = oracle::named_instance("E3");
  auto path = temp_file("e3.prob", format_problem(p));
  CHECK(run({"count", path}).out == run({"count", "E3"}).out);
  CHECK(run({"count", "E3"}).out == "pareto: 1\nstrategies: 3\n");
}

TEST_CASE("every command matches its oracle mirror") {
  for (const std::string e : {"E1", "E2", "E3"}) {
    CAPTURE(e);
    CHECK(run({"count", e}).out == run({"oracle", "count", e}).out);
    CHECK(run({"enumerate", e}).out == run({"oracle", "enumerate", e}).out);
    CHECK(run({"enumerate", e, "--project", "1"}).out == run({"oracle", "enumerate", e, "--project", "1"}).out);
    CHECK(run({"ideal", e}).out == run({"oracle", "ideal", e}).out);
    for (const std::string norm : {"linf", "l1"}) {
      CHECK(run({"nearest", e, "--norm", norm, "--point", "0 0"}).out ==
            run({"oracle", "nearest", e, "--norm", norm, "--point", "0 0"}).out);
      CHECK(run({"rank", e, "--norm", norm, "--point", "1 -1"}).out ==
            run({"oracle", "rank", e, "--norm", norm, "--point", "1 -1"}).out);
    }
  }
}

TEST_CASE("generating function output decodes to the oracle sets") {
  for (const std::string e : {"E1", "E2", "E3"}) {
    CAPTURE(e);
    for (const std::string which : {"pareto", "strategies", "dominated"}) {
      CAPTURE(which);
      Run r = run({"gf", e, "--which", which});
      REQUIRE(r.code == 0);
      std::string expected;
      for (const auto& v : oracle::expand(parse_srf(r.out))) expected += to_string(v) + "\n";
      CHECK(expected == run({"oracle", "gf", e, "--which", which}).out);
    }
  }
}

TEST_CASE("order files") {
  auto path = temp_file("order.txt", "0 1\n1 0\n");
  CHECK(run({"enumerate", "E1", "--order", path}).out == "3 0\n2 1\n1 2\n0 3\n");
  CHECK(run({"nearest", "E1", "--norm", "linf", "--point", "0 0", "--order", path}).out ==
        "point: 2 1\ndistance: 2\n");
  auto bad = temp_file("bad_order.txt", "1 0\n1 0\n");
  CHECK(run({"enumerate", "E1", "--order", bad}).code == 4);
  auto garbage = temp_file("garbage_order.txt", "1 x\n0 1\n");
  CHECK(run({"enumerate", "E1", "--order", garbage}).code == 2);
}

TEST_CASE("fptas reports a certificate") {
  Run r = run({"fptas", "E1", "--pseudo", "pseudo 2 sum2 7/10 1", "--point", "0 0", "--eps", "1/10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("point: 1 2\nqvalue: 5\ndistance: [2.236", 0) == 0);
  CHECK(r.out.find("certificate: gamma=2 delta=20/7 s=") != std::string::npos);
  Run o = run({"oracle", "fptas", "E1", "--pseudo", "pseudo 2 sum2 7/10 1", "--point", "0 0"});
  CHECK(o.out == "point: 1 2\nqvalue: 5\n");
  Run lp = run({"fptas", "E1", "--pseudo", "lp-odd 3", "--point", "0 0", "--eps", "1/2"});
  CHECK(lp.code == 0);
  CHECK(lp.out.find("qvalue: 9\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  SUBCASE("parse errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"count"}).code == 2);
    CHECK(run({"count", "/nonexistent/file.prob"}).code == 2);
    CHECK(run({"count", temp_file("junk.prob", "mcilp-problem v1\nn two\n")}).code == 2);
    CHECK(run({"nearest", "E1", "--norm", "linf", "--point", "0 zero"}).code == 2);
    CHECK(run({"nearest", "E1", "--norm", "linf", "--point", "0"}).code == 2);
    CHECK(run({"gf", "E1", "--which", "everything"}).code == 2);
    CHECK(run({"fptas", "E1", "--pseudo", "pseudo 2 sum2 7/10 1", "--point", "0 0", "--eps", "a/b"}).code == 2);
  }
  SUBCASE("infeasible") {
    auto path = temp_file("empty.prob", "mcilp-problem v1\nn 1 m 2 k 1\nA\n1\n-1\nb\n0 -1\nF\n1\n");
    Run r = run({"count", path});
    CHECK(r.code == 3);
    CHECK_FALSE(r.err.empty());
    CHECK(r.out.empty());
  }
  SUBCASE("contract violations") {
    auto unbounded = temp_file("unbounded.prob", "mcilp-problem v1\nn 1 m 1 k 1\nA\n1\nb\n0\nF\n1\n");
    CHECK(run({"count", unbounded}).code == 4);
    CHECK(run({"nearest", "E1", "--norm", "poly-ineq 2 2 1 0 0 1 1 1", "--point", "0 0"}).code == 4);
    CHECK(run({"nearest", "E1", "--norm", "pseudo 2 sum2 1/2 1", "--point", "0 0"}).code == 4);
    CHECK(run({"fptas", "E1", "--pseudo", "linf", "--point", "0 0"}).code == 4);
    CHECK(run({"fptas", "E1", "--pseudo", "pseudo 2 sum2 7/10 1", "--point", "0 0", "--eps", "3/2"}).code == 4);
  }
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::vector<std::string>> commands = {
      {"count", "E2"},
      {"gf", "E1", "--which", "strategies"},
      {"gf", "E3", "--which", "dominated"},
      {"enumerate", "E2"},
      {"nearest", "E2", "--norm", "l1", "--point", "1 1"},
      {"rank", "E3", "--norm", "linf", "--point", "0 0"},
      {"fptas", "E2", "--pseudo", "pseudo 4 sum4 7/10 1", "--point", "0 0", "--eps", "1/2"},
      {"ideal", "E2"},
      {"oracle", "count", "E2"},
  };
  for (const auto& c : commands) {
    Run first = run(c);
    CHECK(first.code == 0);
    for (int i = 0; i < 2; ++i) {
      Run again = run(c);
      CHECK(again.out == first.out);
      CHECK(again.code == first.code);
    }
  }
}
