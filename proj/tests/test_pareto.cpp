#include <random>
#include <set>

#include "doctest.h"
#include "mcilp/oracle.hpp"
#include "mcilp/pareto.hpp"
#include "mcilp/setops.hpp"
#include "support.hpp"

using namespace mcilp;

namespace {

const char* kE1 =
    "mcilp-problem v1\n"
    "n 2 m 5 k 2\n"
    "A\n-1 0\n1 0\n0 -1\n0 1\n-1 -1\n"
    "b\n0 3 0 3 -3\n"
    "F\n1 0\n0 1\n";

Problem single_point() { return Problem({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {2, -2, 2, -2}, {{1, 0}, {0, 1}}, 2); }

}  // namespace

TEST_CASE("problem text format") {
  Problem p = parse_problem(kE1);
  CHECK(p.n == 2);
  CHECK(p.m() == 5);
  CHECK(p.k() == 2);
  CHECK(p.b == IntVec{0, 3, 0, 3, -3});
  Problem again = parse_problem(format_problem(p));
  CHECK(again.a == p.a);
  CHECK(again.f == p.f);
  CHECK_THROWS_AS(parse_problem(std::string(kE1) + "extra"), ParseError);
  CHECK_THROWS_AS(parse_problem("mcilp-problem v2\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("mcilp-problem v1 n 2 m 1 k 1 A 1 0 b 1 F 1"), ParseError);
  CHECK_THROWS_AS(parse_problem("mcilp-problem v1 n 1 m 1 k 1 A 1 b 3 F 1"), UnboundedPolyhedron);
  CHECK_THROWS_AS(parse_problem("mcilp-problem v1 n 1 m 2 k 1 A 1 -1 b -1 0 F 1"), EmptyPolyhedron);
  CHECK_THROWS_AS(parse_problem("mcilp-problem v1 n 1 m 2 k 1 A 1 -1 b 1 0 F x"), ParseError);
}

TEST_CASE("E1 pipeline") {
  Problem p = oracle::named_instance("E1");
  CHECK(outcome_box(p) == Box({0, 0}, {3, 3}));
  SRF dom = dominated_gf(p);
  CHECK(specialize_count(dom) == 10);
  SRF par = pareto_from_dominated(dom);
  CHECK(specialize_count(par) == 4);
  CHECK(oracle::expand(par) == std::vector<IntVec>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
  SRF graph = graph_gf(p);
  CHECK(specialize_count(graph) == 10);
  auto s = strategies_gf(p, par);
  CHECK(specialize_count(s.spareto) == 4);
  CHECK(specialize_count(s.strategies) == 4);
  CHECK(oracle::expand(s.strategies) == std::vector<IntVec>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
  CHECK(ideal_point(p) == IntVec{0, 0});
  for (std::size_t i = 0; i < 2; ++i) {
    IntVec e(2, 0);
    e[i] = 1;
    CHECK(specialize_count(intersect(par, shift(dom, e))) == 0);
  }
}

TEST_CASE("many-to-one objectives") {
  Problem e2 = oracle::named_instance("E2");
  auto sol = oracle::solve(e2);
  ParetoHandles h = compute_handles(e2);
  CHECK(h.pareto_count == static_cast<long>(sol.pareto.size()));
  CHECK(h.strategy_count == static_cast<long>(sol.strategies.size()));
  CHECK(oracle::expand(h.pareto) == sol.pareto);
  CHECK(oracle::expand(h.strategies) == sol.strategies);
  CHECK(ideal_point(e2) == sol.ideal);

  Problem e3 = oracle::named_instance("E3");
  ParetoHandles h3 = compute_handles(e3);
  CHECK(h3.pareto_count == 1);
  CHECK(h3.strategy_count == 3);
  CHECK(h3.strategy_count > h3.pareto_count);
  CHECK(oracle::expand(h3.pareto) == std::vector<IntVec>{{2, 4}});
  CHECK(oracle::expand(h3.strategies) == std::vector<IntVec>{{0, 2}, {1, 1}, {2, 0}});
}

TEST_CASE("single feasible point") {
  Problem p = single_point();
  SRF graph = graph_gf(p);
  REQUIRE(graph.terms.size() == 1);
  CHECK(graph.terms[0].numerator == IntVec{2, 2, 2, 2});
  CHECK(graph.terms[0].denominators.empty());
  ParetoHandles h = compute_handles(p);
  CHECK(h.pareto_count == 1);
  CHECK(h.strategy_count == 1);
  CHECK(ideal_point(p) == IntVec{2, 2});
}

TEST_CASE("dominated set from the multi-epigraph") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    Problem p = testing::random_problem(rng, 1 + trial % 2, 1 + trial % 2, 2, 1);
    SRF dom = dominated_gf(p);
    SRF epi = dominated_gf_epigraph(p);
    std::set<IntVec> projected;
    for (const auto& uv : oracle::expand(epi)) {
      IntVec v(uv.begin() + static_cast<std::ptrdiff_t>(p.n), uv.end());
      if (outcome_box(p).contains(v)) projected.insert(v);
    }
    auto expanded = oracle::expand(dom);
    CHECK(std::vector<IntVec>(projected.begin(), projected.end()) == expanded);
  }
}

TEST_CASE("outcomes are enumerated once each") {
  Problem e2 = oracle::named_instance("E2");
  CHECK(distinct_outcomes(e2) == oracle::solve(e2).outcomes);
}

TEST_CASE("random problems agree with the oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 1 + trial % 3, k = 1 + (trial / 3) % 3;
    Problem p = testing::random_problem(rng, n, k);
    auto sol = oracle::solve(p);
    ParetoHandles h = compute_handles(p);
    CAPTURE(format_problem(p));
    CHECK(h.pareto_count == static_cast<long>(sol.pareto.size()));
    CHECK(h.strategy_count == static_cast<long>(sol.strategies.size()));
    CHECK(oracle::expand(h.pareto) == sol.pareto);
    CHECK(oracle::expand(h.strategies) == sol.strategies);
    CHECK(specialize_count(h.spareto) == h.strategy_count);
    CHECK(specialize_count(h.graph) == static_cast<long>(sol.feasible.size()));
    CHECK(ideal_point(p) == sol.ideal);
  }
}
