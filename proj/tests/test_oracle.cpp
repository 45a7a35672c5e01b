#include "doctest.h"
#include "mcilp/oracle.hpp"
#include "mcilp/setops.hpp"

using namespace mcilp;

TEST_CASE("lattice enumeration") {
  CHECK(oracle::enumerate_lattice(Polyhedron::from_box(Box({0, 0}, {1, 1}))).size() == 4);
  auto e1 = oracle::enumerate_lattice(oracle::named_instance("E1").polyhedron());
  CHECK(e1.size() == 10);
  CHECK(std::is_sorted(e1.begin(), e1.end()));
  CHECK(oracle::enumerate_lattice(Polyhedron({{1}, {-1}}, {0, -1}, 1)).empty());
  CHECK(oracle::enumerate_lattice(Polyhedron({{2}, {-2}}, {1, 1}, 1)) == std::vector<IntVec>{{0}});
  CHECK_THROWS_AS(oracle::enumerate_lattice(Polyhedron::from_box(cube(3, 100))), TooLarge);
  CHECK_THROWS_AS(oracle::enumerate_lattice(Polyhedron({{1}}, {0}, 1)), UnboundedPolyhedron);
}

TEST_CASE("pareto filter") {
  CHECK(oracle::pareto_filter({{1, 1}, {2, 2}}) == std::vector<IntVec>{{1, 1}});
  CHECK(oracle::pareto_filter({{0, 3}, {1, 2}, {2, 1}, {3, 0}, {2, 2}}) ==
        std::vector<IntVec>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
  CHECK(oracle::pareto_filter({{2, 1}, {2, 1}, {1, 2}}) == std::vector<IntVec>{{1, 2}, {2, 1}});
  CHECK(oracle::pareto_filter({}).empty());
}

TEST_CASE("reference instances") {
  auto e1 = oracle::solve(oracle::named_instance("E1"));
  CHECK(e1.feasible.size() == 10);
  CHECK(e1.pareto == std::vector<IntVec>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
  CHECK(e1.strategies == e1.pareto);
  CHECK(e1.ideal == IntVec{0, 0});

  auto e2 = oracle::solve(oracle::named_instance("E2"));
  CHECK(e2.feasible.size() == 16);
  CHECK(e2.outcomes.size() == e2.feasible.size());
  CHECK(e2.pareto == std::vector<IntVec>{{0, 0}, {1, -1}, {2, -2}, {3, -3}});
  CHECK(e2.strategies == std::vector<IntVec>{{0, 0}, {0, 1}, {0, 2}, {0, 3}});
  CHECK(e2.ideal == IntVec{0, -3});

  auto e3 = oracle::solve(oracle::named_instance("E3"));
  CHECK(e3.pareto == std::vector<IntVec>{{2, 4}});
  CHECK(e3.strategies.size() == 3);
  CHECK(oracle::instance_names().size() == 3);
  CHECK_THROWS_AS(oracle::named_instance("E9"), ParseError);
}

TEST_CASE("exhaustive selection") {
  std::vector<IntVec> front{{0, 3}, {1, 2}, {2, 1}, {3, 0}};
  auto id = TermOrder::identity(2);
  auto a = oracle::nearest(front, PolyhedralNorm::linf(2), {0, 0}, id);
  CHECK(a.distance == 2);
  CHECK(a.point == IntVec{1, 2});
  auto q = oracle::nearest_q(front, Polynomial::power_sum(2, 2), {0, 0});
  CHECK(q.value == 5);
  CHECK(q.point == IntVec{1, 2});
  auto s = oracle::nearest(std::vector<IntVec>{{4, 4}}, PolyhedralNorm::l1(2), {0, 0}, id);
  CHECK(s.point == IntVec{4, 4});
  CHECK(s.distance == 8);
  CHECK(oracle::nearest_lp(front, 3, {0, 0}).value == 9);
  CHECK(oracle::rank(front, PolyhedralNorm::l1(2), {0, 0}, id).size() == 4);
  CHECK(oracle::minimize_linear(front, {1, -1}).point == IntVec{0, 3});
  CHECK_THROWS_AS(oracle::nearest({}, PolyhedralNorm::linf(2), {0, 0}, id), EmptySet);
}

TEST_CASE("expansion of encoded sets") {
  SRF g = union_of_boxes({Box({0, 0}, {1, 0}), Box({3, 2}, {3, 2})});
  CHECK(oracle::expand(g) == std::vector<IntVec>{{0, 0}, {1, 0}, {3, 2}});
  CHECK(oracle::expand(SRF(2)).empty());
  SRF twice = g + g;
  CHECK_THROWS_AS(oracle::expand(twice), ContractError);
  Polyhedron diagonal({{1, 0}, {-1, 0}, {1, -1}, {-1, 1}}, {2, 0, 0, 0}, 2);
  SRF strategies = specialize_coordinates(gf_of_polytope(diagonal), {1});
  CHECK(oracle::expand(strategies) == std::vector<IntVec>{{0}, {1}, {2}});
  SRF fibers = specialize_coordinates(gf_of_polytope(Polyhedron::from_box(Box({0, 0}, {2, 1}))), {1});
  CHECK_THROWS_AS(oracle::expand(fibers), ContractError);
  CHECK(specialize_count(fibers) == 6);
}
