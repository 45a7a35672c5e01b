#include <random>
#include <set>

#include "doctest.h"
#include "mcilp/setops.hpp"
#include "support.hpp"

using namespace mcilp;

namespace {

using PointSet = std::set<IntVec>;

SRF gf_of_points(const PointSet& pts, std::size_t dim) {
  SRF g(dim);
  for (const auto& p : pts) g = g + SRF::monomial(p);
  return g;
}

PointSet support_of(const SRF& g, const Box& window) {
  PointSet s;
  for (const auto& [pt, c] : testing::expand_window(g, window)) {
    CHECK(c == 1);
    s.insert(pt);
  }
  return s;
}

PointSet points_of(const Polyhedron& p, const Box& window) {
  auto v = testing::scan_points(p, window);
  return PointSet(v.begin(), v.end());
}

Polyhedron interval(Int lo, Int hi) { return Polyhedron({{1}, {-1}}, {hi, -lo}, 1); }

}  // namespace

TEST_CASE("hadamard of monomials") {
  CHECK(specialize_count(hadamard(SRF::monomial({2}), SRF::monomial({2}))) == 1);
  CHECK(hadamard(SRF::monomial({2}), SRF::monomial({3})).terms.empty());
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Int> c(-3, 3);
  for (int i = 0; i < 50; ++i) {
    IntVec a{c(rng), c(rng)}, b{c(rng), c(rng)};
    if (i % 5 == 0) b = a;
    CHECK(specialize_count(hadamard(SRF::monomial(a), SRF::monomial(b))) == (a == b ? 1 : 0));
  }
}

TEST_CASE("intersections of intervals and polygons") {
  SRF a = gf_of_polytope(interval(0, 3)), b = gf_of_polytope(interval(2, 5));
  SRF ab = intersect(a, b);
  CHECK(specialize_count(ab) == 2);
  CHECK(support_of(ab, Box({-3}, {8})) == PointSet{{2}, {3}});
  SRF sq = gf_of_polytope(Polyhedron::from_box(Box({0, 0}, {1, 1})));
  SRF tri = gf_of_polytope(Polyhedron({{-1, 0}, {0, -1}, {1, 1}}, {0, 0, 1}, 2));
  CHECK(specialize_count(intersect(sq, tri)) == 3);
  CHECK(intersect(sq, SRF(2)).terms.empty());
  CHECK(specialize_count(intersect(sq, sq)) == 4);
  CHECK_THROWS_AS(hadamard(a, sq), DimensionMismatch);
  CHECK_THROWS_AS(hadamard_normalized(a, b, {1}), NonNormalizedInput);
}

TEST_CASE("unions, differences and complements") {
  SRF a = gf_of_points({{0}, {1}, {2}}, 1), b = gf_of_points({{2}, {3}}, 1);
  CHECK(specialize_count(set_union(a, b)) == 4);
  CHECK(specialize_count(set_difference(a, b)) == 2);
  Box u({-1}, {4});
  CHECK(specialize_count(complement(a, u)) == 3);
  CHECK_THROWS_AS(complement(a, Box({1}, {4})), UniverseViolation);
  SRF x = gf_of_polytope(interval(0, 1));
  CHECK(support_of(shift(x, {2}), Box({-3}, {6})) == PointSet{{2}, {3}});
  CHECK(shift(x, {0}).terms == x.terms);
}

TEST_CASE("simplify") {
  SRF g = gf_of_polytope(interval(0, 3));
  CHECK(simplify(g + scaled(g, -1)).terms.empty());
  SRF half(1);
  half.terms.push_back(GFTerm{Rational(1, 2), {0}, {{1}}});
  half.terms.push_back(GFTerm{Rational(1, 2), {0}, {{1}}});
  SRF s = simplify(half);
  REQUIRE(s.terms.size() == 1);
  CHECK(abs(s.terms[0].coefficient) == 1);
  CHECK(specialize(s, {1}) == specialize(half, {1}));
}

TEST_CASE("disjoint box unions") {
  std::vector<Box> boxes{Box({0, 3}, {3, 3}), Box({1, 2}, {3, 3}), Box({2, 1}, {3, 3}), Box({3, 0}, {3, 3})};
  SRF u = union_of_boxes(boxes);
  CHECK(specialize_count(u) == 10);
  std::vector<SRF> parts;
  for (const auto& b : boxes) parts.push_back(box_gf(b));
  CHECK(specialize_count(union_all(parts)) == 10);
  CHECK(support_of(u, Box({-1, -1}, {4, 4})) == support_of(union_all(parts), Box({-1, -1}, {4, 4})));

  std::mt19937_64 rng(9);
  for (int it = 0; it < 30; ++it) {
    std::vector<Box> bs;
    PointSet want;
    std::uniform_int_distribution<Int> c(-3, 3);
    for (int j = 0; j < 1 + it % 5; ++j) {
      IntVec lo(3), hi(3);
      for (int i = 0; i < 3; ++i) {
        Int a = c(rng), b = c(rng);
        lo[i] = std::min(a, b);
        hi[i] = std::max(a, b);
      }
      bs.emplace_back(lo, hi);
      auto pts = testing::scan_points(Polyhedron::from_box(bs.back()), bs.back());
      want.insert(pts.begin(), pts.end());
    }
    CHECK(support_of(union_of_boxes(bs), cube(3, 4)) == want);
  }
}

TEST_CASE("products of box unions take the orthant path") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Int> c(-3, 3);
  auto random_union = [&](PointSet& pts) {
    std::vector<Box> bs;
    for (int j = 0; j < 3; ++j) {
      IntVec lo(3), hi(3);
      for (int i = 0; i < 3; ++i) {
        Int a = c(rng), b = c(rng);
        lo[i] = std::min(a, b);
        hi[i] = std::max(a, b);
      }
      bs.emplace_back(lo, hi);
      auto v = testing::scan_points(Polyhedron::from_box(bs.back()), bs.back());
      pts.insert(v.begin(), v.end());
    }
    return union_of_boxes(bs);
  };
  for (int it = 0; it < 25; ++it) {
    PointSet s1, s2, inter, diff;
    SRF u1 = random_union(s1), u2 = random_union(s2);
    for (const auto& v : s1)
      if (s2.count(v)) inter.insert(v);
      else diff.insert(v);
    CHECK(support_of(intersect(u1, u2), cube(3, 4)) == inter);
    CHECK(support_of(set_difference(u1, u2), cube(3, 4)) == diff);
    CHECK(specialize_count(intersect(u1, shift(u2, {1, 0, -1}))) ==
          specialize_count(intersect(shift(u1, {-1, 0, 1}), u2)));
  }
  // Mixed operands fall back to lattice-point counting.
  SRF tri = gf_of_polytope(Polyhedron({{-1, 0}, {0, -1}, {1, 1}}, {0, 0, 3}, 2));
  SRF sq = union_of_boxes({Box({1, 1}, {3, 3}), Box({0, 2}, {0, 2})});
  CHECK(specialize_count(intersect(tri, sq)) == 4);
}

TEST_CASE("random boolean combinations agree with set algebra") {
  std::mt19937_64 rng(2024);
  const Box universe = cube(2, 5);
  for (int it = 0; it < 60; ++it) {
    Polyhedron p1 = testing::random_polytope(rng, 2, 5, 1, 3);
    Polyhedron p2 = testing::random_polytope(rng, 2, 5, 1, 3);
    PointSet s1 = points_of(p1, universe), s2 = points_of(p2, universe);
    std::vector<SRF> sets{gf_of_polytope(p1), gf_of_polytope(p2)};
    using E = SetExpr;
    PointSet inter, uni = s1, diff, comp;
    for (const auto& v : s1)
      if (s2.count(v)) inter.insert(v);
      else diff.insert(v);
    uni.insert(s2.begin(), s2.end());
    for (const auto& v : testing::scan_points(Polyhedron::from_box(universe), universe))
      if (!uni.count(v)) comp.insert(v);
    switch (it % 4) {
      case 0:
        CHECK(specialize_count(boolean_combine(sets, E::meet(E::leaf(0), E::leaf(1)), universe)) == inter.size());
        break;
      case 1:
        CHECK(specialize_count(boolean_combine(sets, E::unite(E::leaf(0), E::leaf(1)), universe)) == uni.size());
        break;
      case 2:
        CHECK(specialize_count(boolean_combine(sets, E::minus(E::leaf(0), E::leaf(1)), universe)) == diff.size());
        break;
      default: {
        // De Morgan: U \ (S1 u S2) = (U \ S1) n (U \ S2)
        SRF lhs = boolean_combine(sets, E::complement_of(E::unite(E::leaf(0), E::leaf(1))), universe);
        SRF rhs = boolean_combine(sets, E::meet(E::complement_of(E::leaf(0)), E::complement_of(E::leaf(1))), universe);
        CHECK(specialize_count(lhs) == comp.size());
        CHECK(specialize_count(rhs) == comp.size());
      }
    }
    CHECK(specialize_count(intersect(sets[0], sets[1])) == specialize_count(intersect(sets[1], sets[0])));
    if (it < 10) CHECK(support_of(intersect(sets[0], sets[1]), universe) == inter);
  }
}
