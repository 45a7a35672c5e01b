#pragma once

// Hadamard products and Boolean combinations of generating functions that
// encode finite lattice-point sets.

#include <memory>
#include <vector>

#include "mcilp/genfunc.hpp"

namespace mcilp {

/// Coefficientwise product. Both inputs are oriented along one generic
/// direction first; each term pair becomes a small polytope in the parameter
/// space of the term with fewer binomials, cut down by the common support box.
SRF hadamard(const SRF& g1, const SRF& g2);

/// Same product for inputs already normalized along `lambda`.
SRF hadamard_normalized(const SRF& g1, const SRF& g2, const IntVec& lambda);

/// Encodes {(u, F u) : u in U, F u in V} for U encoded by gu and V by gv.
/// Equals the Hadamard product of the graph of F over U with g(U) * g(V),
/// computed pairwise in the parametrization of U's terms.
SRF pullback_intersection(const SRF& gu, const IntMat& f, const SRF& gv);

/// g restricted to the lattice points of a bounded polyhedron. Each oriented
/// term contributes the points of {mu >= 0 : A (c + D mu) <= b}, so the cost is
/// one small polytope per term rather than one per term pair.
SRF restrict_to_polytope(const SRF& g, const Polyhedron& p);
/// Sum of the coefficients of g on the lattice points of p.
Integer count_in_polytope(const SRF& g, const Polyhedron& p);
/// Same count without the boundedness test; p must be bounded.
Integer count_in_bounded_polytope(const SRF& g, const Polyhedron& p);

/// Set intersection (alias of the Hadamard product for 0/1 encodings).
SRF intersect(const SRF& g1, const SRF& g2);
/// g1 + g2 - g1 * g2
SRF set_union(const SRF& g1, const SRF& g2);
/// g1 - g1 * g2
SRF set_difference(const SRF& g1, const SRF& g2);
/// gf(universe) - g
SRF complement(const SRF& g, const Box& universe);
/// Balanced divide-and-conquer union.
SRF union_all(std::vector<SRF> sets);

/// Generating function of the lattice points of a box, built as a product of
/// one-dimensional intervals (2^d terms).
SRF box_gf(const Box& box);

/// Union of boxes as a sum of pairwise disjoint boxes (no Hadamard products).
SRF union_of_boxes(const std::vector<Box>& boxes);

/// Boolean expression over indexed input sets.
struct SetExpr {
  enum class Kind { Leaf, Union, Intersection, Difference, Complement };
  Kind kind = Kind::Leaf;
  std::size_t index = 0;
  std::vector<SetExpr> children;

  static SetExpr leaf(std::size_t i) { return SetExpr{Kind::Leaf, i, {}}; }
  static SetExpr unite(SetExpr a, SetExpr b) { return SetExpr{Kind::Union, 0, {std::move(a), std::move(b)}}; }
  static SetExpr meet(SetExpr a, SetExpr b) { return SetExpr{Kind::Intersection, 0, {std::move(a), std::move(b)}}; }
  static SetExpr minus(SetExpr a, SetExpr b) { return SetExpr{Kind::Difference, 0, {std::move(a), std::move(b)}}; }
  static SetExpr complement_of(SetExpr a) { return SetExpr{Kind::Complement, 0, {std::move(a)}}; }
};

/// Evaluates `expr` on the given sets. Every input's support box must lie in
/// `universe` (UniverseViolation otherwise).
SRF boolean_combine(const std::vector<SRF>& sets, const SetExpr& expr, const Box& universe);

}  // namespace mcilp
