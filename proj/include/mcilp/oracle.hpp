#pragma once

// Brute-force ground truth by explicit lattice enumeration. Every answer of
// the generating-function pipeline has an exhaustive counterpart here.

#include <string>
#include <vector>

#include "mcilp/enumerate.hpp"
#include "mcilp/pareto.hpp"
#include "mcilp/select.hpp"

namespace mcilp::oracle {

/// Largest bounding-box volume scanned.
inline constexpr Int kMaxPoints = 1'000'000;

/// Lattice points of a bounded polyhedron in lex order; throws TooLarge.
std::vector<IntVec> enumerate_lattice(const Polyhedron& p);

/// Nondominated vectors (componentwise <=, one strict), sorted, deduplicated.
std::vector<IntVec> pareto_filter(std::vector<IntVec> outcomes);

struct Solution {
  std::vector<IntVec> feasible;    // lex order
  std::vector<IntVec> outcomes;    // distinct, lex order
  std::vector<IntVec> pareto;      // lex order
  std::vector<IntVec> strategies;  // lex order
  IntVec ideal;
};

Solution solve(const Problem& p);

/// Points sorted by the term order.
std::vector<IntVec> sorted_by(std::vector<IntVec> points, const TermOrder& order);

/// Points whose last p coordinates are kept, deduplicated, sorted by the order.
std::vector<IntVec> projection(const std::vector<IntVec>& points, std::size_t p, const TermOrder& order);

/// Minimum distance, with the order-least minimizer.
Selection nearest(const std::vector<IntVec>& set, const PolyhedralNorm& q, const IntVec& vhat,
                  const TermOrder& order);

/// All points sorted by (distance, order).
std::vector<Selection> rank(const std::vector<IntVec>& set, const PolyhedralNorm& q, const IntVec& vhat,
                            const TermOrder& order);

struct QMin {
  IntVec point;
  Rational value;
};

/// argmin of q(v - vhat), lex-least among minimizers.
QMin nearest_q(const std::vector<IntVec>& set, const Polynomial& q, const IntVec& vhat);

/// argmin of sum |v_i - vhat_i|^p.
QMin nearest_lp(const std::vector<IntVec>& set, unsigned p, const IntVec& vhat);

/// Maximum of f over the set, lex-least maximizer.
QMin maximize(const std::vector<IntVec>& set, const Polynomial& f);

/// argmin of <c, v>, lex-least.
LinearMin minimize_linear(const std::vector<IntVec>& set, const IntVec& c);

/// Points of an encoded set found by scanning its support box.
std::vector<IntVec> expand(const SRF& g);

/// Reference instances E1, E2, E3 by name; throws ParseError otherwise.
Problem named_instance(const std::string& name);
std::vector<std::string> instance_names();

}  // namespace mcilp::oracle
