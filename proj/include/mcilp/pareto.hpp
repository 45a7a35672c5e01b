#pragma once

// Multicriteria integer programs min {F u : A u <= b, u integer}: generating
// functions of the dominated outcome set, the Pareto optima and the Pareto
// strategies, plus exact counts.

#include <string>
#include <vector>

#include "mcilp/genfunc.hpp"

namespace mcilp {

struct Problem {
  IntMat a;
  IntVec b;
  IntMat f;  // k rows of length n
  std::size_t n = 0;

  /// Validates shapes, k >= 1, and that {u : A u <= b} is bounded and nonempty.
  Problem(IntMat a, IntVec b, IntMat f, std::size_t n);

  [[nodiscard]] std::size_t k() const { return f.size(); }
  [[nodiscard]] std::size_t m() const { return a.size(); }
  [[nodiscard]] Polyhedron polyhedron() const { return Polyhedron(a, b, n); }
  [[nodiscard]] IntVec outcome(std::span<const Int> u) const { return mat_vec(f, u); }
};

/// Parses the `mcilp-problem v1` text format; trailing garbage is rejected.
Problem parse_problem(const std::string& text);
std::string format_problem(const Problem& p);

/// Integer box [floor(min f_i), ceil(max f_i)] over the LP relaxation.
Box outcome_box(const Problem& p);

/// Distinct outcome vectors F u of feasible lattice points, in lex order,
/// produced by the bisection enumerator over slab-restricted lattice counts.
std::vector<IntVec> distinct_outcomes(const Problem& p);

/// V>= = {v in box : v >= F u for some feasible lattice u}, built as the union
/// of the truncated orthants [max(F u, lo), hi]. The box defaults to outcome_box.
SRF dominated_gf(const Problem& p, const std::optional<Box>& box = std::nullopt);

/// Lattice points (u, v) of the truncated multi-epigraph
/// {A u <= b, F u <= v <= hi}; V>= is its projection to v.
SRF dominated_gf_epigraph(const Problem& p);

/// V_Pareto = intersection over i of V>= \ (e_i + V>=).
SRF pareto_from_dominated(const SRF& dominated);
SRF pareto_gf(const Problem& p);

/// Number of Pareto optima.
Integer count_pareto(const Problem& p);

/// {(u, F u) : u feasible lattice point} over Z^{n+k}.
SRF graph_gf(const Problem& p);

struct StrategySets {
  SRF spareto;     // (strategy, optimum) pairs over Z^{n+k}
  SRF strategies;  // Pareto strategies over Z^n
};

/// g(S_Pareto) = (g(P; x) g(V_Pareto; z)) * g(P=; x, z), then z := 1.
StrategySets strategies_gf(const Problem& p, const SRF& pareto);

/// Componentwise minimum of each objective over feasible lattice points.
IntVec ideal_point(const Problem& p);

struct ParetoHandles {
  SRF dominated;
  SRF pareto;
  SRF graph;
  SRF spareto;
  SRF strategies;
  Box box;
  Integer pareto_count;
  Integer strategy_count;
};

ParetoHandles compute_handles(const Problem& p);

/// Largest absolute coordinate of any outcome, for enumeration bounds.
Int outcome_bound(const Problem& p);

}  // namespace mcilp
