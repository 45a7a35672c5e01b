#pragma once

// Short rational generating functions
//
//   g(x) = sum_i  gamma_i * x^{c_i} / prod_j (1 - x^{d_ij})
//
// encoding finite sets of lattice points. Construction follows Brion's theorem
// on the vertex cones of a polytope, a pulling triangulation of non-simplicial
// cones, Barvinok's signed decomposition into unimodular cones, and half-open
// cones selected by a generic interior direction so that lower-dimensional
// overlaps never need inclusion-exclusion.
//
// Every term produced here is "unimodular in its span": its denominator
// vectors are linearly independent and form a basis of the lattice points in
// their linear span. Set operations rely on that invariant. Terms with
// repeated denominator vectors appear only after partial specialization.

#include <optional>
#include <string>
#include <vector>

#include "mcilp/arith.hpp"
#include "mcilp/linalg.hpp"
#include "mcilp/polyhedra.hpp"
#include "mcilp/polynomial.hpp"

namespace mcilp {

struct GFTerm {
  Rational coefficient;
  IntVec numerator;
  std::vector<IntVec> denominators;

  friend bool operator==(const GFTerm&, const GFTerm&) = default;
};

/// A short rational generating function together with an integer box known to
/// contain the encoded set. The box is what keeps Hadamard products finite.
struct SRF {
  std::size_t dim = 0;
  std::vector<GFTerm> terms;
  std::optional<Box> support;

  SRF() = default;
  explicit SRF(std::size_t d) : dim(d) {}

  static SRF empty(std::size_t d) { return SRF(d); }
  static SRF monomial(IntVec exponent);

  [[nodiscard]] bool is_empty_encoding() const { return terms.empty(); }
  /// Largest number of binomials in any denominator.
  [[nodiscard]] std::size_t max_binomials() const;
};

/// Term-list concatenation; the support is the hull of both supports.
SRF operator+(const SRF& a, const SRF& b);
/// Multiplies every coefficient by c.
SRF scaled(SRF g, const Rational& c);

/// g1(x) * g2(z) in the concatenated variables (x, z).
SRF product(const SRF& x_part, const SRF& z_part);

/// A simplicial cone apex + cone(generators) with a sign.
struct Cone {
  RatPoint apex;
  std::vector<IntVec> generators;
  int sign = 1;
};

struct DecompositionStats {
  std::size_t cones = 0;
  std::size_t max_depth = 0;
};

/// |det| of the generator matrix.
Int cone_index(const Cone& c);

/// Barvinok's signed decomposition of a full-dimensional simplicial cone into
/// unimodular cones. The signed sum of indicator functions agrees with the
/// input cone up to lower-dimensional cones.
std::vector<Cone> unimodular_decompose(const Cone& c, DecompositionStats* stats = nullptr);

/// Generating function of the lattice points of a bounded polyhedron.
SRF gf_of_polytope(const Polyhedron& p);

/// Generating function of {x in Z^dim : a x <= b, eq x = eq_rhs}; the
/// inequality system must describe a bounded set.
SRF lattice_points_gf(const IntMat& a, const IntVec& b, const IntMat& eq, const IntVec& eq_rhs,
                      std::size_t dim);

/// Image under the injective map u -> origin + sum_j u_j * basis[j].
SRF affine_image(const SRF& g, const IntVec& origin, const std::vector<IntVec>& basis, std::size_t target_dim);

/// x_j -> x_j * z^{L e_j}: encodes {(u, L u) : u in S}. L has one row per new variable.
SRF monomial_substitution(const SRF& g, const IntMat& l);

/// Multiplies every numerator by x^w.
SRF shift(const SRF& g, const IntVec& w);

/// Canonical orientation (first nonzero entry of each denominator vector
/// negative), sorted denominators, identical terms merged, zero terms dropped.
SRF simplify(const SRF& g);

/// First moment-curve vector (1, t, t^2, ...) with <lambda, d> != 0 for all given d.
IntVec pick_generic_lambda(const std::vector<IntVec>& denominators, std::size_t dim);
IntVec pick_generic_lambda(const SRF& g);
/// Checks <lambda, d> != 0 for every denominator.
bool is_generic(const SRF& g, const IntVec& lambda);

/// Rewrites terms with 1/(1-x^d) = -x^{-d}/(1-x^{-d}) until <lambda, d> < 0 everywhere.
SRF normalize_orientation(const SRF& g, const IntVec& lambda);
/// True iff <lambda, d> < 0 for every denominator vector.
bool is_normalized(const SRF& g, const IntVec& lambda);

/// Number of encoded points.
Integer specialize_count(const SRF& g);
/// Exact sum of g's coefficients at x = 1 (equals the count for 0/1 encodings).
Rational specialize(const SRF& g, const IntVec& lambda);

/// sum_{v in S} f(v)^s.
Rational weighted_specialize(const SRF& g, const Polynomial& f, unsigned s);
/// [sum f(v), sum f(v)^2, ..., sum f(v)^smax].
std::vector<Rational> power_sums(const SRF& g, const Polynomial& f, unsigned smax);

/// Substitutes x_i = 1 for every i in `coords` and drops those variables.
/// Poles at x_i = 1 are resolved by exponential substitution and constant-term
/// extraction, which yields terms with repeated denominator vectors.
SRF specialize_coordinates(const SRF& g, const std::vector<std::size_t>& coords);

/// Text form: header `dim=<d> terms=<T>`, then one line per term
/// `num/den ; c_1,...,c_d ; d_11,...,d_1d| d_21,...`.
std::string serialize(const SRF& g);
SRF parse_srf(const std::string& text);

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
const std::vector<Rational>& bernoulli_numbers(std::size_t n);

}  // namespace mcilp
