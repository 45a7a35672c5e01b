#pragma once

// Exact small-dimension linear algebra over the integers and rationals.

#include <optional>
#include <vector>

#include "mcilp/arith.hpp"

namespace mcilp {

/// A rational point stored as integer numerators over one positive denominator.
struct RatPoint {
  IntVec num;
  Int den = 1;

  friend bool operator==(const RatPoint&, const RatPoint&) = default;
  friend auto operator<=>(const RatPoint&, const RatPoint&) = default;

  [[nodiscard]] RatVec to_rational() const;
  [[nodiscard]] bool is_integral() const { return den == 1; }
};

/// Determinant of a square integer matrix (fraction-free elimination).
Int determinant(const IntMat& m);

/// Rank of an integer matrix with `cols` columns.
std::size_t rank(const IntMat& m, std::size_t cols);

/// Solves the square system m x = rhs; nullopt if m is singular.
std::optional<RatPoint> solve(const IntMat& m, const IntVec& rhs);

/// Adjugate matrix: m * adj(m) = det(m) * I.
IntMat adjugate(const IntMat& m);

/// Inverse of a matrix with determinant +-1.
IntMat unimodular_inverse(const IntMat& m);

/// Rational inverse as integer matrix over a positive common denominator.
struct ScaledInverse {
  IntMat num;
  Int den = 1;
};
ScaledInverse scaled_inverse(const IntMat& m);

/// Integer basis (primitive vectors) of the rational null space {x : m x = 0}.
IntMat nullspace(const IntMat& m, std::size_t cols);

/// The affine lattice {x in Z^n : E x = e} = { x0 + U t : t in Z^r }.
struct AffineLattice {
  IntVec origin;
  IntMat basis;  // r vectors of length n, a lattice basis of the integer kernel
};

/// Solves E x = e over the integers via unimodular column operations.
/// Returns nullopt when there is no integer solution.
std::optional<AffineLattice> solve_integer(const IntMat& e_mat, const IntVec& e_rhs, std::size_t cols);

/// gcd of all s x s minors of the n x s matrix whose columns are `gens`;
/// equals 1 exactly when the generators form a basis of the lattice points
/// in their span.
Int lattice_index(const std::vector<IntVec>& gens);

/// Matrix whose columns are the given vectors.
IntMat columns_to_matrix(const std::vector<IntVec>& cols, std::size_t rows);

}  // namespace mcilp
