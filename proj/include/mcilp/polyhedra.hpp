#pragma once

// Rational polyhedra {u : A u <= b} in fixed dimension: vertices, boundedness
// and linear-objective bounds, all in exact arithmetic.

#include <optional>
#include <utility>
#include <vector>

#include "mcilp/arith.hpp"
#include "mcilp/linalg.hpp"

namespace mcilp {

/// Integer box [lower, upper] (componentwise, inclusive).
struct Box {
  IntVec lower;
  IntVec upper;

  Box() = default;
  Box(IntVec lo, IntVec hi);

  [[nodiscard]] std::size_t dim() const { return lower.size(); }
  [[nodiscard]] bool contains(std::span<const Int> v) const;
  [[nodiscard]] bool contains(const Box& other) const;
  /// Number of lattice points, saturating at INT64_MAX.
  [[nodiscard]] Int volume() const;
  /// Largest absolute coordinate of any point in the box.
  [[nodiscard]] Int max_abs() const;

  friend bool operator==(const Box&, const Box&) = default;
};

/// Componentwise intersection; nullopt when empty.
std::optional<Box> intersect(const Box& a, const Box& b);
/// Smallest box containing both.
Box hull(const Box& a, const Box& b);
/// The box [-m, m]^d.
Box cube(std::size_t d, Int m);

class Polyhedron {
 public:
  Polyhedron() = default;
  /// Rows with zero coefficients and b_i >= 0 are dropped.
  Polyhedron(IntMat a, IntVec b, std::size_t dim);
  static Polyhedron from_box(const Box& box);

  [[nodiscard]] const IntMat& a() const { return a_; }
  [[nodiscard]] const IntVec& b() const { return b_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t rows() const { return a_.size(); }

  [[nodiscard]] bool contains(std::span<const Int> u) const;
  /// Adds the rows of `other` (same dimension).
  [[nodiscard]] Polyhedron intersected(const Polyhedron& other) const;

 private:
  IntMat a_;
  IntVec b_;
  std::size_t dim_ = 0;
};

/// True iff the polyhedron is bounded (the empty set counts as bounded).
bool is_bounded(const Polyhedron& p);

/// True iff the polyhedron has no real points.
bool is_empty(const Polyhedron& p);

/// Vertex set of a bounded polyhedron; throws EmptyPolyhedron if empty.
std::vector<RatPoint> vertices(const Polyhedron& p);

/// Vertices of a pointed polyhedron given by rows; empty result if infeasible.
/// Used directly by the generating-function code to avoid re-normalizing.
std::vector<RatPoint> vertex_points(const IntMat& a, const IntVec& b, std::size_t dim);

/// (min, max) of <f, u> over a bounded nonempty polyhedron.
std::pair<Rational, Rational> objective_bounds(const Polyhedron& p, std::span<const Int> f);

/// Integer box [floor(min f_i), ceil(max f_i)] over the rows f_i of `objectives`.
Box outcome_box(const Polyhedron& p, const IntMat& objectives);

/// Smallest integer box containing all lattice points of a bounded polyhedron.
std::optional<Box> integer_bounding_box(const Polyhedron& p);

}  // namespace mcilp
