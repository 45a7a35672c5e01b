#pragma once

// Selection of points from an encoded finite set by global criteria: exact
// nearest points under polyhedral norms, distance-ordered enumeration, linear
// minimization, and moment-based approximation for polynomial objectives and
// pseudo-norms.

#include <optional>
#include <string>
#include <variant>

#include "mcilp/enumerate.hpp"
#include "mcilp/genfunc.hpp"
#include "mcilp/polynomial.hpp"

namespace mcilp {

/// Unit ball Q = {y : A y <= b} with b > 0, bounded and centrally symmetric.
struct PolyhedralNorm {
  IntMat a;
  IntVec b;
  std::size_t k = 0;

  /// Validates all invariants exactly; throws InvalidNorm.
  static PolyhedralNorm from_inequalities(IntMat a, IntVec b, std::size_t k);
  /// Facet description of conv(vertices); vertices must be integral.
  static PolyhedralNorm from_vertices(const std::vector<IntVec>& vertices);
  static PolyhedralNorm linf(std::size_t k);
  static PolyhedralNorm l1(std::size_t k);

  /// Largest absolute entry of A.
  [[nodiscard]] Int max_entry() const;
  /// lcm(b_1, ..., b_m); every distance is a multiple of its inverse.
  [[nodiscard]] Int granularity() const;
  /// The polytope vhat + (j / granularity) Q.
  [[nodiscard]] Polyhedron scaled_ball(const IntVec& vhat, Int j) const;
};

/// Gauge of {q <= 1} for a homogeneous polynomial q of even degree D, with
/// alpha B_inf inside the ball and the ball inside beta B_inf.
struct PseudoNorm {
  Polynomial q;
  unsigned degree = 0;
  Rational alpha;
  Rational beta;

  /// Checks the syntactic invariants and samples the containments on a grid
  /// of the cube boundary; throws InvalidNorm.
  static PseudoNorm make(Polynomial q, unsigned degree, Rational alpha, Rational beta);
};

struct OddLpNorm {
  unsigned p = 1;
};

using NormSpec = std::variant<PolyhedralNorm, PseudoNorm, OddLpNorm>;

/// `linf | l1 | poly-ineq <m> <k> A b | poly-verts v;v;... | pseudo <D> <q> <alpha> <beta> | lp-odd <p>`.
/// q is `sum<D>` (sum of D-th powers) or `coef:e1,...,ek;...`.
NormSpec parse_norm_spec(const std::string& text, std::size_t k);

/// d_Q(vhat, v) = max(0, max_i (A (v - vhat))_i / b_i).
Rational minkowski_distance(const PolyhedralNorm& q, const IntVec& vhat, const IntVec& v);

struct Selection {
  IntVec point;
  Rational distance;
};

/// True iff the encoding has at least one point.
bool has_points(const SRF& g);

/// Nearest point of V to vhat; ties broken by the order.
Selection nearest_polyhedral(const SRF& gv, const PolyhedralNorm& q, const IntVec& vhat, Int m,
                             const TermOrder& order);

/// All points of V by nondecreasing distance, ties in the given order.
class DistanceStream {
 public:
  DistanceStream(SRF gv, PolyhedralNorm q, IntVec vhat, Int m, TermOrder order);
  std::optional<Selection> next();

 private:
  Integer count_within(Int j, SRF* restricted);

  SRF gv_;
  PolyhedralNorm q_;
  IntVec vhat_;
  Int m_;
  Int j_max_;
  TermOrder order_;
  Integer total_;
  Integer emitted_ = 0;
  Int prev_j_ = -1;
  Integer prev_count_ = 0;
  SRF prev_set_;
  std::optional<EnumerationStream> shell_;
  Rational shell_distance_;
};

DistanceStream enumerate_by_distance(const SRF& gv, const PolyhedralNorm& q, const IntVec& vhat, Int m,
                                     const TermOrder& order);

struct LinearMin {
  IntVec point;
  Int value = 0;
};

/// min <c, v> over V by bisection on the threshold.
Int min_linear_value(const SRF& gv, const IntVec& c, Int m);
/// min <c, v> over V, with the lexicographically least minimizer.
LinearMin minimize_linear_over_set(const SRF& gv, const IntVec& c, Int m);

/// sum_{v in V} f(v)^s; p_s beyond the point count follows from Newton's
/// identities. Throws NegativeMoment when a power sum is negative.
Rational moment(const SRF& gv, const Polynomial& f, unsigned s, const Integer& count);

/// Smallest s >= 1 with count * (1 - eps)^s <= 1.
unsigned moment_order(const Integer& count, const Rational& eps);

struct PolyMax {
  IntVec point;
  Rational value;
  unsigned s = 0;
  Integer count;
  Rational moment;  // L_s; (L_s / count)^(1/s) <= max f <= L_s^(1/s)
};

/// A point with f(v) >= (1 - eps) max_V f for f >= 0 on V.
PolyMax fptas_max_polynomial(const SRF& gv, const Polynomial& f, const Box& box, const Rational& eps);

struct PseudoSelection {
  IntVec point;
  Rational qvalue;     // q(point - vhat)
  std::string root_lo;  // 40-digit decimal bracket of qvalue^(1/D)
  std::string root_hi;
  Int gamma = 0;
  Rational delta;
  unsigned s = 0;
  Rational eps_prime;
  Rational moment;
  Integer count;
};

/// A point v with d_Q(vhat, v) <= (1 + eps) min_V d_Q(vhat, .).
PseudoSelection fptas_nearest_pseudonorm(const SRF& gv, const PseudoNorm& pn, const IntVec& vhat, Int m,
                                         const Rational& eps);

/// Odd l_p distance, solved separately on each orthant at vhat.
PseudoSelection nearest_odd_lp(const SRF& gv, unsigned p, const IntVec& vhat, Int m, const Rational& eps);

/// Decimal strings bracketing x^(1/d) to `digits` places.
std::pair<std::string, std::string> root_bracket(const Rational& x, unsigned d, unsigned digits = 40);

}  // namespace mcilp
