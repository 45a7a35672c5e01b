#pragma once

// Prescribed-order enumeration of (projections of) encoded lattice sets by
// recursive bisection of the slab {w : l <= R w <= u}, pruned by emptiness
// tests. Work between outputs and memory are both bounded by the recursion
// depth, which is logarithmic in the coordinate range.

#include <memory>
#include <optional>
#include <vector>

#include "mcilp/genfunc.hpp"

namespace mcilp {

/// Square, nonnegative, full-rank integer matrix R; w1 precedes w2 iff
/// R w1 is lexicographically smaller than R w2.
class TermOrder {
 public:
  explicit TermOrder(IntMat r);
  static TermOrder identity(std::size_t p);
  /// Whitespace-separated square matrix, row-major.
  static TermOrder parse(const std::string& text);

  [[nodiscard]] const IntMat& matrix() const { return r_; }
  [[nodiscard]] std::size_t size() const { return r_.size(); }
  /// Largest entry N (at least 1).
  [[nodiscard]] Int max_entry() const;
  [[nodiscard]] IntVec apply(std::span<const Int> w) const { return mat_vec(r_, w); }

 private:
  IntMat r_;
};

enum class Ordering { Less, Equal, Greater };

Ordering compare(const TermOrder& order, std::span<const Int> w1, std::span<const Int> w2);

/// l = -pMN * 1 and u = pMN * 1, so that l <= R w <= u on [-M, M]^p.
std::pair<IntVec, IntVec> initial_bounds(Int m, const TermOrder& order);

/// Decides whether some point w of the enumerated set satisfies l <= R w <= u.
class SlabOracle {
 public:
  virtual ~SlabOracle() = default;
  virtual bool is_empty(const IntVec& l, const IntVec& u) = 0;
  [[nodiscard]] virtual std::size_t width() const = 0;
};

/// Slabs of the projection of an encoded set V in [-M, M]^k to its last p
/// coordinates, tested by intersecting with the slab's generating function.
class SrfSlabOracle final : public SlabOracle {
 public:
  SrfSlabOracle(SRF gv, Int m, std::size_t p, TermOrder order);
  bool is_empty(const IntVec& l, const IntVec& u) override;
  [[nodiscard]] std::size_t width() const override { return p_; }

 private:
  SRF gv_;
  Int m_;
  std::size_t p_;
  TermOrder order_;
};

/// Slabs of the image F(P cap Z^n) of a polytope's lattice points under an
/// integer linear map, tested by counting lattice points of P cut by the slab.
class PolytopeImageSlabOracle final : public SlabOracle {
 public:
  PolytopeImageSlabOracle(Polyhedron p, IntMat f, TermOrder order);
  bool is_empty(const IntVec& l, const IntVec& u) override;
  [[nodiscard]] std::size_t width() const override { return f_.size(); }

 private:
  Polyhedron p_;
  IntMat f_;
  IntMat rf_;
};

/// is_empty for the slab Q_{l,u} = [-M, M]^{k-p} x {w : l <= R w <= u}.
bool is_empty_slab(const SRF& gv, const IntVec& l, const IntVec& u, Int m, const TermOrder& order);

struct DelayMetrics {
  std::size_t outputs = 0;
  std::size_t nodes = 0;                     // every slab visited
  std::size_t max_nodes_between_outputs = 0;  // inner nodes and empty leaves
  std::size_t max_stack_depth = 0;
};

/// Pull-based stream; each next() performs work bounded by the recursion depth.
class EnumerationStream {
 public:
  EnumerationStream(std::shared_ptr<SlabOracle> oracle, TermOrder order, Int m);

  std::optional<IntVec> next();
  [[nodiscard]] const DelayMetrics& metrics() const { return metrics_; }
  /// Depth bound 4 p log2(2pMN + 1) + 4 used by the instrumented checks.
  [[nodiscard]] double delay_bound() const;

 private:
  struct Frame {
    IntVec l, u;
  };
  std::shared_ptr<SlabOracle> oracle_;
  TermOrder order_;
  Int m_;
  std::vector<Frame> stack_;
  DelayMetrics metrics_;
  std::size_t since_output_ = 0;
};

/// Points of the projection of V to its last p coordinates, in order.
EnumerationStream enumerate_projection(const SRF& gv, Int m, std::size_t p, const TermOrder& order);

/// Reorders coordinates: result coordinate i is input coordinate perm[i].
SRF permute_coordinates(const SRF& g, const std::vector<std::size_t>& perm);

/// Exact integer solution of R w = l, if any.
std::optional<IntVec> solve_order_leaf(const TermOrder& order, const IntVec& l);

}  // namespace mcilp
