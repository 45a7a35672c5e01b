#include "mcilp/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcilp/setops.hpp"

namespace mcilp {

TermOrder::TermOrder(IntMat r) : r_(std::move(r)) {
  const std::size_t p = r_.size();
  if (p == 0) throw ContractError("term order needs at least one row");
  for (const auto& row : r_) {
    if (row.size() != p) throw DimensionMismatch("term order matrix must be square");
    for (Int x : row)
      if (x < 0) throw ContractError("term order matrix must be nonnegative");
  }
  if (rank(r_, p) != p) throw ContractError("term order matrix must have full rank");
}

TermOrder TermOrder::identity(std::size_t p) {
  IntMat r(p, IntVec(p, 0));
  for (std::size_t i = 0; i < p; ++i) r[i][i] = 1;
  return TermOrder(std::move(r));
}

TermOrder TermOrder::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<IntVec> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    IntVec row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("malformed order entry '" + tok + "'");
      }
      if (used != tok.size()) throw ParseError("malformed order entry '" + tok + "'");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty order matrix");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ParseError("order matrix must be square");
  return TermOrder(std::move(rows));
}

Int TermOrder::max_entry() const {
  Int n = 1;
  for (const auto& row : r_)
    for (Int x : row) n = std::max(n, x);
  return n;
}

Ordering compare(const TermOrder& order, std::span<const Int> w1, std::span<const Int> w2) {
  if (w1.size() != order.size() || w2.size() != order.size()) throw DimensionMismatch("point length differs from order size");
  for (const auto& row : order.matrix()) {
    Wide a = wdot(row, w1), b = wdot(row, w2);
    if (a < b) return Ordering::Less;
    if (a > b) return Ordering::Greater;
  }
  return Ordering::Equal;
}

std::pair<IntVec, IntVec> initial_bounds(Int m, const TermOrder& order) {
  const Int p = static_cast<Int>(order.size());
  const Int bound = mul(mul(p, m), order.max_entry());
  return {IntVec(order.size(), -bound), IntVec(order.size(), bound)};
}

std::optional<IntVec> solve_order_leaf(const TermOrder& order, const IntVec& l) {
  auto sol = solve(order.matrix(), l);
  if (!sol || sol->den != 1) return std::nullopt;
  return sol->num;
}

namespace {

// Rows l <= R w <= u and -M <= w <= M on the trailing p of k coordinates.
void slab_rows(const TermOrder& order, const IntVec& l, const IntVec& u, std::size_t k, Int m, IntMat& a, IntVec& b) {
  const std::size_t p = order.size();
  for (std::size_t i = 0; i < k; ++i) {
    IntVec row(k, 0);
    row[i] = 1;
    a.push_back(row);
    b.push_back(m);
    row[i] = -1;
    a.push_back(row);
    b.push_back(m);
  }
  for (std::size_t i = 0; i < p; ++i) {
    IntVec row(k, 0);
    for (std::size_t j = 0; j < p; ++j) row[k - p + j] = order.matrix()[i][j];
    a.push_back(row);
    b.push_back(u[i]);
    a.push_back(-row);
    b.push_back(sub(0, l[i]));
  }
}

}  // namespace

bool is_empty_slab(const SRF& gv, const IntVec& l, const IntVec& u, Int m, const TermOrder& order) {
  if (order.size() > gv.dim) throw DimensionMismatch("projection width exceeds dimension");
  if (gv.terms.empty()) return true;
  IntMat a;
  IntVec b;
  slab_rows(order, l, u, gv.dim, m, a, b);
  return count_in_bounded_polytope(gv, Polyhedron(std::move(a), std::move(b), gv.dim)) == 0;
}

SrfSlabOracle::SrfSlabOracle(SRF gv, Int m, std::size_t p, TermOrder order)
    : gv_(std::move(gv)), m_(m), p_(p), order_(std::move(order)) {
  if (p_ != order_.size() || p_ > gv_.dim) throw DimensionMismatch("projection width does not match order");
}

bool SrfSlabOracle::is_empty(const IntVec& l, const IntVec& u) { return is_empty_slab(gv_, l, u, m_, order_); }

PolytopeImageSlabOracle::PolytopeImageSlabOracle(Polyhedron p, IntMat f, TermOrder order)
    : p_(std::move(p)), f_(std::move(f)) {
  if (order.size() != f_.size()) throw DimensionMismatch("order size differs from objective count");
  for (const auto& row : order.matrix()) {
    IntVec comb(p_.dim(), 0);
    for (std::size_t j = 0; j < row.size(); ++j)
      for (std::size_t i = 0; i < p_.dim(); ++i) comb[i] = add(comb[i], mul(row[j], f_[j][i]));
    rf_.push_back(std::move(comb));
  }
}

bool PolytopeImageSlabOracle::is_empty(const IntVec& l, const IntVec& u) {
  IntMat a = p_.a();
  IntVec b = p_.b();
  for (std::size_t i = 0; i < rf_.size(); ++i) {
    a.push_back(rf_[i]);
    b.push_back(u[i]);
    a.push_back(-rf_[i]);
    b.push_back(sub(0, l[i]));
  }
  if (vertex_points(a, b, p_.dim()).empty()) return true;
  return specialize_count(lattice_points_gf(a, b, {}, {}, p_.dim())) == 0;
}

EnumerationStream::EnumerationStream(std::shared_ptr<SlabOracle> oracle, TermOrder order, Int m)
    : oracle_(std::move(oracle)), order_(std::move(order)), m_(m) {
  if (oracle_->width() != order_.size()) throw DimensionMismatch("oracle width differs from order size");
  auto [l, u] = initial_bounds(m_, order_);
  stack_.push_back(Frame{std::move(l), std::move(u)});
  metrics_.max_stack_depth = 1;
}

double EnumerationStream::delay_bound() const {
  const double p = static_cast<double>(order_.size());
  const double n = static_cast<double>(order_.max_entry());
  return 4.0 * p * std::log2(2.0 * p * static_cast<double>(m_) * n + 1.0) + 4.0;
}

std::optional<IntVec> EnumerationStream::next() {
  while (!stack_.empty()) {
    Frame f = std::move(stack_.back());
    stack_.pop_back();
    ++metrics_.nodes;
    ++since_output_;
    if (oracle_->is_empty(f.l, f.u)) continue;
    std::size_t j = 0;
    while (j < f.l.size() && f.l[j] == f.u[j]) ++j;
    if (j == f.l.size()) {
      auto w = solve_order_leaf(order_, f.l);
      if (!w) continue;
      ++metrics_.outputs;
      metrics_.max_nodes_between_outputs = std::max(metrics_.max_nodes_between_outputs, since_output_ - 1);
      since_output_ = 0;
      return w;
    }
    const Int mid = floor_div(add(f.l[j], f.u[j]), 2);
    Frame right{f.l, f.u};
    right.l[j] = mid + 1;
    Frame left{std::move(f.l), std::move(f.u)};
    left.u[j] = mid;
    stack_.push_back(std::move(right));
    stack_.push_back(std::move(left));
    metrics_.max_stack_depth = std::max(metrics_.max_stack_depth, stack_.size());
  }
  metrics_.max_nodes_between_outputs = std::max(metrics_.max_nodes_between_outputs, since_output_);
  since_output_ = 0;
  return std::nullopt;
}

EnumerationStream enumerate_projection(const SRF& gv, Int m, std::size_t p, const TermOrder& order) {
  return EnumerationStream(std::make_shared<SrfSlabOracle>(gv, m, p, order), order, m);
}

SRF permute_coordinates(const SRF& g, const std::vector<std::size_t>& perm) {
  if (perm.size() != g.dim) throw DimensionMismatch("permutation has wrong length");
  std::vector<bool> seen(g.dim, false);
  for (auto i : perm) {
    if (i >= g.dim || seen[i]) throw ContractError("not a permutation");
    seen[i] = true;
  }
  auto apply = [&](const IntVec& v) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < perm.size(); ++i) r[i] = v[perm[i]];
    return r;
  };
  SRF r(g.dim);
  for (const auto& t : g.terms) {
    GFTerm nt{t.coefficient, apply(t.numerator), {}};
    for (const auto& d : t.denominators) nt.denominators.push_back(apply(d));
    r.terms.push_back(std::move(nt));
  }
  if (g.support) r.support = Box(apply(g.support->lower), apply(g.support->upper));
  return r;
}

}  // namespace mcilp
