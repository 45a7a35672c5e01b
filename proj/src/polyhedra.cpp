#include "mcilp/polyhedra.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "mcilp/detail/subsets.hpp"

namespace mcilp {

Box::Box(IntVec lo, IntVec hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size()) throw DimensionMismatch("box bounds differ in dimension");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i]) throw ContractError("box lower bound exceeds upper bound");
}

bool Box::contains(std::span<const Int> v) const {
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (v[i] < lower[i] || v[i] > upper[i]) return false;
  return true;
}

bool Box::contains(const Box& other) const {
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (other.lower[i] < lower[i] || other.upper[i] > upper[i]) return false;
  return true;
}

Int Box::volume() const {
  Wide v = 1;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    v *= static_cast<Wide>(upper[i]) - lower[i] + 1;
    if (v > INT64_MAX) return INT64_MAX;
  }
  return static_cast<Int>(v);
}

Int Box::max_abs() const {
  Int m = 0;
  for (std::size_t i = 0; i < lower.size(); ++i) m = std::max({m, iabs(lower[i]), iabs(upper[i])});
  return m;
}

std::optional<Box> intersect(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("box dimensions differ");
  Box r;
  r.lower.resize(a.dim());
  r.upper.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    r.lower[i] = std::max(a.lower[i], b.lower[i]);
    r.upper[i] = std::min(a.upper[i], b.upper[i]);
    if (r.lower[i] > r.upper[i]) return std::nullopt;
  }
  return r;
}

Box hull(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("box dimensions differ");
  Box r = a;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    r.lower[i] = std::min(a.lower[i], b.lower[i]);
    r.upper[i] = std::max(a.upper[i], b.upper[i]);
  }
  return r;
}

Box cube(std::size_t d, Int m) { return Box(IntVec(d, -m), IntVec(d, m)); }

Polyhedron::Polyhedron(IntMat a, IntVec b, std::size_t dim) : dim_(dim) {
  if (a.size() != b.size()) throw DimensionMismatch("A and b row counts differ");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != dim) throw DimensionMismatch("constraint row has wrong length");
    if (is_zero(a[i]) && b[i] >= 0) continue;
    a_.push_back(std::move(a[i]));
    b_.push_back(b[i]);
  }
}

Polyhedron Polyhedron::from_box(const Box& box) {
  const std::size_t d = box.dim();
  IntMat a;
  IntVec b;
  for (std::size_t i = 0; i < d; ++i) {
    IntVec row(d, 0);
    row[i] = 1;
    a.push_back(row);
    b.push_back(box.upper[i]);
    row[i] = -1;
    a.push_back(row);
    b.push_back(sub(0, box.lower[i]));
  }
  return Polyhedron(std::move(a), std::move(b), d);
}

bool Polyhedron::contains(std::span<const Int> u) const {
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (wdot(a_[i], u) > b_[i]) return false;
  return true;
}

Polyhedron Polyhedron::intersected(const Polyhedron& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("polyhedron dimensions differ");
  IntMat a = a_;
  IntVec b = b_;
  a.insert(a.end(), other.a_.begin(), other.a_.end());
  b.insert(b.end(), other.b_.begin(), other.b_.end());
  return Polyhedron(std::move(a), std::move(b), dim_);
}

namespace {

using detail::for_each_subset;

bool satisfies(const IntMat& a, const IntVec& b, const RatPoint& p) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (wdot(a[i], p.num) > wmul(b[i], p.den)) return false;
  return true;
}

// Basis of the row space, used to reduce a non-pointed polyhedron.
IntMat row_space_basis(const IntMat& a, std::size_t dim) {
  IntMat basis;
  for (const auto& row : a) {
    basis.push_back(row);
    if (rank(basis, dim) < basis.size()) basis.pop_back();
  }
  return basis;
}

}  // namespace

std::vector<RatPoint> vertex_points(const IntMat& a, const IntVec& b, std::size_t dim) {
  std::vector<RatPoint> out;
  if (dim == 0) {
    for (Int bi : b)
      if (bi < 0) return out;
    out.push_back(RatPoint{{}, 1});
    return out;
  }
  std::set<RatPoint> seen;
  IntMat sq(dim);
  IntVec rhs(dim);
  for_each_subset(a.size(), dim, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < dim; ++i) {
      sq[i] = a[idx[i]];
      rhs[i] = b[idx[i]];
    }
    auto p = solve(sq, rhs);
    if (!p || !satisfies(a, b, *p)) return;
    if (seen.insert(*p).second) out.push_back(*p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_empty(const Polyhedron& p) {
  const std::size_t d = p.dim();
  for (std::size_t i = 0; i < p.rows(); ++i)
    if (is_zero(p.a()[i]) && p.b()[i] < 0) return true;
  IntMat basis = row_space_basis(p.a(), d);
  if (basis.size() == d) return vertex_points(p.a(), p.b(), d).empty();
  // u = B^T z parametrizes a complement of the lineality space.
  const std::size_t r = basis.size();
  IntMat reduced(p.rows(), IntVec(r));
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) reduced[i][j] = dot(p.a()[i], basis[j]);
  return vertex_points(reduced, p.b(), r).empty();
}

bool is_bounded(const Polyhedron& p) {
  if (is_empty(p)) return true;
  const std::size_t d = p.dim();
  if (d == 0) return true;
  if (rank(p.a(), d) < d) return false;
  // Pointed and nonempty: bounded iff the recession cone {y : A y <= 0} has no ray.
  bool ray = false;
  IntMat sub_rows;
  for_each_subset(p.rows(), d - 1, [&](const std::vector<std::size_t>& idx) {
    if (ray) return;
    sub_rows.clear();
    for (auto i : idx) sub_rows.push_back(p.a()[i]);
    if (d > 1 && rank(sub_rows, d) != d - 1) return;
    IntMat ns = nullspace(sub_rows, d);
    if (ns.size() != 1) return;
    for (int sgn : {1, -1}) {
      bool ok = true;
      for (const auto& row : p.a())
        if (sgn * dot(row, ns[0]) > 0) ok = false;
      if (ok) ray = true;
    }
  });
  return !ray;
}

std::vector<RatPoint> vertices(const Polyhedron& p) {
  if (!is_bounded(p)) throw UnboundedPolyhedron();
  auto v = vertex_points(p.a(), p.b(), p.dim());
  if (v.empty()) throw EmptyPolyhedron();
  return v;
}

std::pair<Rational, Rational> objective_bounds(const Polyhedron& p, std::span<const Int> f) {
  if (f.size() != p.dim()) throw DimensionMismatch("objective length differs from dimension");
  auto verts = vertices(p);
  std::optional<Rational> lo, hi;
  for (const auto& v : verts) {
    Rational val = rational(wdot(f, v.num)) / rational(v.den);
    if (!lo || val < *lo) lo = val;
    if (!hi || val > *hi) hi = val;
  }
  return {*lo, *hi};
}

Box outcome_box(const Polyhedron& p, const IntMat& objectives) {
  IntVec lo, hi;
  for (const auto& f : objectives) {
    auto [l, h] = objective_bounds(p, f);
    lo.push_back(to_int(floor_q(l)));
    hi.push_back(to_int(ceil_q(h)));
  }
  return Box(std::move(lo), std::move(hi));
}

std::optional<Box> integer_bounding_box(const Polyhedron& p) {
  auto verts = vertex_points(p.a(), p.b(), p.dim());
  if (verts.empty()) return std::nullopt;
  IntVec lo(p.dim(), INT64_MAX), hi(p.dim(), INT64_MIN);
  for (const auto& v : verts)
    for (std::size_t i = 0; i < p.dim(); ++i) {
      lo[i] = std::min(lo[i], ceil_div(v.num[i], v.den));
      hi[i] = std::max(hi[i], floor_div(v.num[i], v.den));
    }
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (lo[i] > hi[i]) return std::nullopt;
  return Box(std::move(lo), std::move(hi));
}

}  // namespace mcilp
