#pragma once

// Helpers shared by the unit tests: brute-force series expansion of a
// generating function and small random instance generators.

#include <map>
#include <random>

#include "mcilp/genfunc.hpp"
#include "mcilp/oracle.hpp"
#include "mcilp/pareto.hpp"
#include "mcilp/select.hpp"

namespace mcilp::testing {

// Solves D mu = r over the rationals for a full-column-rank D given by columns.
inline std::optional<RatVec> solve_columns(const std::vector<IntVec>& cols, const IntVec& r) {
  const std::size_t n = r.size(), s = cols.size();
  std::vector<RatVec> a(n, RatVec(s + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < s; ++j) a[i][j] = rational(cols[j][i]);
    a[i][s] = rational(r[i]);
  }
  std::size_t row = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < s && row < n; ++c) {
    std::size_t p = row;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[row][c];
      for (std::size_t j = 0; j <= s; ++j) a[i][j] -= f * a[row][j];
    }
    piv.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i)
    if (a[i][s] != 0) return std::nullopt;
  RatVec mu(s);
  for (std::size_t i = 0; i < piv.size(); ++i) mu[piv[i]] = a[i][s] / a[i][piv[i]];
  return mu;
}

// Coefficient of x^v in the series expansion of g after orienting every term
// along a common generic direction. Only meaningful for terms whose
// denominators are linearly independent.
inline std::map<IntVec, Rational> expand_window(const SRF& g, const Box& window) {
  SRF n = normalize_orientation(g, pick_generic_lambda(g));
  std::map<IntVec, Rational> out;
  IntVec v = window.lower;
  if (window.dim() == 0) {
    Rational c = 0;
    for (const auto& t : n.terms) c += t.coefficient;
    if (c != 0) out[{}] = c;
    return out;
  }
  while (true) {
    Rational c = 0;
    for (const auto& t : n.terms) {
      auto mu = solve_columns(t.denominators, v - t.numerator);
      if (!mu) continue;
      bool ok = true;
      for (const auto& m : *mu)
        if (m.get_den() != 1 || m < 0) ok = false;
      if (ok) c += t.coefficient;
    }
    if (c != 0) out[v] = c;
    std::size_t i = 0;
    while (i < v.size() && v[i] == window.upper[i]) {
      v[i] = window.lower[i];
      ++i;
    }
    if (i == v.size()) break;
    ++v[i];
  }
  return out;
}

// Lattice points of a polyhedron inside a box, by direct scan.
inline std::vector<IntVec> scan_points(const Polyhedron& p, const Box& window) {
  std::vector<IntVec> pts;
  IntVec v = window.lower;
  while (true) {
    if (p.contains(v)) pts.push_back(v);
    std::size_t i = 0;
    while (i < v.size() && v[i] == window.upper[i]) {
      v[i] = window.lower[i];
      ++i;
    }
    if (i == v.size()) break;
    ++v[i];
  }
  return pts;
}

// Random bounded polytope: a random box plus a few random cuts.
inline Polyhedron random_polytope(std::mt19937_64& rng, std::size_t dim, Int radius, std::size_t cuts, Int coef = 3) {
  std::uniform_int_distribution<Int> pos(-radius, radius), c(-coef, coef);
  IntVec lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Int a = pos(rng), b = pos(rng);
    lo[i] = std::min(a, b);
    hi[i] = std::max(a, b);
  }
  Polyhedron p = Polyhedron::from_box(Box(lo, hi));
  IntMat a = p.a();
  IntVec b = p.b();
  for (std::size_t k = 0; k < cuts; ++k) {
    IntVec row(dim);
    for (auto& x : row) x = c(rng);
    // Cut through a random point of the box so the result is rarely empty.
    IntVec pt(dim);
    for (std::size_t i = 0; i < dim; ++i) pt[i] = std::uniform_int_distribution<Int>(lo[i], hi[i])(rng);
    a.push_back(row);
    b.push_back(dot(row, pt) + std::uniform_int_distribution<Int>(0, 2)(rng));
  }
  return Polyhedron(a, b, dim);
}

// Random problem with feasible box inside [-radius, radius]^n, constraint
// entries bounded by 5 and at least one feasible lattice point.
inline Problem random_problem(std::mt19937_64& rng, std::size_t n, std::size_t k, Int radius = 3,
                              std::size_t cuts = 2, Int fcoef = 3) {
  std::uniform_int_distribution<Int> fc(-fcoef, fcoef);
  for (;;) {
    Polyhedron p = random_polytope(rng, n, radius, cuts, 5);
    if (is_empty(p) || oracle::enumerate_lattice(p).empty()) continue;
    IntMat f(k, IntVec(n));
    for (auto& row : f)
      for (auto& x : row) x = fc(rng);
    return Problem(p.a(), p.b(), f, n);
  }
}

// Centrally symmetric polytope conv(+-w_1, ..., +-w_r) with random integer w_i.
inline PolyhedralNorm random_symmetric_norm(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<Int> c(-3, 3);
  for (;;) {
    std::vector<IntVec> verts;
    for (std::size_t i = 0; i < k + 1; ++i) {
      IntVec w(k);
      for (auto& x : w) x = c(rng);
      if (is_zero(w)) continue;
      verts.push_back(w);
      verts.push_back(-w);
    }
    try {
      return PolyhedralNorm::from_vertices(verts);
    } catch (const InvalidNorm&) {
    }
  }
}

// Full-rank nonnegative order with small entries.
inline TermOrder random_order(std::mt19937_64& rng, std::size_t p, Int max_entry = 3) {
  std::uniform_int_distribution<Int> e(0, max_entry);
  for (;;) {
    IntMat r(p, IntVec(p));
    for (auto& row : r)
      for (auto& x : row) x = e(rng);
    if (rank(r, p) == p) return TermOrder(r);
  }
}

}  // namespace mcilp::testing
