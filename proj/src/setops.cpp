#include "mcilp/setops.hpp"

#include <algorithm>
#include <map>

namespace mcilp {

namespace {

// Rows of a left inverse of the full-column-rank matrix with columns `dens`,
// scaled to integers, acting on the coordinates listed in `rows`.
struct LeftInverse {
  IntMat num;                     // s x |rows|
  std::vector<std::size_t> rows;  // chosen coordinates
  IntMat left_null;               // integer basis of {e : e^T D = 0}
};

LeftInverse left_inverse(const std::vector<IntVec>& dens, std::size_t dim) {
  const std::size_t s = dens.size();
  LeftInverse li;
  // Greedy choice of s independent coordinates.
  IntMat chosen;
  for (std::size_t i = 0; i < dim && li.rows.size() < s; ++i) {
    IntVec row(s);
    for (std::size_t j = 0; j < s; ++j) row[j] = dens[j][i];
    chosen.push_back(row);
    if (rank(chosen, s) < chosen.size())
      chosen.pop_back();
    else
      li.rows.push_back(i);
  }
  if (li.rows.size() != s) throw ContractError("denominator vectors are linearly dependent");
  if (s > 0) li.num = scaled_inverse(chosen).num;
  if (s < dim) li.left_null = nullspace(dens, dim);
  return li;
}

// Terms of a * b restricted to `box`: a lives in Z^dim, b acts on the
// coordinates [offset, offset + |c_b|) only.
SRF pair_product(const GFTerm& a, const GFTerm& b, const LeftInverse& lb, const Box& box, std::size_t dim,
                 std::size_t offset = 0) {
  const std::size_t sa = a.denominators.size();
  IntVec diff(b.numerator.size());  // c_a - c_b on b's coordinates
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sub(a.numerator[offset + i], b.numerator[i]);
  IntMat rows;
  IntVec rhs;
  // nu >= 0
  for (std::size_t j = 0; j < sa; ++j) {
    IntVec r(sa, 0);
    r[j] = -1;
    rows.push_back(std::move(r));
    rhs.push_back(0);
  }
  // c_a + D_a nu inside the box
  for (std::size_t i = 0; i < dim; ++i) {
    IntVec r(sa);
    for (std::size_t j = 0; j < sa; ++j) r[j] = a.denominators[j][i];
    rows.push_back(r);
    rhs.push_back(sub(box.upper[i], a.numerator[i]));
    rows.push_back(-r);
    rhs.push_back(sub(a.numerator[i], box.lower[i]));
  }
  // Coefficients of c_a + D_a nu - c_b in the basis D_b are nonnegative.
  for (const auto& linv : lb.num) {
    IntVec r(sa, 0);
    Int off = 0;
    for (std::size_t t = 0; t < lb.rows.size(); ++t) {
      const std::size_t i = lb.rows[t];
      for (std::size_t j = 0; j < sa; ++j) r[j] = add(r[j], mul(linv[t], a.denominators[j][offset + i]));
      off = add(off, mul(linv[t], diff[i]));
    }
    rows.push_back(-r);
    rhs.push_back(off);
  }
  // ... and c_a + D_a nu - c_b lies in the span of D_b.
  IntMat eq;
  IntVec eq_rhs;
  for (const auto& e : lb.left_null) {
    IntVec r(sa, 0);
    for (std::size_t j = 0; j < sa; ++j)
      for (std::size_t i = 0; i < e.size(); ++i) r[j] = add(r[j], mul(e[i], a.denominators[j][offset + i]));
    eq.push_back(std::move(r));
    eq_rhs.push_back(sub(0, dot(e, diff)));
  }
  SRF nu = lattice_points_gf(rows, rhs, eq, eq_rhs, sa);
  if (nu.terms.empty()) return SRF(dim);
  return affine_image(nu, a.numerator, a.denominators, dim);
}

// Per coordinate: 0 for a fixed coordinate, +-1 for a ray along +-e_i; empty
// when some denominator is not a signed unit vector or a coordinate repeats.
std::optional<std::vector<int>> orthant_signs(const GFTerm& t, std::size_t dim) {
  std::vector<int> sign(dim, 0);
  for (const auto& d : t.denominators) {
    std::size_t axis = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (d[i] == 0) continue;
      if (axis != dim || (d[i] != 1 && d[i] != -1)) return std::nullopt;
      axis = i;
    }
    if (axis == dim || sign[axis] != 0) return std::nullopt;
    sign[axis] = static_cast<int>(d[axis]);
  }
  return sign;
}

// Intersection of two orthant cones oriented along the same direction: at
// most one term, no lattice-point counting needed.
std::optional<GFTerm> orthant_product(const GFTerm& a, const std::vector<int>& sa, const GFTerm& b,
                                      const std::vector<int>& sb) {
  const std::size_t dim = sa.size();
  GFTerm t;
  t.coefficient = a.coefficient * b.coefficient;
  t.numerator.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const Int x = a.numerator[i], y = b.numerator[i];
    if (sa[i] != 0 && sb[i] != 0) {
      if (sa[i] != sb[i]) return std::nullopt;
      t.numerator[i] = sa[i] > 0 ? std::max(x, y) : std::min(x, y);
      IntVec e(dim, 0);
      e[i] = sa[i];
      t.denominators.push_back(std::move(e));
    } else if (sa[i] == 0 && sb[i] == 0) {
      if (x != y) return std::nullopt;
      t.numerator[i] = x;
    } else {
      const Int fixed = sa[i] == 0 ? x : y, apex = sa[i] == 0 ? y : x;
      const int dir = sa[i] == 0 ? sb[i] : sa[i];
      if ((dir > 0 && fixed < apex) || (dir < 0 && fixed > apex)) return std::nullopt;
      t.numerator[i] = fixed;
    }
  }
  return t;
}

std::optional<Box> common_box(const SRF& g1, const SRF& g2) {
  if (!g1.support || !g2.support) throw UnboundedSupport("generating function carries no support box");
  return intersect(*g1.support, *g2.support);
}

}  // namespace

SRF hadamard_normalized(const SRF& g1, const SRF& g2, const IntVec& lambda) {
  if (g1.dim != g2.dim) throw DimensionMismatch("generating functions live in different dimensions");
  if (!is_normalized(g1, lambda) || !is_normalized(g2, lambda))
    throw NonNormalizedInput("inputs must be oriented along the same generic direction");
  const std::size_t dim = g1.dim;
  if (g1.terms.empty() || g2.terms.empty()) return SRF(dim);
  auto box = common_box(g1, g2);
  if (!box) return SRF(dim);

  // The shortcut skips the box truncation, so it is only valid when every
  // pair takes it.
  std::vector<std::optional<std::vector<int>>> signs1, signs2;
  for (const auto& t : g1.terms) signs1.push_back(orthant_signs(t, dim));
  for (const auto& t : g2.terms) signs2.push_back(orthant_signs(t, dim));
  const bool orthants = std::all_of(signs1.begin(), signs1.end(), [](const auto& s) { return s.has_value(); }) &&
                        std::all_of(signs2.begin(), signs2.end(), [](const auto& s) { return s.has_value(); });
  std::vector<LeftInverse> inv1, inv2;
  if (!orthants) {
    for (const auto& t : g1.terms) inv1.push_back(left_inverse(t.denominators, dim));
    for (const auto& t : g2.terms) inv2.push_back(left_inverse(t.denominators, dim));
  }

  SRF out(dim);
  for (std::size_t i = 0; i < g1.terms.size(); ++i)
    for (std::size_t j = 0; j < g2.terms.size(); ++j) {
      const GFTerm& a = g1.terms[i];
      const GFTerm& b = g2.terms[j];
      if (orthants) {
        if (auto t = orthant_product(a, *signs1[i], b, *signs2[j])) out.terms.push_back(std::move(*t));
        continue;
      }
      SRF piece = a.denominators.size() <= b.denominators.size() ? pair_product(a, b, inv2[j], *box, dim)
                                                                  : pair_product(b, a, inv1[i], *box, dim);
      const Rational c = a.coefficient * b.coefficient;
      for (auto& t : piece.terms) {
        t.coefficient *= c;
        out.terms.push_back(std::move(t));
      }
    }
  out = simplify(out);
  if (!out.terms.empty()) out.support = box;
  return out;
}

SRF hadamard(const SRF& g1, const SRF& g2) {
  if (g1.dim != g2.dim) throw DimensionMismatch("generating functions live in different dimensions");
  if (g1.terms.empty() || g2.terms.empty()) return SRF(g1.dim);
  std::vector<IntVec> dens;
  for (const SRF* g : {&g1, &g2})
    for (const auto& t : g->terms) dens.insert(dens.end(), t.denominators.begin(), t.denominators.end());
  IntVec lambda = pick_generic_lambda(dens, g1.dim);
  return hadamard_normalized(normalize_orientation(g1, lambda), normalize_orientation(g2, lambda), lambda);
}

SRF intersect(const SRF& g1, const SRF& g2) { return hadamard(g1, g2); }

namespace {

// Rows of {mu >= 0 : A (c + D mu) <= b} for one oriented term.
void term_region(const GFTerm& t, const Polyhedron& p, IntMat& ra, IntVec& rb) {
  const std::size_t s = t.denominators.size();
  ra.clear();
  rb.clear();
  for (std::size_t i = 0; i < p.rows(); ++i) {
    IntVec row(s);
    for (std::size_t j = 0; j < s; ++j) row[j] = dot(p.a()[i], t.denominators[j]);
    ra.push_back(std::move(row));
    rb.push_back(sub(p.b()[i], dot(p.a()[i], t.numerator)));
  }
  for (std::size_t j = 0; j < s; ++j) {
    IntVec row(s, 0);
    row[j] = -1;
    ra.push_back(std::move(row));
    rb.push_back(0);
  }
}

void check_restrict_args(const SRF& g, const Polyhedron& p) {
  if (g.dim != p.dim()) throw DimensionMismatch("polyhedron dimension differs from generating function");
  if (!is_bounded(p)) throw UnboundedPolyhedron("polyhedron is unbounded");
}

}  // namespace

Integer count_in_polytope(const SRF& g, const Polyhedron& p) {
  check_restrict_args(g, p);
  return count_in_bounded_polytope(g, p);
}

Integer count_in_bounded_polytope(const SRF& g, const Polyhedron& p) {
  if (g.dim != p.dim()) throw DimensionMismatch("polyhedron dimension differs from generating function");
  if (g.terms.empty()) return 0;
  SRF n = normalize_orientation(g, pick_generic_lambda(g));
  Rational total = 0;
  IntMat ra;
  IntVec rb;
  for (const auto& t : n.terms) {
    if (t.denominators.empty()) {
      if (p.contains(t.numerator)) total += t.coefficient;
      continue;
    }
    term_region(t, p, ra, rb);
    SRF region = lattice_points_gf(ra, rb, {}, {}, t.denominators.size());
    if (!region.terms.empty()) total += t.coefficient * Rational(specialize_count(region));
  }
  if (total.get_den() != 1) throw std::logic_error("non-integral restricted count");
  return total.get_num();
}

SRF restrict_to_polytope(const SRF& g, const Polyhedron& p) {
  check_restrict_args(g, p);
  if (g.terms.empty()) return SRF(g.dim);
  for (const auto& t : g.terms)
    if (rank(t.denominators, g.dim) != t.denominators.size()) return intersect(g, gf_of_polytope(p));
  SRF n = normalize_orientation(g, pick_generic_lambda(g));
  SRF out(g.dim);
  IntMat ra;
  IntVec rb;
  for (const auto& t : n.terms) {
    if (t.denominators.empty()) {
      if (p.contains(t.numerator)) out.terms.push_back(t);
      continue;
    }
    term_region(t, p, ra, rb);
    SRF region = lattice_points_gf(ra, rb, {}, {}, t.denominators.size());
    if (region.terms.empty()) continue;
    SRF img = affine_image(region, t.numerator, t.denominators, g.dim);
    for (auto& nt : img.terms) {
      nt.coefficient *= t.coefficient;
      out.terms.push_back(std::move(nt));
    }
  }
  out = simplify(out);
  if (out.terms.empty()) return SRF(g.dim);
  std::optional<Box> box = g.support;
  if (!box) box = integer_bounding_box(p);
  out.support = box;
  return out;
}

SRF pullback_intersection(const SRF& gu, const IntMat& f, const SRF& gv) {
  const std::size_t n = gu.dim, k = gv.dim, dim = n + k;
  if (f.size() != k) throw DimensionMismatch("map has wrong number of rows");
  for (const auto& row : f)
    if (row.size() != n) throw DimensionMismatch("map has wrong number of columns");
  if (gu.terms.empty() || gv.terms.empty()) return SRF(dim);
  if (!gu.support || !gv.support) throw UnboundedSupport("generating function carries no support box");
  SRF nu = normalize_orientation(gu, pick_generic_lambda(gu));
  SRF nv = normalize_orientation(gv, pick_generic_lambda(gv));
  auto lift = [&](const IntVec& x) {
    IntVec y = x;
    IntVec fx = mat_vec(f, x);
    y.insert(y.end(), fx.begin(), fx.end());
    return y;
  };
  IntVec lo = gu.support->lower, hi = gu.support->upper;
  lo.insert(lo.end(), gv.support->lower.begin(), gv.support->lower.end());
  hi.insert(hi.end(), gv.support->upper.begin(), gv.support->upper.end());
  const Box box(lo, hi);
  std::vector<LeftInverse> inv;
  for (const auto& t : nv.terms) inv.push_back(left_inverse(t.denominators, k));
  SRF out(dim);
  for (const auto& a : nu.terms) {
    GFTerm lifted{a.coefficient, lift(a.numerator), {}};
    for (const auto& d : a.denominators) {
      IntVec ld = lift(d);
      if (is_zero(ld)) throw DegenerateSubstitution("denominator maps to zero");
      lifted.denominators.push_back(std::move(ld));
    }
    for (std::size_t j = 0; j < nv.terms.size(); ++j) {
      SRF piece = pair_product(lifted, nv.terms[j], inv[j], box, dim, n);
      const Rational c = a.coefficient * nv.terms[j].coefficient;
      for (auto& t : piece.terms) {
        t.coefficient *= c;
        out.terms.push_back(std::move(t));
      }
    }
  }
  out = simplify(out);
  if (!out.terms.empty()) out.support = box;
  return out;
}

SRF set_union(const SRF& g1, const SRF& g2) {
  if (g1.terms.empty()) return g2;
  if (g2.terms.empty()) return g1;
  return simplify(g1 + g2 + scaled(hadamard(g1, g2), -1));
}

SRF set_difference(const SRF& g1, const SRF& g2) {
  if (g1.terms.empty() || g2.terms.empty()) return g1;
  SRF r = simplify(g1 + scaled(hadamard(g1, g2), -1));
  if (!r.terms.empty()) r.support = g1.support;
  return r;
}

SRF complement(const SRF& g, const Box& universe) {
  if (g.support && !g.terms.empty() && !universe.contains(*g.support))
    throw UniverseViolation("set is not contained in the universe box");
  SRF r = simplify(box_gf(universe) + scaled(g, -1));
  if (!r.terms.empty()) r.support = universe;
  return r;
}

SRF union_all(std::vector<SRF> sets) {
  if (sets.empty()) throw ContractError("union of no sets");
  while (sets.size() > 1) {
    std::vector<SRF> next;
    for (std::size_t i = 0; i + 1 < sets.size(); i += 2) next.push_back(set_union(sets[i], sets[i + 1]));
    if (sets.size() % 2 == 1) next.push_back(std::move(sets.back()));
    sets = std::move(next);
  }
  return std::move(sets.front());
}

SRF box_gf(const Box& box) {
  const std::size_t d = box.dim();
  SRF g(d);
  g.support = box;
  // prod_i (x_i^{lo_i} - x_i^{hi_i + 1}) / (1 - x_i); degenerate sides are plain monomials.
  std::vector<std::size_t> wide;
  for (std::size_t i = 0; i < d; ++i)
    if (box.lower[i] != box.upper[i]) wide.push_back(i);
  for (std::size_t mask = 0; mask < (std::size_t{1} << wide.size()); ++mask) {
    GFTerm t;
    t.coefficient = 1;
    t.numerator = box.lower;
    for (std::size_t w = 0; w < wide.size(); ++w) {
      const std::size_t i = wide[w];
      if (mask & (std::size_t{1} << w)) {
        t.numerator[i] = add(box.upper[i], 1);
        t.coefficient = -t.coefficient;
      }
      IntVec e(d, 0);
      e[i] = 1;
      t.denominators.push_back(std::move(e));
    }
    g.terms.push_back(std::move(t));
  }
  return g;
}

namespace {

// Boxes not contained in an earlier or larger one; exact duplicates keep the first.
std::vector<Box> maximal_boxes(const std::vector<Box>& boxes) {
  std::vector<Box> out;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < boxes.size() && !covered; ++j) {
      if (i == j || !boxes[j].contains(boxes[i])) continue;
      covered = !(boxes[i] == boxes[j]) || j < i;
    }
    if (!covered) out.push_back(boxes[i]);
  }
  return out;
}

// Splits the union of `boxes` into disjoint boxes by sweeping coordinate
// `axis`; adjacent slabs met by the same boxes are merged.
void disjoint_pieces(const std::vector<Box>& boxes, std::size_t axis, Box current, std::vector<Box>& out) {
  if (boxes.empty()) return;
  const std::size_t d = current.dim();
  if (axis == d) {
    out.push_back(std::move(current));
    return;
  }
  std::vector<Int> cuts;
  for (const auto& b : boxes) {
    cuts.push_back(b.lower[axis]);
    cuts.push_back(add(b.upper[axis], 1));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::size_t> run;
  Int run_lo = 0, run_hi = 0;
  auto flush = [&] {
    if (run.empty()) return;
    std::vector<Box> active;
    for (std::size_t i : run) active.push_back(boxes[i]);
    Box slab = current;
    slab.lower[axis] = run_lo;
    slab.upper[axis] = run_hi;
    disjoint_pieces(maximal_boxes(active), axis + 1, std::move(slab), out);
    run.clear();
  };
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Int lo = cuts[c], hi = cuts[c + 1] - 1;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < boxes.size(); ++i)
      if (boxes[i].lower[axis] <= lo && boxes[i].upper[axis] >= hi) active.push_back(i);
    if (active != run) {
      flush();
      run = std::move(active);
      run_lo = lo;
    }
    run_hi = hi;
  }
  flush();
}

}  // namespace

SRF union_of_boxes(const std::vector<Box>& boxes) {
  if (boxes.empty()) throw ContractError("union of no boxes");
  const std::size_t d = boxes.front().dim();
  std::vector<Box> pieces;
  disjoint_pieces(maximal_boxes(boxes), 0, boxes.front(), pieces);
  SRF g(d);
  for (const auto& p : pieces) g = g + box_gf(p);
  Box hull_box = boxes.front();
  for (const auto& b : boxes) hull_box = hull(hull_box, b);
  g = simplify(g);
  if (!g.terms.empty()) g.support = hull_box;
  return g;
}

namespace {

SRF evaluate(const std::vector<SRF>& sets, const SetExpr& e, const Box& universe) {
  switch (e.kind) {
    case SetExpr::Kind::Leaf:
      if (e.index >= sets.size()) throw ContractError("set index out of range");
      return sets[e.index];
    case SetExpr::Kind::Complement:
      return complement(evaluate(sets, e.children.at(0), universe), universe);
    default:
      break;
  }
  if (e.children.size() < 2) throw ContractError("binary set operation needs two operands");
  SRF acc = evaluate(sets, e.children[0], universe);
  for (std::size_t i = 1; i < e.children.size(); ++i) {
    SRF rhs = evaluate(sets, e.children[i], universe);
    if (e.kind == SetExpr::Kind::Union)
      acc = set_union(acc, rhs);
    else if (e.kind == SetExpr::Kind::Intersection)
      acc = intersect(acc, rhs);
    else
      acc = set_difference(acc, rhs);
  }
  return acc;
}

}  // namespace

SRF boolean_combine(const std::vector<SRF>& sets, const SetExpr& expr, const Box& universe) {
  for (const auto& g : sets) {
    if (g.dim != universe.dim()) throw DimensionMismatch("set and universe dimensions differ");
    if (g.terms.empty()) continue;
    if (!g.support) throw UnboundedSupport("generating function carries no support box");
    if (!universe.contains(*g.support)) throw UniverseViolation("set is not contained in the universe box");
  }
  return evaluate(sets, expr, universe);
}

}  // namespace mcilp
