#include "mcilp/genfunc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "mcilp/detail/subsets.hpp"

namespace mcilp {

using detail::for_each_subset;

// ---------------------------------------------------------------------------
// Basic SRF plumbing

SRF SRF::monomial(IntVec exponent) {
  SRF g(exponent.size());
  g.support = Box(exponent, exponent);
  g.terms.push_back(GFTerm{1, std::move(exponent), {}});
  return g;
}

std::size_t SRF::max_binomials() const {
  std::size_t m = 0;
  for (const auto& t : terms) m = std::max(m, t.denominators.size());
  return m;
}

namespace {

std::optional<Box> hull_opt(const std::optional<Box>& a, const std::optional<Box>& b) {
  if (!a) return b;
  if (!b) return a;
  return hull(*a, *b);
}

}  // namespace

SRF operator+(const SRF& a, const SRF& b) {
  if (a.dim != b.dim) throw DimensionMismatch("generating functions live in different dimensions");
  SRF r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  r.support = hull_opt(a.terms.empty() ? std::nullopt : a.support, b.terms.empty() ? std::nullopt : b.support);
  return r;
}

SRF scaled(SRF g, const Rational& c) {
  if (c == 0) {
    g.terms.clear();
    g.support.reset();
    return g;
  }
  for (auto& t : g.terms) t.coefficient *= c;
  return g;
}

SRF product(const SRF& x_part, const SRF& z_part) {
  const std::size_t n = x_part.dim, k = z_part.dim;
  SRF r(n + k);
  for (const auto& tx : x_part.terms)
    for (const auto& tz : z_part.terms) {
      GFTerm t;
      t.coefficient = tx.coefficient * tz.coefficient;
      t.numerator = tx.numerator;
      t.numerator.insert(t.numerator.end(), tz.numerator.begin(), tz.numerator.end());
      for (const auto& d : tx.denominators) {
        IntVec v = d;
        v.resize(n + k, 0);
        t.denominators.push_back(std::move(v));
      }
      for (const auto& d : tz.denominators) {
        IntVec v(n, 0);
        v.insert(v.end(), d.begin(), d.end());
        t.denominators.push_back(std::move(v));
      }
      r.terms.push_back(std::move(t));
    }
  if (!r.terms.empty() && x_part.support && z_part.support) {
    IntVec lo = x_part.support->lower, hi = x_part.support->upper;
    lo.insert(lo.end(), z_part.support->lower.begin(), z_part.support->lower.end());
    hi.insert(hi.end(), z_part.support->upper.begin(), z_part.support->upper.end());
    r.support = Box(std::move(lo), std::move(hi));
  }
  return r;
}

SRF shift(const SRF& g, const IntVec& w) {
  if (w.size() != g.dim) throw DimensionMismatch("shift vector has wrong length");
  SRF r = g;
  for (auto& t : r.terms) t.numerator = t.numerator + w;
  if (r.support) r.support = Box(r.support->lower + w, r.support->upper + w);
  return r;
}

SRF affine_image(const SRF& g, const IntVec& origin, const std::vector<IntVec>& basis, std::size_t target_dim) {
  if (basis.size() != g.dim || origin.size() != target_dim) throw DimensionMismatch("affine map has wrong shape");
  auto apply = [&](const IntVec& u, bool with_origin) {
    IntVec x = with_origin ? origin : IntVec(target_dim, 0);
    for (std::size_t j = 0; j < u.size(); ++j)
      if (u[j] != 0)
        for (std::size_t i = 0; i < target_dim; ++i) x[i] = add(x[i], mul(u[j], basis[j][i]));
    return x;
  };
  SRF r(target_dim);
  r.terms.reserve(g.terms.size());
  for (const auto& t : g.terms) {
    GFTerm nt;
    nt.coefficient = t.coefficient;
    nt.numerator = apply(t.numerator, true);
    for (const auto& d : t.denominators) nt.denominators.push_back(apply(d, false));
    r.terms.push_back(std::move(nt));
  }
  if (g.support && !g.terms.empty()) {
    IntVec lo = origin, hi = origin;
    for (std::size_t j = 0; j < g.dim; ++j)
      for (std::size_t i = 0; i < target_dim; ++i) {
        Int a = mul(basis[j][i], g.support->lower[j]);
        Int b = mul(basis[j][i], g.support->upper[j]);
        lo[i] = add(lo[i], std::min(a, b));
        hi[i] = add(hi[i], std::max(a, b));
      }
    r.support = Box(std::move(lo), std::move(hi));
  }
  return r;
}

SRF monomial_substitution(const SRF& g, const IntMat& l) {
  const std::size_t n = g.dim, k = l.size();
  std::vector<IntVec> basis(n, IntVec(n + k, 0));
  for (std::size_t j = 0; j < n; ++j) {
    basis[j][j] = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (l[i].size() != n) throw DimensionMismatch("substitution matrix has wrong width");
      basis[j][n + i] = l[i][j];
    }
  }
  return affine_image(g, IntVec(n + k, 0), basis, n + k);
}

SRF simplify(const SRF& g) {
  std::map<std::pair<IntVec, std::vector<IntVec>>, Rational> merged;
  std::vector<std::pair<IntVec, std::vector<IntVec>>> order;
  for (const auto& t : g.terms) {
    if (t.coefficient == 0) continue;
    Rational c = t.coefficient;
    IntVec num = t.numerator;
    std::vector<IntVec> dens = t.denominators;
    for (auto& d : dens) {
      auto first = std::find_if(d.begin(), d.end(), [](Int x) { return x != 0; });
      if (first != d.end() && *first > 0) {
        num = num - d;
        d = -d;
        c = -c;
      }
    }
    std::sort(dens.begin(), dens.end());
    auto key = std::make_pair(std::move(num), std::move(dens));
    auto [it, inserted] = merged.try_emplace(key, c);
    if (inserted)
      order.push_back(std::move(key));
    else
      it->second += c;
  }
  SRF r(g.dim);
  for (auto& key : order) {
    const Rational& c = merged.at(key);
    if (c == 0) continue;
    r.terms.push_back(GFTerm{c, key.first, key.second});
  }
  if (!r.terms.empty()) r.support = g.support;
  return r;
}

// ---------------------------------------------------------------------------
// Cones and Barvinok's signed decomposition

Int cone_index(const Cone& c) { return iabs(determinant(columns_to_matrix(c.generators, c.apex.num.size()))); }

namespace {

Int mod_pos(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

// A nonzero element of G^{-1} Z^d / Z^d with smallest centered sup-norm,
// returned as integer numerators over D = |det G|.
IntVec short_group_element(const IntMat& g, Int det) {
  const std::size_t d = g.size();
  const Int big_d = iabs(det);
  const Int sgn = det > 0 ? 1 : -1;
  IntMat adj = adjugate(g);
  std::vector<IntVec> gens(d, IntVec(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) gens[j][i] = mod_pos(mul(adj[i][j], sgn), big_d);

  std::set<IntVec> seen;
  std::vector<IntVec> queue{IntVec(d, 0)};
  seen.insert(queue.front());
  IntVec best;
  Int best_norm = INT64_MAX;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const IntVec k = queue[head];
    if (head > 0) {
      IntVec centered(d);
      Int norm = 0;
      for (std::size_t i = 0; i < d; ++i) {
        centered[i] = 2 * k[i] > big_d ? k[i] - big_d : k[i];
        norm = std::max(norm, iabs(centered[i]));
      }
      if (norm < best_norm) {
        best_norm = norm;
        best = std::move(centered);
      }
    }
    for (const auto& gen : gens) {
      IntVec next(d);
      for (std::size_t i = 0; i < d; ++i) next[i] = (k[i] + gen[i]) % big_d;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return best;
}

void decompose_into(const std::vector<IntVec>& gens, int sign, std::size_t depth, std::vector<std::pair<int, std::vector<IntVec>>>& out,
                    DecompositionStats* stats) {
  const std::size_t d = gens.size();
  IntMat g = columns_to_matrix(gens, d);
  Int det = determinant(g);
  if (det == 0) throw NonSimplicialCone("cone generators are linearly dependent");
  if (stats) stats->max_depth = std::max(stats->max_depth, depth);
  if (iabs(det) == 1) {
    out.emplace_back(sign, gens);
    if (stats) ++stats->cones;
    return;
  }
  const Int big_d = iabs(det);
  IntVec k = short_group_element(g, det);
  if (std::all_of(k.begin(), k.end(), [](Int x) { return x <= 0; }))
    for (Int& x : k) x = -x;
  // w = G k / D is a lattice vector.
  IntVec w(d);
  for (std::size_t i = 0; i < d; ++i) {
    Wide s = 0;
    for (std::size_t j = 0; j < d; ++j) s = wadd(s, wmul(gens[j][i], k[j]));
    w[i] = narrow(s / big_d);
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (k[i] == 0) continue;
    std::vector<IntVec> child = gens;
    child[i] = w;
    decompose_into(child, k[i] > 0 ? sign : -sign, depth + 1, out, stats);
  }
}

}  // namespace

std::vector<Cone> unimodular_decompose(const Cone& c, DecompositionStats* stats) {
  if (c.generators.size() != c.apex.num.size()) throw NonSimplicialCone("cone must have exactly d generators");
  std::vector<std::pair<int, std::vector<IntVec>>> parts;
  decompose_into(c.generators, c.sign, 0, parts, stats);
  std::vector<Cone> out;
  out.reserve(parts.size());
  for (auto& [s, gens] : parts) out.push_back(Cone{c.apex, std::move(gens), s});
  return out;
}

// ---------------------------------------------------------------------------
// Lattice points of polytopes

namespace {

bool tight(const IntVec& row, Int rhs, const RatPoint& v) { return wdot(row, v.num) == wmul(rhs, v.den); }

// Pulling triangulation of the face spanned by rays[face] (dimension fd).
void triangulate(const std::vector<IntVec>& rays, const std::vector<IntVec>& normals, const std::vector<std::size_t>& face,
                 std::size_t fd, std::vector<std::size_t>& prefix, std::vector<std::vector<std::size_t>>& out) {
  if (face.size() == fd) {
    std::vector<std::size_t> cone = prefix;
    cone.insert(cone.end(), face.begin(), face.end());
    out.push_back(std::move(cone));
    return;
  }
  const std::size_t r0 = face.front();
  std::set<std::vector<std::size_t>> facets;
  for (const auto& n : normals) {
    if (dot(n, rays[r0]) == 0) continue;
    std::vector<std::size_t> sub;
    for (auto r : face)
      if (dot(n, rays[r]) == 0) sub.push_back(r);
    if (sub.size() + 1 < fd || sub.size() == face.size()) continue;
    IntMat m;
    for (auto r : sub) m.push_back(rays[r]);
    if (rank(m, rays[r0].size()) != fd - 1) continue;
    facets.insert(std::move(sub));
  }
  prefix.push_back(r0);
  for (const auto& f : facets) triangulate(rays, normals, f, fd - 1, prefix, out);
  prefix.pop_back();
}

struct VertexCone {
  RatPoint apex;
  std::vector<IntVec> rays;
  std::vector<IntVec> normals;  // a . r <= 0 on the cone
};

VertexCone tangent_cone(const IntMat& a, const IntVec& b, const RatPoint& v, std::size_t dim) {
  VertexCone vc;
  vc.apex = v;
  std::set<IntVec> normal_set;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (tight(a[i], b[i], v)) normal_set.insert(primitive(a[i]));
  vc.normals.assign(normal_set.begin(), normal_set.end());
  std::set<IntVec> ray_set;
  IntMat sub_rows;
  for_each_subset(vc.normals.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
    sub_rows.clear();
    for (auto i : idx) sub_rows.push_back(vc.normals[i]);
    if (dim > 1 && rank(sub_rows, dim) != dim - 1) return;
    IntMat ns = nullspace(sub_rows, dim);
    if (ns.size() != 1) return;
    for (int sgn : {1, -1}) {
      IntVec r = ns[0];
      if (sgn < 0) r = -r;
      bool ok = true;
      for (const auto& n : vc.normals)
        if (dot(n, r) > 0) {
          ok = false;
          break;
        }
      if (ok) ray_set.insert(r);
    }
  });
  vc.rays.assign(ray_set.begin(), ray_set.end());
  return vc;
}

IntVec moment_vector(std::size_t dim, Int t) {
  IntVec p(dim);
  Int v = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    p[i] = v;
    if (i + 1 < dim) v = mul(v, t);
  }
  return p;
}

struct UnimodularPiece {
  int sign;
  IntMat g;    // generators as columns
  IntMat inv;  // G^{-1}
};

// Direction in the interior of the vertex cone that avoids every facet
// hyperplane of the given simplicial cones.
IntVec generic_interior_direction(const VertexCone& vc, const std::vector<IntMat>& inverses, std::size_t dim) {
  IntVec c(dim, 0);
  for (const auto& r : vc.rays) c = c + r;
  std::size_t rows = 0;
  for (const auto& inv : inverses) rows += inv.size();
  for (Int t = 1;; ++t) {
    IntVec p = moment_vector(dim, t);
    Int kmin = 1;
    for (const auto& n : vc.normals) {
      Int np = dot(n, p), nc = dot(n, c);  // nc < 0
      kmin = std::max(kmin, add(floor_div(np, -nc), 1));
    }
    // Each row with <row, c> != 0 vanishes for at most one k, so some k in
    // this range avoids all of them; the remaining rows depend on p alone.
    for (Int k = kmin; k <= add(kmin, static_cast<Int>(rows)); ++k) {
      IntVec y(dim);
      for (std::size_t i = 0; i < dim; ++i) y[i] = add(mul(k, c[i]), p[i]);
      bool ok = true;
      for (const auto& inv : inverses) {
        for (const auto& row : inv)
          if (wdot(row, y) == 0) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (ok) return y;
    }
  }
}

SRF full_dimensional_gf(const IntMat& a, const IntVec& b, const std::vector<RatPoint>& verts, std::size_t dim) {
  SRF g(dim);
  for (const auto& v : verts) {
    VertexCone vc = tangent_cone(a, b, v, dim);
    std::vector<std::vector<std::size_t>> simplices;
    if (vc.rays.size() == dim) {
      std::vector<std::size_t> all(dim);
      for (std::size_t i = 0; i < dim; ++i) all[i] = i;
      simplices.push_back(all);
    } else {
      std::vector<std::size_t> all(vc.rays.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      std::vector<std::size_t> prefix;
      triangulate(vc.rays, vc.normals, all, dim, prefix, simplices);
    }
    std::vector<UnimodularPiece> pieces;
    std::vector<IntMat> inverses;
    for (const auto& s : simplices) {
      std::vector<IntVec> gens;
      for (auto i : s) gens.push_back(vc.rays[i]);
      ScaledInverse si = scaled_inverse(columns_to_matrix(gens, dim));
      inverses.push_back(si.num);
      std::vector<std::pair<int, std::vector<IntVec>>> parts;
      decompose_into(gens, 1, 0, parts, nullptr);
      for (auto& [sign, ugens] : parts) {
        IntMat m = columns_to_matrix(ugens, dim);
        IntMat inv = unimodular_inverse(m);
        inverses.push_back(inv);
        pieces.push_back(UnimodularPiece{sign, std::move(m), std::move(inv)});
      }
    }
    IntVec y = generic_interior_direction(vc, inverses, dim);
    for (const auto& piece : pieces) {
      IntVec k(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        Wide w = wdot(piece.inv[j], v.num);
        bool closed = wdot(piece.inv[j], y) > 0;
        k[j] = narrow(closed ? wceil_div(w, v.den) : wfloor_div(w, v.den) + 1);
      }
      GFTerm t;
      t.coefficient = piece.sign;
      t.numerator = mat_vec(piece.g, k);
      for (std::size_t j = 0; j < dim; ++j) {
        IntVec col(dim);
        for (std::size_t i = 0; i < dim; ++i) col[i] = piece.g[i][j];
        t.denominators.push_back(std::move(col));
      }
      g.terms.push_back(std::move(t));
    }
  }
  return g;
}

std::optional<Box> box_of_vertices(const std::vector<RatPoint>& verts, std::size_t dim) {
  if (verts.empty()) return std::nullopt;
  IntVec lo(dim, INT64_MAX), hi(dim, INT64_MIN);
  for (const auto& v : verts)
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = std::min(lo[i], ceil_div(v.num[i], v.den));
      hi[i] = std::max(hi[i], floor_div(v.num[i], v.den));
    }
  for (std::size_t i = 0; i < dim; ++i)
    if (lo[i] > hi[i]) return std::nullopt;
  return Box(std::move(lo), std::move(hi));
}

}  // namespace

SRF lattice_points_gf(const IntMat& a_in, const IntVec& b_in, const IntMat& eq, const IntVec& eq_rhs, std::size_t dim) {
  if (a_in.size() != b_in.size() || eq.size() != eq_rhs.size()) throw DimensionMismatch("row counts differ");
  if (!eq.empty()) {
    auto lat = solve_integer(eq, eq_rhs, dim);
    if (!lat) return SRF::empty(dim);
    const std::size_t r = lat->basis.size();
    IntMat a2(a_in.size(), IntVec(r));
    IntVec b2(a_in.size());
    for (std::size_t i = 0; i < a_in.size(); ++i) {
      for (std::size_t j = 0; j < r; ++j) a2[i][j] = dot(a_in[i], lat->basis[j]);
      b2[i] = sub(b_in[i], dot(a_in[i], lat->origin));
    }
    SRF sub_gf = lattice_points_gf(a2, b2, {}, {}, r);
    if (sub_gf.terms.empty()) return SRF::empty(dim);
    SRF out = affine_image(sub_gf, lat->origin, lat->basis, dim);
    // Tighter support from the image of the reduced polytope's vertices.
    std::vector<RatPoint> img;
    for (const auto& v : vertex_points(a2, b2, r)) {
      RatPoint p{lat->origin, v.den};
      for (auto& x : p.num) x = mul(x, v.den);
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < dim; ++i) p.num[i] = add(p.num[i], mul(v.num[j], lat->basis[j][i]));
      img.push_back(std::move(p));
    }
    if (auto box = box_of_vertices(img, dim)) out.support = intersect(*out.support, *box);
    return out;
  }

  // Tighten rows for integer points: a x <= b with g | a becomes (a/g) x <= floor(b/g).
  std::map<IntVec, Int> rows;
  for (std::size_t i = 0; i < a_in.size(); ++i) {
    if (a_in[i].size() != dim) throw DimensionMismatch("constraint row has wrong length");
    Int g = vec_gcd(a_in[i]);
    if (g == 0) {
      if (b_in[i] < 0) return SRF::empty(dim);
      continue;
    }
    IntVec row = a_in[i];
    for (Int& x : row) x /= g;
    Int rhs = floor_div(b_in[i], g);
    auto [it, inserted] = rows.try_emplace(row, rhs);
    if (!inserted) it->second = std::min(it->second, rhs);
  }
  IntMat a;
  IntVec b;
  for (auto& [row, rhs] : rows) {
    a.push_back(row);
    b.push_back(rhs);
  }
  if (dim == 0) return SRF::monomial({});

  auto verts = vertex_points(a, b, dim);
  if (verts.empty()) return SRF::empty(dim);

  // Rows tight at every vertex are implicit equalities.
  IntMat implicit_eq, rest;
  IntVec implicit_rhs, rest_b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool all_tight = std::all_of(verts.begin(), verts.end(), [&](const RatPoint& v) { return tight(a[i], b[i], v); });
    if (all_tight) {
      implicit_eq.push_back(a[i]);
      implicit_rhs.push_back(b[i]);
    } else {
      rest.push_back(a[i]);
      rest_b.push_back(b[i]);
    }
  }
  if (!implicit_eq.empty()) return lattice_points_gf(rest, rest_b, implicit_eq, implicit_rhs, dim);

  auto box = box_of_vertices(verts, dim);
  if (!box) return SRF::empty(dim);
  SRF g = full_dimensional_gf(a, b, verts, dim);
  g.support = box;
  return g;
}

SRF gf_of_polytope(const Polyhedron& p) {
  if (!is_bounded(p)) throw UnboundedPolyhedron("polyhedron is unbounded");
  return lattice_points_gf(p.a(), p.b(), {}, {}, p.dim());
}

// ---------------------------------------------------------------------------
// Orientation

IntVec pick_generic_lambda(const std::vector<IntVec>& denominators, std::size_t dim) {
  std::set<IntVec> distinct(denominators.begin(), denominators.end());
  for (Int t = 1;; ++t) {
    IntVec lambda = moment_vector(dim, t);
    bool ok = true;
    for (const auto& d : distinct)
      if (wdot(lambda, d) == 0) {
        ok = false;
        break;
      }
    if (ok) return lambda;
  }
}

IntVec pick_generic_lambda(const SRF& g) {
  std::vector<IntVec> dens;
  for (const auto& t : g.terms) dens.insert(dens.end(), t.denominators.begin(), t.denominators.end());
  return pick_generic_lambda(dens, g.dim);
}

bool is_generic(const SRF& g, const IntVec& lambda) {
  for (const auto& t : g.terms)
    for (const auto& d : t.denominators)
      if (wdot(lambda, d) == 0) return false;
  return true;
}

SRF normalize_orientation(const SRF& g, const IntVec& lambda) {
  if (lambda.size() != g.dim) throw DimensionMismatch("lambda has wrong length");
  SRF r = g;
  for (auto& t : r.terms)
    for (auto& d : t.denominators) {
      Wide s = wdot(lambda, d);
      if (s == 0) throw NonGenericLambda("lambda is orthogonal to a denominator vector");
      if (s > 0) {
        t.numerator = t.numerator - d;
        d = -d;
        t.coefficient = -t.coefficient;
      }
    }
  return r;
}

bool is_normalized(const SRF& g, const IntVec& lambda) {
  for (const auto& t : g.terms)
    for (const auto& d : t.denominators)
      if (wdot(lambda, d) >= 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Series arithmetic for specialization

const std::vector<Rational>& bernoulli_numbers(std::size_t n) {
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    const std::size_t m = cache.size();
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    Rational s = 0;
    Integer binom = 1;
    for (std::size_t k = 0; k < m; ++k) {
      s += Rational(binom) * cache[k];
      binom = binom * static_cast<unsigned long>(m + 1 - k) / static_cast<unsigned long>(k + 1);
    }
    cache.push_back(-s / Rational(static_cast<unsigned long>(m + 1)));
  }
  return cache;
}

namespace {

using Series = std::vector<Rational>;

Integer factorial(std::size_t n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Series mul_trunc(const Series& a, const Series& b, std::size_t n) {
  Series r(n + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && i <= n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= n; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series exp_series(const Integer& a, std::size_t n) {
  Series r(n + 1);
  Integer pw = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    r[i] = Rational(pw, factorial(i));
    r[i].canonicalize();
    pw *= a;
  }
  return r;
}

// z / (e^z - 1) at z = b t.
Series todd_series(const Integer& b, std::size_t n) {
  const auto& bern = bernoulli_numbers(n);
  Series r(n + 1);
  Integer pw = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    r[i] = bern[i] * Rational(pw) / Rational(factorial(i));
    pw *= b;
  }
  return r;
}

Integer idot(std::span<const Int> a, std::span<const Int> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += integer(a[i]) * integer(b[i]);
  return s;
}

// t^{p+1} * sum_{m >= 0} m^p e^{b t m}, truncated at degree n.
Series power_pole_series(unsigned p, const Integer& b, std::size_t n) {
  const auto& bern = bernoulli_numbers(n + 2);
  Series q(n + 1, Rational(0));
  Integer bp1;
  mpz_pow_ui(bp1.get_mpz_t(), b.get_mpz_t(), p + 1);
  q[0] = Rational(factorial(p)) / Rational(bp1);
  if (p % 2 == 0) q[0] = -q[0];
  Integer br = 1;
  for (std::size_t i = p + 1; i <= n; ++i) {
    const std::size_t r = i - p - 1;
    // -B_{r+p+1} / ((r+p+1) r!) * b^r
    q[i] = -bern[r + p + 1] * Rational(br) / Rational(factorial(r) * static_cast<unsigned long>(r + p + 1));
    br *= b;
  }
  return q;
}

// Constant term of e^{a t} prod_j 1/(1 - e^{b_j t}).
Rational constant_term(const Integer& a, const std::vector<Integer>& b) {
  const std::size_t s = b.size();
  Series acc = exp_series(a, s);
  for (const auto& bj : b) acc = mul_trunc(acc, todd_series(bj, s), s);
  Rational r = acc[s];
  for (const auto& bj : b) r /= Rational(bj);
  if (s % 2 == 1) r = -r;
  return r;
}

IntMat denominator_matrix(const GFTerm& t, std::size_t dim) { return columns_to_matrix(t.denominators, dim); }

// sum_{mu >= 0} h(mu) e^{t (a + <b, mu>)} at t^0 for polynomials h in mu whose
// exponents stay below a fixed bound. Partial products of the per-coordinate
// series are shared between monomials with a common exponent prefix.
class ConstantTermEvaluator {
 public:
  ConstantTermEvaluator(const Integer& a, std::vector<Integer> b, std::vector<unsigned> max_exp)
      : b_(std::move(b)), max_exp_(std::move(max_exp)) {
    const std::size_t s = b_.size();
    pmax_ = 0;
    for (auto m : max_exp_) pmax_ += m + 1;
    q_.resize(s);
    for (std::size_t j = 0; j < s; ++j)
      for (unsigned p = 0; p <= max_exp_[j]; ++p) q_[j].push_back(power_pole_series(p, b_[j], pmax_));
    ex_ = exp_series(a, pmax_);
  }

  Rational operator()(const Polynomial& h) {
    const std::size_t s = b_.size();
    Rational total = 0;
    if (s == 0) {
      for (const auto& [e, c] : h.terms()) total += c * ex_[0];
      return total;
    }
    Rational coef;
    for (const auto& [e, c] : h.terms()) {
      std::size_t order = 0;
      for (std::size_t j = 0; j < s; ++j) {
        if (e[j] > max_exp_[j]) throw std::logic_error("exponent beyond the evaluator bound");
        order += e[j] + 1;
      }
      const Series& head = prefix(e, s - 1);
      const Series& last = q_[s - 1][e[s - 1]];
      coef = 0;
      for (std::size_t i = 0; i <= order; ++i)
        if (head[i] != 0 && last[order - i] != 0) coef += head[i] * last[order - i];
      total += c * coef;
    }
    return total;
  }

 private:
  // e^{a t} times the series of the first `len` coordinates, truncated where
  // no monomial with this prefix can reach.
  const Series& prefix(const std::vector<unsigned>& e, std::size_t len) {
    if (len == 0) return ex_;
    std::vector<unsigned> key(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(len));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::size_t bound = 0;
    for (std::size_t j = 0; j < b_.size(); ++j) bound += (j < len ? e[j] : max_exp_[j]) + 1;
    Series r = mul_trunc(prefix(e, len - 1), q_[len - 1][e[len - 1]], bound);
    return memo_.emplace(std::move(key), std::move(r)).first->second;
  }

  std::vector<Integer> b_;
  std::vector<unsigned> max_exp_;
  std::size_t pmax_ = 0;
  std::vector<std::vector<Series>> q_;
  Series ex_;
  std::map<std::vector<unsigned>, Series> memo_;
};

std::vector<unsigned> max_exponents(const Polynomial& h, std::size_t s) {
  std::vector<unsigned> m(s, 0);
  for (const auto& [e, c] : h.terms())
    for (std::size_t j = 0; j < s; ++j) m[j] = std::max(m[j], e[j]);
  return m;
}

}  // namespace

Rational specialize(const SRF& g, const IntVec& lambda) {
  Rational total = 0;
  for (const auto& t : g.terms) {
    std::vector<Integer> b;
    for (const auto& d : t.denominators) {
      b.push_back(idot(lambda, d));
      if (b.back() == 0) throw NonGenericLambda("lambda is orthogonal to a denominator vector");
    }
    total += t.coefficient * constant_term(idot(lambda, t.numerator), b);
  }
  return total;
}

Integer specialize_count(const SRF& g) {
  Rational r = specialize(g, pick_generic_lambda(g));
  if (r.get_den() != 1) throw std::logic_error("generating function does not encode a finite set");
  return r.get_num();
}

std::vector<Rational> power_sums(const SRF& g, const Polynomial& f, unsigned smax) {
  if (f.nvars() != g.dim) throw DimensionMismatch("polynomial variable count differs from dimension");
  std::vector<Rational> sums(smax, Rational(0));
  if (smax == 0) return sums;
  IntVec lambda = pick_generic_lambda(g);
  for (const auto& t : g.terms) {
    const std::size_t s = t.denominators.size();
    Integer a = idot(lambda, t.numerator);
    std::vector<Integer> b;
    for (const auto& d : t.denominators) b.push_back(idot(lambda, d));
    Polynomial ft = f.compose_affine(t.numerator, denominator_matrix(t, g.dim), s);
    std::vector<unsigned> top = max_exponents(ft, s);
    for (auto& m : top) m *= smax;
    ConstantTermEvaluator eval(a, b, top);
    Polynomial cur = ft;
    for (unsigned j = 0; j < smax; ++j) {
      sums[j] += t.coefficient * eval(cur);
      if (j + 1 < smax) cur = cur * ft;
    }
  }
  return sums;
}

Rational weighted_specialize(const SRF& g, const Polynomial& f, unsigned s) {
  if (f.nvars() != g.dim) throw DimensionMismatch("polynomial variable count differs from dimension");
  IntVec lambda = pick_generic_lambda(g);
  Rational total = 0;
  for (const auto& t : g.terms) {
    const std::size_t nd = t.denominators.size();
    std::vector<Integer> b;
    for (const auto& d : t.denominators) b.push_back(idot(lambda, d));
    Polynomial h = f.compose_affine(t.numerator, denominator_matrix(t, g.dim), nd).pow(s);
    if (h.is_zero()) continue;
    ConstantTermEvaluator eval(idot(lambda, t.numerator), b, max_exponents(h, nd));
    total += t.coefficient * eval(h);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Partial specialization

namespace {

// Coefficients of A_r with sum_{m >= 0} m^r X^m = A_r(X) / (1 - X)^{r+1}.
const std::vector<Integer>& eulerian(std::size_t r) {
  static std::mutex mu;
  static std::vector<std::vector<Integer>> cache{{Integer(1)}};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= r) {
    const auto& prev = cache.back();
    const std::size_t n = cache.size() - 1;  // prev = A_n
    // A_{n+1} = X (1 - X) A_n' + (n + 1) X A_n
    std::vector<Integer> next(prev.size() + 1, Integer(0));
    for (std::size_t i = 0; i < prev.size(); ++i) {
      if (i > 0) {
        next[i] += Integer(static_cast<unsigned long>(i)) * prev[i];
        next[i + 1] -= Integer(static_cast<unsigned long>(i)) * prev[i];
      }
      next[i + 1] += Integer(static_cast<unsigned long>(n + 1)) * prev[i];
    }
    while (next.size() > 1 && next.back() == 0) next.pop_back();
    cache.push_back(std::move(next));
  }
  return cache[r];
}

void for_each_composition(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    fn(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t v = 0; v <= total; ++v) {
    cur.push_back(v);
    for_each_composition(total - v, parts, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

SRF specialize_coordinates(const SRF& g, const std::vector<std::size_t>& coords) {
  std::vector<bool> drop(g.dim, false);
  for (auto c : coords) {
    if (c >= g.dim) throw DimensionMismatch("coordinate index out of range");
    drop[c] = true;
  }
  std::vector<std::size_t> keep_idx, drop_idx;
  for (std::size_t i = 0; i < g.dim; ++i) (drop[i] ? drop_idx : keep_idx).push_back(i);
  auto restrict_to = [](const IntVec& v, const std::vector<std::size_t>& idx) {
    IntVec r;
    r.reserve(idx.size());
    for (auto i : idx) r.push_back(v[i]);
    return r;
  };

  std::vector<IntVec> pole_dirs;
  for (const auto& t : g.terms)
    for (const auto& d : t.denominators)
      if (is_zero(restrict_to(d, keep_idx))) pole_dirs.push_back(restrict_to(d, drop_idx));
  const IntVec lambda = pick_generic_lambda(pole_dirs, drop_idx.size());

  SRF out(keep_idx.size());
  for (const auto& t : g.terms) {
    IntVec c_keep = restrict_to(t.numerator, keep_idx);
    std::vector<Integer> b0;
    std::vector<IntVec> d1_keep;
    std::vector<Integer> b1;
    for (const auto& d : t.denominators) {
      IntVec dk = restrict_to(d, keep_idx);
      Integer bd = idot(lambda, restrict_to(d, drop_idx));
      if (is_zero(dk)) {
        b0.push_back(bd);
      } else {
        d1_keep.push_back(std::move(dk));
        b1.push_back(bd);
      }
    }
    if (b0.empty()) {
      out.terms.push_back(GFTerm{t.coefficient, std::move(c_keep), std::move(d1_keep)});
      continue;
    }
    const std::size_t m = b0.size();
    Series scalar = exp_series(idot(lambda, restrict_to(t.numerator, drop_idx)), m);
    for (const auto& bj : b0) scalar = mul_trunc(scalar, todd_series(bj, m), m);
    Rational factor = t.coefficient;
    for (const auto& bj : b0) factor /= Rational(bj);
    if (m % 2 == 1) factor = -factor;

    std::vector<std::size_t> cur;
    for_each_composition(m, d1_keep.size() + 1, cur, [&](const std::vector<std::size_t>& r) {
      if (scalar[r[0]] == 0) return;
      Rational base = factor * scalar[r[0]];
      std::vector<IntVec> dens;
      for (std::size_t j = 0; j < d1_keep.size(); ++j) {
        const std::size_t rj = r[j + 1];
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), b1[j].get_mpz_t(), rj);
        base *= Rational(pw) / Rational(factorial(rj));
        for (std::size_t k = 0; k <= rj; ++k) dens.push_back(d1_keep[j]);
      }
      if (base == 0) return;
      // Expand prod_j A_{r_j}(x^{d_j}) into monomials.
      std::vector<std::pair<IntVec, Rational>> nums{{c_keep, base}};
      for (std::size_t j = 0; j < d1_keep.size(); ++j) {
        const auto& poly = eulerian(r[j + 1]);
        std::vector<std::pair<IntVec, Rational>> next;
        for (const auto& [num, coef] : nums)
          for (std::size_t i = 0; i < poly.size(); ++i) {
            if (poly[i] == 0) continue;
            IntVec n2 = num;
            for (std::size_t k = 0; k < n2.size(); ++k) n2[k] = add(n2[k], mul(static_cast<Int>(i), d1_keep[j][k]));
            next.emplace_back(std::move(n2), coef * Rational(poly[i]));
          }
        nums = std::move(next);
      }
      for (auto& [num, coef] : nums) out.terms.push_back(GFTerm{coef, std::move(num), dens});
    });
  }
  if (g.support && !g.terms.empty()) out.support = Box(restrict_to(g.support->lower, keep_idx), restrict_to(g.support->upper, keep_idx));
  return simplify(out);
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize(const SRF& g) {
  std::ostringstream os;
  os << "dim=" << g.dim << " terms=" << g.terms.size() << '\n';
  for (const auto& t : g.terms) {
    os << to_fraction_string(t.coefficient) << " ; " << to_string(t.numerator, ",") << " ; ";
    for (std::size_t j = 0; j < t.denominators.size(); ++j) os << (j ? "| " : "") << to_string(t.denominators[j], ",");
    os << '\n';
  }
  if (g.support && !g.terms.empty())
    os << "box ; " << to_string(g.support->lower, ",") << " ; " << to_string(g.support->upper, ",") << '\n';
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Int parse_int(const std::string& text) {
  std::string s = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed integer '" + s + "'");
  }
  if (used != s.size()) throw ParseError("malformed integer '" + s + "'");
  return v;
}

IntVec parse_vec(const std::string& text, std::size_t dim) {
  std::string s = trim(text);
  IntVec v;
  if (!s.empty())
    for (const auto& tok : split(s, ',')) v.push_back(parse_int(tok));
  if (v.size() != dim) throw ParseError("vector '" + s + "' does not have " + std::to_string(dim) + " entries");
  return v;
}

}  // namespace

SRF parse_srf(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ParseError("missing generating-function header");
  std::size_t dim = 0, count = 0;
  {
    std::istringstream hs(trim(line));
    std::string a, b, extra;
    if (!(hs >> a >> b) || (hs >> extra) || a.rfind("dim=", 0) != 0 || b.rfind("terms=", 0) != 0)
      throw ParseError("malformed header '" + line + "'");
    Int d = parse_int(a.substr(4)), t = parse_int(b.substr(6));
    if (d < 0 || t < 0) throw ParseError("negative size in header");
    dim = static_cast<std::size_t>(d);
    count = static_cast<std::size_t>(t);
  }
  SRF g(dim);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(is, line)) throw ParseError("fewer terms than announced");
    auto parts = split(line, ';');
    if (parts.size() != 3) throw ParseError("term line needs three ';'-separated fields");
    GFTerm t;
    t.coefficient = parse_rational(trim(parts[0]));
    t.numerator = parse_vec(parts[1], dim);
    std::string dens = trim(parts[2]);
    if (!dens.empty())
      for (const auto& d : split(dens, '|')) t.denominators.push_back(parse_vec(d, dim));
    g.terms.push_back(std::move(t));
  }
  while (std::getline(is, line)) {
    std::string s = trim(line);
    if (s.empty()) continue;
    auto parts = split(s, ';');
    if (parts.size() != 3 || trim(parts[0]) != "box" || g.support) throw ParseError("unexpected trailing line '" + s + "'");
    g.support = Box(parse_vec(parts[1], dim), parse_vec(parts[2], dim));
  }
  return g;
}

}  // namespace mcilp
