#include "mcilp/linalg.hpp"

#include <algorithm>
#include <utility>

namespace mcilp {

RatVec RatPoint::to_rational() const {
  RatVec r;
  r.reserve(num.size());
  for (Int x : num) r.push_back(rational(x, den));
  return r;
}

namespace {

using WideMat = std::vector<std::vector<Wide>>;

WideMat widen(const IntMat& m, std::size_t cols) {
  WideMat w(m.size(), std::vector<Wide>(cols));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) w[i][j] = m[i][j];
  return w;
}

// Bareiss elimination in place. Returns the rank; `sign` tracks row swaps and
// `last_pivot` ends as the determinant of the leading full-rank block.
std::size_t bareiss(WideMat& a, std::size_t cols, int& sign, Wide& last_pivot) {
  const std::size_t rows = a.size();
  sign = 1;
  last_pivot = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Wide v = wadd(wmul(a[r][c], a[i][j]), -wmul(a[i][c], a[r][j]));
        a[i][j] = v / last_pivot;
      }
      a[i][c] = 0;
    }
    last_pivot = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace

Int determinant(const IntMat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  WideMat a = widen(m, n);
  int sign = 1;
  Wide piv = 1;
  if (bareiss(a, n, sign, piv) < n) return 0;
  return narrow(sign * a[n - 1][n - 1]);
}

std::size_t rank(const IntMat& m, std::size_t cols) {
  if (m.empty() || cols == 0) return 0;
  WideMat a = widen(m, cols);
  int sign = 1;
  Wide piv = 1;
  return bareiss(a, cols, sign, piv);
}

IntMat adjugate(const IntMat& m) {
  const std::size_t n = m.size();
  IntMat adj(n, IntVec(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  IntMat minor(n - 1, IntVec(n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor[rr][cc++] = m[r][c];
        }
        ++rr;
      }
      Int d = determinant(minor);
      adj[j][i] = ((i + j) % 2 == 0) ? d : sub(0, d);
    }
  }
  return adj;
}

ScaledInverse scaled_inverse(const IntMat& m) {
  Int det = determinant(m);
  if (det == 0) throw ContractError("singular matrix");
  IntMat adj = adjugate(m);
  if (det < 0) {
    det = -det;
    for (auto& row : adj)
      for (Int& x : row) x = -x;
  }
  Int g = det;
  for (const auto& row : adj) g = std::gcd(g, vec_gcd(row));
  if (g > 1) {
    det /= g;
    for (auto& row : adj)
      for (Int& x : row) x /= g;
  }
  return {std::move(adj), det};
}

IntMat unimodular_inverse(const IntMat& m) {
  ScaledInverse inv = scaled_inverse(m);
  if (inv.den != 1) throw ContractError("matrix is not unimodular");
  return std::move(inv.num);
}

namespace {

constexpr std::size_t kSmall = 8;

// Fraction-free Gauss-Jordan on [m | rhs]: every diagonal entry ends as the
// determinant d of the row-permuted system and the last column as d * x.
std::optional<RatPoint> solve_small(const IntMat& m, const IntVec& rhs) {
  const std::size_t n = m.size();
  Wide a[kSmall][kSmall + 1];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n] = rhs[i];
  }
  Wide prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k)
      for (std::size_t j = 0; j <= n; ++j) std::swap(a[p][j], a[k][j]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == k) continue;
        a[i][j] = wadd(wmul(a[k][k], a[i][j]), -wmul(a[i][k], a[k][j])) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Wide det = a[0][0];
  Wide g = det < 0 ? -det : det;
  for (std::size_t i = 0; i < n; ++i) {
    Wide x = a[i][n] < 0 ? -a[i][n] : a[i][n];
    while (x != 0) {
      Wide t = g % x;
      g = x;
      x = t;
    }
  }
  if (det < 0) g = -g;
  RatPoint pt;
  pt.num.resize(n);
  for (std::size_t i = 0; i < n; ++i) pt.num[i] = narrow(a[i][n] / g);
  pt.den = narrow(det / g);
  return pt;
}

}  // namespace

std::optional<RatPoint> solve(const IntMat& m, const IntVec& rhs) {
  const std::size_t n = m.size();
  if (n > 0 && n <= kSmall) return solve_small(m, rhs);
  // Cramer's rule through the adjugate keeps everything integral.
  Int det = determinant(m);
  if (det == 0) return std::nullopt;
  RatPoint p;
  p.num.resize(n);
  IntMat col = m;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i][j] = rhs[i];
    p.num[j] = determinant(col);
    for (std::size_t i = 0; i < n; ++i) col[i][j] = m[i][j];
  }
  if (det < 0) {
    det = -det;
    for (Int& x : p.num) x = -x;
  }
  Int g = std::gcd(det, vec_gcd(p.num));
  if (g > 1) {
    det /= g;
    for (Int& x : p.num) x /= g;
  }
  p.den = det;
  return p;
}

IntMat nullspace(const IntMat& m, std::size_t cols) {
  // Rational reduced row echelon form, then one primitive vector per free column.
  std::vector<RatVec> a(m.size(), RatVec(cols));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = rational(m[i][j]);
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  IntMat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), f) != pivot_cols.end()) continue;
    RatVec v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][f];
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVec iv(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      Rational s = v[j] * l;
      iv[j] = to_int(s.get_num());
    }
    basis.push_back(primitive(std::move(iv)));
  }
  return basis;
}

std::optional<AffineLattice> solve_integer(const IntMat& e_mat, const IntVec& e_rhs, std::size_t cols) {
  // Column-style Hermite reduction: track U with E*U lower echelon.
  IntMat a = e_mat;
  IntMat u(cols, IntVec(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;
  auto col_axpy = [&](std::size_t dst, std::size_t src, Int q) {
    // column dst -= q * column src
    for (auto& row : a) row[dst] = sub(row[dst], mul(q, row[src]));
    for (auto& row : u) row[dst] = sub(row[dst], mul(q, row[src]));
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  std::vector<std::optional<std::size_t>> row_pivot(a.size());
  std::size_t col = 0;
  for (std::size_t i = 0; i < a.size() && col < cols; ++i) {
    while (true) {
      std::size_t best = cols;
      for (std::size_t j = col; j < cols; ++j)
        if (a[i][j] != 0 && (best == cols || iabs(a[i][j]) < iabs(a[i][best]))) best = j;
      if (best == cols) break;
      if (best != col) col_swap(best, col);
      bool done = true;
      for (std::size_t j = col + 1; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        col_axpy(j, col, a[i][j] / a[i][col]);
        if (a[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (a[i][col] != 0) {
      row_pivot[i] = col;
      ++col;
    }
  }
  // Forward substitution for y with (E U) y = e.
  std::vector<Wide> y(cols, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Wide acc = e_rhs[i];
    std::size_t limit = row_pivot[i] ? *row_pivot[i] : col;
    for (std::size_t j = 0; j < limit; ++j) acc = wadd(acc, -wmul(a[i][j], y[j]));
    if (row_pivot[i]) {
      Int p = a[i][*row_pivot[i]];
      if (acc % p != 0) return std::nullopt;
      y[*row_pivot[i]] = acc / p;
    } else if (acc != 0) {
      return std::nullopt;
    }
  }
  AffineLattice lat;
  lat.origin.assign(cols, 0);
  for (std::size_t r = 0; r < cols; ++r) {
    Wide s = 0;
    for (std::size_t j = 0; j < col; ++j) s = wadd(s, wmul(u[r][j], y[j]));
    lat.origin[r] = narrow(s);
  }
  for (std::size_t j = col; j < cols; ++j) {
    IntVec v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][j];
    lat.basis.push_back(std::move(v));
  }
  return lat;
}

IntMat columns_to_matrix(const std::vector<IntVec>& cols, std::size_t rows) {
  IntMat m(rows, IntVec(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  return m;
}

Int lattice_index(const std::vector<IntVec>& gens) {
  if (gens.empty()) return 1;
  const std::size_t n = gens[0].size();
  const std::size_t s = gens.size();
  IntMat full = columns_to_matrix(gens, n);
  if (s == n) return iabs(determinant(full));
  // gcd over all s-row minors.
  Int g = 0;
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  while (true) {
    IntMat sq(s);
    for (std::size_t i = 0; i < s; ++i) sq[i] = full[idx[i]];
    g = std::gcd(g, iabs(determinant(sq)));
    if (g == 1) return 1;
    std::size_t k = s;
    while (k > 0 && idx[k - 1] == n - s + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t i = k; i < s; ++i) idx[i] = idx[i - 1] + 1;
  }
  return g;
}

}  // namespace mcilp
