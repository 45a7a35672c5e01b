#include "mcilp/select.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mcilp/detail/subsets.hpp"
#include "mcilp/setops.hpp"

namespace mcilp {

using detail::for_each_subset;

namespace {

Int lcm_checked(Int a, Int b) { return mul(a / std::gcd(a, b), b); }

Box cube_at(const IntVec& center, Int r) {
  IntVec lo(center.size()), hi(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    lo[i] = sub(center[i], r);
    hi[i] = add(center[i], r);
  }
  return Box(std::move(lo), std::move(hi));
}

Int effective_bound(const SRF& g, Int m) {
  if (g.support) m = std::max(m, g.support->max_abs());
  return std::max<Int>(m, 1);
}

Int max_abs(const IntVec& v) {
  Int r = 0;
  for (Int x : v) r = std::max(r, iabs(x));
  return r;
}

SRF restrict_to(const SRF& g, const Polyhedron& p) { return restrict_to_polytope(g, p); }

SRF restrict_to(const SRF& g, const Box& b) { return restrict_to_polytope(g, Polyhedron::from_box(b)); }

// First point of an encoded set in the given order.
IntVec first_point(const SRF& g, Int m, const TermOrder& order) {
  auto oracle = std::make_shared<SrfSlabOracle>(g, m, g.dim, order);
  EnumerationStream stream(oracle, order, m);
  auto w = stream.next();
  if (!w) throw EmptySet("encoded set is empty");
  return *w;
}

void require_dim(const SRF& g, std::size_t k, const char* what) {
  if (g.dim != k) throw DimensionMismatch(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Polyhedral norms

PolyhedralNorm PolyhedralNorm::from_inequalities(IntMat a, IntVec b, std::size_t k) {
  if (k == 0) throw InvalidNorm("norm dimension must be positive");
  if (a.size() != b.size() || a.empty()) throw InvalidNorm("unit ball needs matching, nonempty A and b");
  for (const auto& row : a)
    if (row.size() != k) throw InvalidNorm("unit ball row has wrong length");
  for (Int x : b)
    if (x <= 0) throw InvalidNorm("unit ball right-hand side must be positive");
  Polyhedron q(a, b, k);
  if (!is_bounded(q)) throw InvalidNorm("unit ball is unbounded");
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [lo, hi] = objective_bounds(q, a[i]);
    (void)hi;
    if (-lo > rational(b[i])) throw InvalidNorm("unit ball is not centrally symmetric");
  }
  return PolyhedralNorm{std::move(a), std::move(b), k};
}

PolyhedralNorm PolyhedralNorm::from_vertices(const std::vector<IntVec>& vertices) {
  if (vertices.empty()) throw InvalidNorm("vertex list is empty");
  const std::size_t k = vertices.front().size();
  if (k == 0) throw InvalidNorm("norm dimension must be positive");
  for (const auto& v : vertices)
    if (v.size() != k) throw InvalidNorm("vertices have different lengths");
  std::set<IntVec> rows;
  for_each_subset(vertices.size(), k, [&](const std::vector<std::size_t>& idx) {
    IntMat m;
    for (std::size_t i : idx) m.push_back(vertices[i]);
    auto sol = solve(m, IntVec(k, 1));
    if (!sol) return;
    for (const auto& v : vertices)
      if (dot(sol->num, v) > sol->den) return;
    IntVec row = sol->num;
    row.push_back(sol->den);
    rows.insert(primitive(std::move(row)));
  });
  IntMat a;
  IntVec b;
  for (const auto& r : rows) {
    a.emplace_back(r.begin(), r.end() - 1);
    b.push_back(r.back());
  }
  if (a.empty()) throw InvalidNorm("vertices do not surround the origin");
  PolyhedralNorm n = from_inequalities(std::move(a), std::move(b), k);
  std::set<IntVec> given(vertices.begin(), vertices.end());
  for (const auto& v : mcilp::vertices(Polyhedron(n.a, n.b, k)))
    if (!v.is_integral() || !given.contains(v.num)) throw InvalidNorm("origin is not interior to the vertex hull");
  return n;
}

PolyhedralNorm PolyhedralNorm::linf(std::size_t k) {
  IntMat a;
  for (std::size_t i = 0; i < k; ++i)
    for (Int s : {1, -1}) {
      IntVec row(k, 0);
      row[i] = s;
      a.push_back(std::move(row));
    }
  return PolyhedralNorm{a, IntVec(a.size(), 1), k};
}

PolyhedralNorm PolyhedralNorm::l1(std::size_t k) {
  IntMat a;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    IntVec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = (mask >> i) & 1 ? -1 : 1;
    a.push_back(std::move(row));
  }
  return PolyhedralNorm{a, IntVec(a.size(), 1), k};
}

Int PolyhedralNorm::max_entry() const {
  Int r = 1;
  for (const auto& row : a) r = std::max(r, max_abs(row));
  return r;
}

Int PolyhedralNorm::granularity() const {
  Int l = 1;
  for (Int x : b) l = lcm_checked(l, x);
  return l;
}

Polyhedron PolyhedralNorm::scaled_ball(const IntVec& vhat, Int j) const {
  const Int l = granularity();
  IntMat rows;
  IntVec rhs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    IntVec row(k);
    for (std::size_t c = 0; c < k; ++c) row[c] = mul(l, a[i][c]);
    rhs.push_back(add(mul(j, b[i]), dot(row, vhat)));
    rows.push_back(std::move(row));
  }
  return Polyhedron(std::move(rows), std::move(rhs), k);
}

Rational minkowski_distance(const PolyhedralNorm& q, const IntVec& vhat, const IntVec& v) {
  if (v.size() != q.k || vhat.size() != q.k) throw DimensionMismatch("point dimension differs from norm");
  IntVec y = v - vhat;
  Rational best = 0;
  for (std::size_t i = 0; i < q.a.size(); ++i) best = std::max(best, rational(dot(q.a[i], y), q.b[i]));
  return best;
}

// ---------------------------------------------------------------------------
// Pseudo-norms

PseudoNorm PseudoNorm::make(Polynomial q, unsigned degree, Rational alpha, Rational beta) {
  if (degree == 0 || degree % 2 != 0) throw InvalidNorm("pseudo-norm degree must be even and positive");
  if (q.is_zero() || !q.is_homogeneous(degree)) throw InvalidNorm("q must be homogeneous of the stated degree");
  if (alpha <= 0 || alpha > beta) throw InvalidNorm("need 0 < alpha <= beta");
  const std::size_t k = q.nvars();
  Rational ad = 1, bd = 1;
  for (unsigned i = 0; i < degree; ++i) {
    ad *= alpha;
    bd *= beta;
  }
  // Grid of step 1/G on the boundary of [-1, 1]^k.
  constexpr Int grid = 8;
  IntVec idx(k, -grid);
  for (;;) {
    if (max_abs(idx) == grid) {
      RatVec y(k);
      for (std::size_t i = 0; i < k; ++i) y[i] = rational(idx[i], grid);
      Rational v = q.evaluate(y);
      if (v * bd < 1) throw InvalidNorm("unit ball is not contained in beta times the cube");
      if (v * ad > 1) throw InvalidNorm("alpha times the cube is not contained in the unit ball");
    }
    std::size_t i = 0;
    while (i < k && idx[i] == grid) idx[i++] = -grid;
    if (i == k) break;
    ++idx[i];
  }
  return PseudoNorm{std::move(q), degree, std::move(alpha), std::move(beta)};
}

// ---------------------------------------------------------------------------
// Norm specification parsing

namespace {

std::vector<std::string> words(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

Int parse_int(const std::string& s) {
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

IntVec parse_int_list(const std::string& s, char sep) {
  IntVec out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(parse_int(cur));
  if (s.empty() || s.back() == sep) throw ParseError("empty list entry in '" + s + "'");
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

Polynomial parse_q(const std::string& s, std::size_t k, unsigned degree) {
  if (s.rfind("sum", 0) == 0) {
    Int d = parse_int(s.substr(3));
    if (d != static_cast<Int>(degree)) throw ParseError("sum<D> degree differs from D");
    return Polynomial::power_sum(k, degree);
  }
  Polynomial q(k);
  for (const auto& mono : split(s, ';')) {
    auto colon = mono.find(':');
    if (colon == std::string::npos) throw ParseError("monomial needs 'coef:exponents'");
    Rational c = parse_rational(mono.substr(0, colon));
    IntVec e = parse_int_list(mono.substr(colon + 1), ',');
    if (e.size() != k) throw ParseError("monomial exponent has wrong length");
    Exponent ex;
    for (Int x : e) {
      if (x < 0) throw ParseError("negative exponent");
      ex.push_back(static_cast<unsigned>(x));
    }
    q.add_term(ex, c);
  }
  return q;
}

}  // namespace

NormSpec parse_norm_spec(const std::string& text, std::size_t k) {
  auto w = words(text);
  if (w.empty()) throw ParseError("empty norm specification");
  auto expect_len = [&](std::size_t n) {
    if (w.size() != n) throw ParseError("norm '" + w[0] + "' expects " + std::to_string(n - 1) + " arguments");
  };
  const std::string& kind = w[0];
  if (kind == "linf") {
    expect_len(1);
    return PolyhedralNorm::linf(k);
  }
  if (kind == "l1") {
    expect_len(1);
    return PolyhedralNorm::l1(k);
  }
  if (kind == "poly-ineq") {
    if (w.size() < 3) throw ParseError("poly-ineq needs <m> <k>");
    Int m = parse_int(w[1]), kk = parse_int(w[2]);
    if (m <= 0 || kk <= 0) throw ParseError("poly-ineq sizes must be positive");
    if (static_cast<std::size_t>(kk) != k) throw DimensionMismatch("norm dimension differs from objective count");
    const std::size_t mm = static_cast<std::size_t>(m);
    expect_len(3 + mm * k + mm);
    IntMat a(mm, IntVec(k));
    IntVec b(mm);
    std::size_t pos = 3;
    for (auto& row : a)
      for (auto& x : row) x = parse_int(w[pos++]);
    for (auto& x : b) x = parse_int(w[pos++]);
    return PolyhedralNorm::from_inequalities(std::move(a), std::move(b), k);
  }
  if (kind == "poly-verts") {
    expect_len(2);
    std::vector<IntVec> verts;
    for (const auto& v : split(w[1], ';')) {
      verts.push_back(parse_int_list(v, ','));
      if (verts.back().size() != k) throw DimensionMismatch("vertex dimension differs from objective count");
    }
    return PolyhedralNorm::from_vertices(verts);
  }
  if (kind == "pseudo") {
    expect_len(5);
    Int d = parse_int(w[1]);
    if (d <= 0) throw ParseError("pseudo-norm degree must be positive");
    auto degree = static_cast<unsigned>(d);
    return PseudoNorm::make(parse_q(w[2], k, degree), degree, parse_rational(w[3]), parse_rational(w[4]));
  }
  if (kind == "lp-odd") {
    expect_len(2);
    Int p = parse_int(w[1]);
    if (p <= 0 || p % 2 == 0) throw InvalidNorm("lp-odd needs an odd positive p");
    return OddLpNorm{static_cast<unsigned>(p)};
  }
  throw ParseError("unknown norm '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Polyhedral selection

bool has_points(const SRF& g) { return !g.terms.empty() && specialize_count(g) > 0; }

Selection nearest_polyhedral(const SRF& gv, const PolyhedralNorm& q, const IntVec& vhat, Int m,
                             const TermOrder& order) {
  require_dim(gv, q.k, "set dimension differs from norm");
  if (vhat.size() != q.k) throw DimensionMismatch("reference point has wrong length");
  if (order.size() != q.k) throw DimensionMismatch("order size differs from set dimension");
  if (!has_points(gv)) throw EmptySet("encoded set is empty");
  m = effective_bound(gv, m);
  const Int l = q.granularity();
  Int lo = 0;
  Int hi = mul(l, mul(mul(static_cast<Int>(q.k), q.max_entry()), add(m, max_abs(vhat))));
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (count_in_bounded_polytope(gv, q.scaled_ball(vhat, mid)) > 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  SRF best = restrict_to(gv, q.scaled_ball(vhat, lo));
  return Selection{first_point(best, m, order), rational(lo, l)};
}

DistanceStream::DistanceStream(SRF gv, PolyhedralNorm q, IntVec vhat, Int m, TermOrder order)
    : gv_(std::move(gv)), q_(std::move(q)), vhat_(std::move(vhat)), order_(std::move(order)) {
  require_dim(gv_, q_.k, "set dimension differs from norm");
  if (vhat_.size() != q_.k) throw DimensionMismatch("reference point has wrong length");
  if (order_.size() != q_.k) throw DimensionMismatch("order size differs from set dimension");
  m_ = effective_bound(gv_, m);
  j_max_ = mul(q_.granularity(), mul(mul(static_cast<Int>(q_.k), q_.max_entry()), add(m_, max_abs(vhat_))));
  total_ = gv_.terms.empty() ? Integer(0) : specialize_count(gv_);
  prev_set_ = SRF(q_.k);
}

Integer DistanceStream::count_within(Int j, SRF* restricted) {
  if (!restricted) return count_in_bounded_polytope(gv_, q_.scaled_ball(vhat_, j));
  *restricted = restrict_to(gv_, q_.scaled_ball(vhat_, j));
  return restricted->terms.empty() ? Integer(0) : specialize_count(*restricted);
}

std::optional<Selection> DistanceStream::next() {
  for (;;) {
    if (shell_) {
      if (auto w = shell_->next()) {
        ++emitted_;
        return Selection{std::move(*w), shell_distance_};
      }
      shell_.reset();
    }
    if (emitted_ >= total_) return std::nullopt;
    // Smallest radius whose ball holds more points than the previous shell.
    Int lo = prev_j_ + 1, hi = j_max_;
    while (lo < hi) {
      Int mid = lo + (hi - lo) / 2;
      if (count_within(mid, nullptr) > prev_count_)
        hi = mid;
      else
        lo = mid + 1;
    }
    SRF ball_set;
    Integer c = count_within(lo, &ball_set);
    if (c <= prev_count_) return std::nullopt;
    SRF shell = prev_count_ == 0 ? ball_set : set_difference(ball_set, prev_set_);
    shell_distance_ = rational(lo, q_.granularity());
    shell_.emplace(std::make_shared<SrfSlabOracle>(shell, m_, q_.k, order_), order_, m_);
    prev_j_ = lo;
    prev_count_ = c;
    prev_set_ = std::move(ball_set);
  }
}

DistanceStream enumerate_by_distance(const SRF& gv, const PolyhedralNorm& q, const IntVec& vhat, Int m,
                                     const TermOrder& order) {
  return DistanceStream(gv, q, vhat, m, order);
}

// ---------------------------------------------------------------------------
// Linear criteria

namespace {

Polyhedron linear_face(const IntVec& c, Int theta, bool equality, std::size_t k, Int m) {
  Polyhedron box = Polyhedron::from_box(cube(k, m));
  IntMat a{c};
  IntVec b{theta};
  if (equality) {
    a.push_back(-c);
    b.push_back(-theta);
  }
  return box.intersected(Polyhedron(std::move(a), std::move(b), k));
}

}  // namespace

Int min_linear_value(const SRF& gv, const IntVec& c, Int m) {
  const std::size_t k = gv.dim;
  if (c.size() != k) throw DimensionMismatch("criterion has wrong length");
  if (!has_points(gv)) throw EmptySet("encoded set is empty");
  m = effective_bound(gv, m);
  // Range of <c, v> over the support box, or over [-M, M]^k without one.
  Int lo = 0, hi = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Int l = gv.support ? gv.support->lower[i] : -m, u = gv.support ? gv.support->upper[i] : m;
    lo = add(lo, std::min(mul(c[i], l), mul(c[i], u)));
    hi = add(hi, std::max(mul(c[i], l), mul(c[i], u)));
  }
  while (lo < hi) {
    Int mid = lo + floor_div(sub(hi, lo), 2);
    if (count_in_bounded_polytope(gv, linear_face(c, mid, false, k, m)) > 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

LinearMin minimize_linear_over_set(const SRF& gv, const IntVec& c, Int m) {
  const Int value = min_linear_value(gv, c, m);
  m = effective_bound(gv, m);
  SRF face = restrict_to(gv, linear_face(c, value, true, gv.dim, m));
  return LinearMin{first_point(face, m, TermOrder::identity(gv.dim)), value};
}

// ---------------------------------------------------------------------------
// Moments and polynomial maximization

Rational moment(const SRF& gv, const Polynomial& f, unsigned s, const Integer& count) {
  if (s == 0) return Rational(count);
  if (count == 0) return 0;
  const unsigned n = count.fits_uint_p() ? static_cast<unsigned>(count.get_ui()) : s;
  const unsigned direct = std::min(s, n);
  std::vector<Rational> p = power_sums(gv, f, direct);
  for (const auto& x : p)
    if (x < 0) throw NegativeMoment("objective is negative somewhere on the set");
  if (s <= direct) return p[s - 1];
  // Newton's identities: elementary symmetric functions of the n values.
  std::vector<Rational> e(n + 1);
  e[0] = 1;
  for (unsigned j = 1; j <= n; ++j) {
    Rational acc = 0;
    for (unsigned i = 1; i <= j; ++i) acc += (i % 2 ? 1 : -1) * e[j - i] * p[i - 1];
    e[j] = acc / j;
  }
  p.resize(s);
  for (unsigned t = n + 1; t <= s; ++t) {
    Rational acc = 0;
    for (unsigned i = 1; i <= n; ++i) acc += (i % 2 ? 1 : -1) * e[i] * p[t - i - 1];
    p[t - 1] = acc;
  }
  if (p[s - 1] < 0) throw NegativeMoment("objective is negative somewhere on the set");
  return p[s - 1];
}

unsigned moment_order(const Integer& count, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw ContractError("epsilon must lie strictly between 0 and 1");
  Rational acc(count);
  unsigned s = 0;
  do {
    acc *= (1 - eps);
    ++s;
  } while (acc > 1);
  return s;
}

PolyMax fptas_max_polynomial(const SRF& gv, const Polynomial& f, const Box& box, const Rational& eps) {
  if (f.nvars() != gv.dim || box.dim() != gv.dim) throw DimensionMismatch("dimensions of set, objective and box differ");
  if (gv.terms.empty()) throw EmptySet("encoded set is empty");
  PolyMax r;
  r.count = specialize_count(gv);
  if (r.count == 0) throw EmptySet("encoded set is empty");
  r.s = moment_order(r.count, eps);
  r.moment = moment(gv, f, r.s, r.count);

  Box cur = box;
  Rational cur_moment = r.moment;
  Integer cur_count = r.count;
  for (;;) {
    std::size_t axis = 0;
    Int width = 0;
    for (std::size_t i = 0; i < cur.dim(); ++i) {
      Int w = sub(cur.upper[i], cur.lower[i]);
      if (w > width) {
        width = w;
        axis = i;
      }
    }
    if (width == 0) break;
    Int mid = floor_div(add(cur.lower[axis], cur.upper[axis]), 2);
    Box left = cur, right = cur;
    left.upper[axis] = mid;
    right.lower[axis] = mid + 1;
    SRF gl = restrict_to(gv, left);
    Integer cl = gl.terms.empty() ? Integer(0) : specialize_count(gl);
    Rational ml = cl == 0 ? Rational(0) : cl == cur_count ? cur_moment : moment(gl, f, r.s, cl);
    Integer cr = cur_count - cl;
    Rational mr = cur_moment - ml;
    // The larger of the two means is at least the parent's mean, so the mean
    // never drops below L_s / |V| and the last point inherits that bound.
    bool take_left = cr == 0 || (cl > 0 && ml * Rational(cr) >= mr * Rational(cl));
    if (take_left) {
      cur = std::move(left);
      cur_moment = ml;
      cur_count = cl;
    } else {
      cur = std::move(right);
      cur_moment = mr;
      cur_count = cr;
    }
  }
  if (cur_count != 1) throw std::logic_error("witness bisection lost the set");
  r.point = cur.lower;
  r.value = f.evaluate(r.point);
  return r;
}

// ---------------------------------------------------------------------------
// Pseudo-norm selection

std::pair<std::string, std::string> root_bracket(const Rational& x, unsigned d, unsigned digits) {
  if (x < 0) throw ContractError("root of a negative value");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Integer scaled_pow;
  mpz_pow_ui(scaled_pow.get_mpz_t(), scale.get_mpz_t(), d);
  Integer v = floor_q(x * Rational(scaled_pow));
  Integer root;
  int exact = mpz_root(root.get_mpz_t(), v.get_mpz_t(), d);
  Integer check;
  mpz_pow_ui(check.get_mpz_t(), root.get_mpz_t(), d);
  bool is_exact = exact != 0 && Rational(check) == x * Rational(scaled_pow);
  auto fmt = [&](const Integer& z) {
    std::string s = z.get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return s;
  };
  return {fmt(root), fmt(is_exact ? root : Integer(root + 1))};
}

namespace {

Rational rpow(const Rational& x, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

// Core of the pseudo-norm method on the part of V inside `region`.
std::optional<PseudoSelection> pseudo_core(const SRF& gv, const Polynomial& q, unsigned degree,
                                           const Rational& alpha, const Rational& beta, const IntVec& vhat, Int m,
                                           const Rational& eps, const std::optional<Box>& region) {
  const std::size_t k = gv.dim;
  SRF v = region ? restrict_to(gv, *region) : gv;
  if (!has_points(v)) return std::nullopt;
  m = effective_bound(gv, m);
  PseudoSelection out;

  Int lo = 0, hi = add(m, max_abs(vhat));
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (count_in_bounded_polytope(v, Polyhedron::from_box(cube_at(vhat, mid))) > 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  out.gamma = lo;
  out.count = 0;
  if (out.gamma == 0) {
    out.point = vhat;
    out.qvalue = 0;
    std::tie(out.root_lo, out.root_hi) = root_bracket(0, degree);
    return out;
  }
  out.delta = rational(out.gamma) * beta / alpha;
  Box cube = cube_at(vhat, to_int(floor_q(out.delta)));
  if (region) {
    auto meet = intersect(cube, *region);
    if (!meet) return std::nullopt;
    cube = *meet;
  }
  SRF near = restrict_to(v, cube);

  Polynomial f = Polynomial::constant(k, rpow(rational(out.gamma) * beta / (alpha * alpha), degree));
  f -= q.shifted(vhat);
  const Rational ratio = rpow(beta / alpha, 2 * degree);
  if (ratio == 1) {
    out.eps_prime = Rational(1, 2);
  } else {
    out.eps_prime = eps * degree / (ratio - 1);
    if (out.eps_prime >= 1) out.eps_prime = Rational(1, 2);
  }
  PolyMax pm = fptas_max_polynomial(near, f, cube, out.eps_prime);
  out.point = pm.point;
  out.s = pm.s;
  out.moment = pm.moment;
  out.count = pm.count;
  out.qvalue = q.evaluate(out.point - vhat);
  std::tie(out.root_lo, out.root_hi) = root_bracket(out.qvalue, degree);
  return out;
}

}  // namespace

PseudoSelection fptas_nearest_pseudonorm(const SRF& gv, const PseudoNorm& pn, const IntVec& vhat, Int m,
                                         const Rational& eps) {
  require_dim(gv, pn.q.nvars(), "set dimension differs from norm");
  if (vhat.size() != gv.dim) throw DimensionMismatch("reference point has wrong length");
  if (eps <= 0 || eps >= 1) throw ContractError("epsilon must lie strictly between 0 and 1");
  auto r = pseudo_core(gv, pn.q, pn.degree, pn.alpha, pn.beta, vhat, m, eps, std::nullopt);
  if (!r) throw EmptySet("encoded set is empty");
  return *r;
}

PseudoSelection nearest_odd_lp(const SRF& gv, unsigned p, const IntVec& vhat, Int m, const Rational& eps) {
  const std::size_t k = gv.dim;
  if (p == 0 || p % 2 == 0) throw InvalidNorm("lp-odd needs an odd positive p");
  if (vhat.size() != k) throw DimensionMismatch("reference point has wrong length");
  if (eps <= 0 || eps >= 1) throw ContractError("epsilon must lie strictly between 0 and 1");
  m = effective_bound(gv, m);
  const Int reach = add(m, max_abs(vhat));
  // ||y||_inf <= ||y||_p <= k^(1/p) ||y||_inf, so alpha = 1/k and beta = 1 are valid.
  const Rational alpha(1, static_cast<unsigned long>(k)), beta(1);
  std::optional<PseudoSelection> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Polynomial q(k);
    IntVec lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
      const bool neg = (mask >> i) & 1;
      Exponent e(k, 0);
      e[i] = p;
      q.add_term(e, neg ? Rational(-1) : Rational(1));
      lo[i] = neg ? sub(vhat[i], reach) : vhat[i];
      hi[i] = neg ? vhat[i] : add(vhat[i], reach);
    }
    auto r = pseudo_core(gv, q, p, alpha, beta, vhat, m, eps, Box(lo, hi));
    if (r && (!best || r->qvalue < best->qvalue)) best = std::move(r);
  }
  if (!best) throw EmptySet("encoded set is empty");
  return *best;
}

}  // namespace mcilp
