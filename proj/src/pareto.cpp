#include "mcilp/pareto.hpp"

#include <algorithm>
#include <sstream>

#include "mcilp/enumerate.hpp"
#include "mcilp/select.hpp"
#include "mcilp/setops.hpp"

namespace mcilp {

Problem::Problem(IntMat a_in, IntVec b_in, IntMat f_in, std::size_t n_in)
    : a(std::move(a_in)), b(std::move(b_in)), f(std::move(f_in)), n(n_in) {
  if (a.size() != b.size()) throw DimensionMismatch("A and b row counts differ");
  for (const auto& row : a)
    if (row.size() != n) throw DimensionMismatch("constraint row has wrong length");
  if (f.empty()) throw ContractError("at least one objective is required");
  for (const auto& row : f)
    if (row.size() != n) throw DimensionMismatch("objective row has wrong length");
  Polyhedron p = polyhedron();
  if (is_empty(p)) throw EmptyPolyhedron("feasible region is empty");
  if (!is_bounded(p)) throw UnboundedPolyhedron("feasible region is unbounded");
}

namespace {

class Tokens {
 public:
  explicit Tokens(const std::string& text) {
    std::istringstream is(text);
    std::string t;
    while (is >> t) toks_.push_back(t);
  }
  std::string word() {
    if (pos_ >= toks_.size()) throw ParseError("unexpected end of problem text");
    return toks_[pos_++];
  }
  void expect(const std::string& w) {
    std::string got = word();
    if (got != w) throw ParseError("expected '" + w + "' but found '" + got + "'");
  }
  Int integer() {
    std::string s = word();
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
  std::size_t count() {
    Int v = integer();
    if (v < 0) throw ParseError("negative size");
    return static_cast<std::size_t>(v);
  }
  [[nodiscard]] bool done() const { return pos_ == toks_.size(); }

 private:
  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Problem parse_problem(const std::string& text) {
  Tokens t(text);
  t.expect("mcilp-problem");
  t.expect("v1");
  t.expect("n");
  const std::size_t n = t.count();
  t.expect("m");
  const std::size_t m = t.count();
  t.expect("k");
  const std::size_t k = t.count();
  if (n == 0) throw ParseError("n must be positive");
  if (k == 0) throw ParseError("k must be positive");
  t.expect("A");
  IntMat a(m, IntVec(n));
  for (auto& row : a)
    for (auto& x : row) x = t.integer();
  t.expect("b");
  IntVec b(m);
  for (auto& x : b) x = t.integer();
  t.expect("F");
  IntMat f(k, IntVec(n));
  for (auto& row : f)
    for (auto& x : row) x = t.integer();
  if (!t.done()) throw ParseError("trailing content after problem definition");
  return Problem(std::move(a), std::move(b), std::move(f), n);
}

std::string format_problem(const Problem& p) {
  std::ostringstream os;
  os << "mcilp-problem v1\n";
  os << "n " << p.n << " m " << p.m() << " k " << p.k() << "\n";
  os << "A\n";
  for (const auto& row : p.a) os << to_string(row) << "\n";
  os << "b\n" << to_string(p.b) << "\n";
  os << "F\n";
  for (const auto& row : p.f) os << to_string(row) << "\n";
  return os.str();
}

Box outcome_box(const Problem& p) { return outcome_box(p.polyhedron(), p.f); }

Int outcome_bound(const Problem& p) { return std::max<Int>(outcome_box(p).max_abs(), 1); }

std::vector<IntVec> distinct_outcomes(const Problem& p) {
  TermOrder order = TermOrder::identity(p.k());
  auto oracle = std::make_shared<PolytopeImageSlabOracle>(p.polyhedron(), p.f, order);
  EnumerationStream stream(oracle, order, outcome_bound(p));
  std::vector<IntVec> out;
  while (auto w = stream.next()) out.push_back(std::move(*w));
  return out;
}

SRF dominated_gf(const Problem& p, const std::optional<Box>& box_override) {
  const Box box = box_override ? *box_override : outcome_box(p);
  if (box.dim() != p.k()) throw DimensionMismatch("box dimension differs from objective count");
  auto outcomes = distinct_outcomes(p);
  if (outcomes.empty()) throw EmptyPolyhedron("no feasible lattice point");
  std::vector<Box> orthants;
  for (const auto& w : outcomes) {
    IntVec lo(p.k());
    bool inside = true;
    for (std::size_t i = 0; i < p.k(); ++i) {
      lo[i] = std::max(w[i], box.lower[i]);
      if (lo[i] > box.upper[i]) inside = false;
    }
    if (inside) orthants.emplace_back(std::move(lo), box.upper);
  }
  if (orthants.empty()) return SRF(p.k());
  return union_of_boxes(orthants);
}

SRF dominated_gf_epigraph(const Problem& p) {
  const std::size_t n = p.n, k = p.k(), d = n + k;
  const Box box = outcome_box(p);
  IntMat a;
  IntVec b;
  for (std::size_t i = 0; i < p.m(); ++i) {
    IntVec row = p.a[i];
    row.resize(d, 0);
    a.push_back(std::move(row));
    b.push_back(p.b[i]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    IntVec row = p.f[i];
    row.resize(d, 0);
    row[n + i] = -1;
    a.push_back(std::move(row));
    b.push_back(0);
    IntVec up(d, 0);
    up[n + i] = 1;
    a.push_back(std::move(up));
    b.push_back(box.upper[i]);
  }
  return gf_of_polytope(Polyhedron(std::move(a), std::move(b), d));
}

SRF pareto_from_dominated(const SRF& dominated) {
  const std::size_t k = dominated.dim;
  if (dominated.terms.empty()) return SRF(k);
  SRF result;
  for (std::size_t i = 0; i < k; ++i) {
    IntVec e(k, 0);
    e[i] = 1;
    SRF part = set_difference(dominated, shift(dominated, e));
    result = i == 0 ? std::move(part) : intersect(result, part);
  }
  return result;
}

SRF pareto_gf(const Problem& p) { return pareto_from_dominated(dominated_gf(p)); }

Integer count_pareto(const Problem& p) { return specialize_count(pareto_gf(p)); }

SRF graph_gf(const Problem& p) { return monomial_substitution(gf_of_polytope(p.polyhedron()), p.f); }

StrategySets strategies_gf(const Problem& p, const SRF& pareto) {
  StrategySets s;
  s.spareto = pullback_intersection(gf_of_polytope(p.polyhedron()), p.f, pareto);
  std::vector<std::size_t> outcome_coords;
  for (std::size_t i = 0; i < p.k(); ++i) outcome_coords.push_back(p.n + i);
  s.strategies = specialize_coordinates(s.spareto, outcome_coords);
  return s;
}

IntVec ideal_point(const Problem& p) {
  SRF graph = graph_gf(p);
  Int m = outcome_bound(p);
  if (graph.support) m = std::max(m, graph.support->max_abs());
  IntVec ideal(p.k());
  for (std::size_t i = 0; i < p.k(); ++i) {
    IntVec c(p.n + p.k(), 0);
    c[p.n + i] = 1;
    ideal[i] = min_linear_value(graph, c, m);
  }
  return ideal;
}

ParetoHandles compute_handles(const Problem& p) {
  ParetoHandles h;
  h.box = outcome_box(p);
  h.dominated = dominated_gf(p, h.box);
  h.pareto = pareto_from_dominated(h.dominated);
  h.graph = graph_gf(p);
  auto s = strategies_gf(p, h.pareto);
  h.spareto = std::move(s.spareto);
  h.strategies = std::move(s.strategies);
  h.pareto_count = specialize_count(h.pareto);
  h.strategy_count = specialize_count(h.strategies);
  return h;
}

}  // namespace mcilp
