#include "mcilp/oracle.hpp"

#include <algorithm>
#include <map>

namespace mcilp::oracle {

namespace {

// Calls fn on every lattice point of the box in lex order.
template <class Fn>
void for_each_point(const Box& box, Fn&& fn) {
  IntVec v = box.lower;
  for (;;) {
    fn(v);
    std::size_t i = v.size();
    while (i > 0 && v[i - 1] == box.upper[i - 1]) {
      v[i - 1] = box.lower[i - 1];
      --i;
    }
    if (i == 0) return;
    ++v[i - 1];
  }
}

bool dominates(const IntVec& a, const IntVec& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

// Number of mu in Z^s_{>=0} with sum mu_j d_j = target, where every d_j has
// <lambda, d_j> < 0 so the search is finite.
Integer representations(const std::vector<IntVec>& dens, const IntVec& lambda, std::size_t j, const IntVec& target,
                        std::map<std::pair<std::size_t, IntVec>, Integer>& memo) {
  if (j == dens.size()) return is_zero(target) ? Integer(1) : Integer(0);
  auto key = std::make_pair(j, target);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Integer total = 0;
  IntVec rest = target;
  // Remaining budget <lambda, target> must stay <= 0 as multiples of d_j are removed.
  while (wdot(lambda, rest) <= 0) {
    total += representations(dens, lambda, j + 1, rest, memo);
    rest = rest - dens[j];
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

std::vector<IntVec> enumerate_lattice(const Polyhedron& p) {
  if (!is_bounded(p)) throw UnboundedPolyhedron("polyhedron is unbounded");
  auto box = integer_bounding_box(p);
  if (!box) return {};
  if (box->volume() > kMaxPoints) throw TooLarge("more than 10^6 candidate lattice points");
  std::vector<IntVec> out;
  for_each_point(*box, [&](const IntVec& v) {
    if (p.contains(v)) out.push_back(v);
  });
  return out;
}

std::vector<IntVec> pareto_filter(std::vector<IntVec> outcomes) {
  std::sort(outcomes.begin(), outcomes.end());
  outcomes.erase(std::unique(outcomes.begin(), outcomes.end()), outcomes.end());
  std::vector<IntVec> out;
  for (const auto& v : outcomes) {
    bool dominated = false;
    for (const auto& w : outcomes)
      if (dominates(w, v)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(v);
  }
  return out;
}

Solution solve(const Problem& p) {
  Solution s;
  s.feasible = enumerate_lattice(p.polyhedron());
  std::vector<IntVec> all;
  for (const auto& u : s.feasible) all.push_back(p.outcome(u));
  s.outcomes = all;
  std::sort(s.outcomes.begin(), s.outcomes.end());
  s.outcomes.erase(std::unique(s.outcomes.begin(), s.outcomes.end()), s.outcomes.end());
  s.pareto = pareto_filter(s.outcomes);
  for (std::size_t i = 0; i < s.feasible.size(); ++i)
    if (std::binary_search(s.pareto.begin(), s.pareto.end(), all[i])) s.strategies.push_back(s.feasible[i]);
  if (!s.outcomes.empty()) {
    s.ideal = s.outcomes.front();
    for (const auto& w : s.outcomes)
      for (std::size_t i = 0; i < w.size(); ++i) s.ideal[i] = std::min(s.ideal[i], w[i]);
  }
  return s;
}

std::vector<IntVec> sorted_by(std::vector<IntVec> points, const TermOrder& order) {
  std::stable_sort(points.begin(), points.end(),
                   [&](const IntVec& a, const IntVec& b) { return order.apply(a) < order.apply(b); });
  return points;
}

std::vector<IntVec> projection(const std::vector<IntVec>& points, std::size_t p, const TermOrder& order) {
  std::vector<IntVec> out;
  for (const auto& v : points) {
    if (p > v.size()) throw DimensionMismatch("projection wider than the points");
    out.emplace_back(v.end() - static_cast<std::ptrdiff_t>(p), v.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return sorted_by(std::move(out), order);
}

std::vector<Selection> rank(const std::vector<IntVec>& set, const PolyhedralNorm& q, const IntVec& vhat,
                            const TermOrder& order) {
  std::vector<Selection> out;
  for (const auto& v : set) out.push_back(Selection{v, minkowski_distance(q, vhat, v)});
  std::stable_sort(out.begin(), out.end(), [&](const Selection& a, const Selection& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return order.apply(a.point) < order.apply(b.point);
  });
  return out;
}

Selection nearest(const std::vector<IntVec>& set, const PolyhedralNorm& q, const IntVec& vhat,
                  const TermOrder& order) {
  if (set.empty()) throw EmptySet("set is empty");
  return rank(set, q, vhat, order).front();
}

namespace {

template <class Value>
QMin arg_best(const std::vector<IntVec>& set, Value&& value, bool minimize) {
  if (set.empty()) throw EmptySet("set is empty");
  std::vector<IntVec> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  QMin best{sorted.front(), value(sorted.front())};
  for (const auto& v : sorted) {
    Rational x = value(v);
    if (minimize ? x < best.value : x > best.value) best = QMin{v, x};
  }
  return best;
}

}  // namespace

QMin nearest_q(const std::vector<IntVec>& set, const Polynomial& q, const IntVec& vhat) {
  return arg_best(set, [&](const IntVec& v) { return q.evaluate(v - vhat); }, true);
}

QMin nearest_lp(const std::vector<IntVec>& set, unsigned p, const IntVec& vhat) {
  return arg_best(
      set,
      [&](const IntVec& v) {
        Rational s = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
          Rational a = rational(iabs(sub(v[i], vhat[i]))), t = 1;
          for (unsigned e = 0; e < p; ++e) t *= a;
          s += t;
        }
        return s;
      },
      true);
}

QMin maximize(const std::vector<IntVec>& set, const Polynomial& f) {
  return arg_best(set, [&](const IntVec& v) { return f.evaluate(v); }, false);
}

LinearMin minimize_linear(const std::vector<IntVec>& set, const IntVec& c) {
  QMin r = arg_best(set, [&](const IntVec& v) { return rational(dot(c, v)); }, true);
  return LinearMin{r.point, to_int(r.value.get_num())};
}

std::vector<IntVec> expand(const SRF& g) {
  if (g.terms.empty()) return {};
  if (!g.support) throw UnboundedSupport("generating function carries no support box");
  if (g.support->volume() > kMaxPoints) throw TooLarge("support box exceeds 10^6 points");
  IntVec lambda = pick_generic_lambda(g);
  SRF n = normalize_orientation(g, lambda);
  std::vector<IntVec> out;
  if (g.dim == 0) {
    Rational c = 0;
    for (const auto& t : n.terms) c += t.coefficient;
    if (c != 0) out.emplace_back();
    return out;
  }
  std::vector<std::map<std::pair<std::size_t, IntVec>, Integer>> memo(n.terms.size());
  for_each_point(*g.support, [&](const IntVec& v) {
    Rational c = 0;
    for (std::size_t i = 0; i < n.terms.size(); ++i) {
      const auto& t = n.terms[i];
      Integer reps = representations(t.denominators, lambda, 0, v - t.numerator, memo[i]);
      if (reps != 0) c += t.coefficient * Rational(reps);
    }
    if (c == 1)
      out.push_back(v);
    else if (c != 0)
      throw ContractError("generating function is not a 0/1 encoding");
  });
  return out;
}

Problem named_instance(const std::string& name) {
  if (name == "E1")
    return Problem({{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, -1}}, {0, 3, 0, 3, -3}, {{1, 0}, {0, 1}}, 2);
  if (name == "E2")
    return Problem({{-1, 0}, {1, 0}, {0, -1}, {0, 1}}, {0, 3, 0, 3}, {{1, 1}, {2, -1}}, 2);
  if (name == "E3")
    return Problem({{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, -1}}, {0, 2, 0, 2, -2}, {{1, 1}, {2, 2}}, 2);
  throw ParseError("unknown instance '" + name + "'");
}

std::vector<std::string> instance_names() { return {"E1", "E2", "E3"}; }

}  // namespace mcilp::oracle
