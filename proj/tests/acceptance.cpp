// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "mcilp/setops.hpp"
#include "support.hpp"

#ifndef MCILP_BINARY
#error "MCILP_BINARY must name the command-line executable"
#endif

using namespace mcilp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

struct Instance {
  std::string name;
  Problem problem;
  oracle::Solution truth;
  ParetoHandles handles;
  Int bound = 0;
};

constexpr std::uint64_t kSeed = 20240611;

Rational pow_q(const Rational& x, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

IntVec random_point_near(std::mt19937_64& rng, const Box& box) {
  IntVec v(box.dim());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::uniform_int_distribution<Int>(box.lower[i] - 2, box.upper[i] + 2)(rng);
  return v;
}

std::vector<Instance> build_instances() {
  std::vector<Instance> out;
  auto add = [&](std::string name, Problem p) {
    Instance in{std::move(name), p, oracle::solve(p), compute_handles(p), outcome_bound(p)};
    out.push_back(std::move(in));
  };
  add("E1", oracle::named_instance("E1"));
  add("E2", oracle::named_instance("E2"));
  std::mt19937_64 rng(kSeed);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 3, k = 1 + (t / 3) % 3;
    add("random" + std::to_string(t), testing::random_problem(rng, n, k, 6));
  }
  return out;
}

Outcome counting(const std::vector<Instance>& all) {
  Outcome r;
  for (const auto& in : all) {
    r.expect(in.handles.pareto_count == static_cast<long>(in.truth.pareto.size()), in.name + " pareto count");
    r.expect(in.handles.strategy_count == static_cast<long>(in.truth.strategies.size()), in.name + " strategy count");
    r.expect(count_pareto(in.problem) == in.handles.pareto_count, in.name + " count_pareto");
  }
  r.expect(all[0].handles.pareto_count == 4 && all[0].handles.strategy_count == 4, "E1 expects 4 and 4");
  r.detail = std::to_string(all.size()) + " instances";
  return r;
}

using PointSet = std::set<IntVec>;

PointSet evaluate_sets(const std::vector<PointSet>& sets, const SetExpr& e, const PointSet& universe) {
  switch (e.kind) {
    case SetExpr::Kind::Leaf:
      return sets[e.index];
    case SetExpr::Kind::Complement: {
      PointSet inner = evaluate_sets(sets, e.children[0], universe), out;
      for (const auto& v : universe)
        if (!inner.count(v)) out.insert(v);
      return out;
    }
    default:
      break;
  }
  PointSet a = evaluate_sets(sets, e.children[0], universe);
  PointSet b = evaluate_sets(sets, e.children[1], universe), out;
  if (e.kind == SetExpr::Kind::Union) {
    out = a;
    out.insert(b.begin(), b.end());
  } else {
    for (const auto& v : a)
      if (b.count(v) == (e.kind == SetExpr::Kind::Intersection)) out.insert(v);
  }
  return out;
}

SetExpr random_expr(std::mt19937_64& rng, std::size_t leaves, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 0);
  switch (pick(rng)) {
    case 1:
      return SetExpr::unite(random_expr(rng, leaves, depth - 1), random_expr(rng, leaves, depth - 1));
    case 2:
      return SetExpr::meet(random_expr(rng, leaves, depth - 1), random_expr(rng, leaves, depth - 1));
    case 3:
      return SetExpr::minus(random_expr(rng, leaves, depth - 1), random_expr(rng, leaves, depth - 1));
    case 4:
      return SetExpr::complement_of(random_expr(rng, leaves, depth - 1));
    default:
      return SetExpr::leaf(std::uniform_int_distribution<std::size_t>(0, leaves - 1)(rng));
  }
}

Outcome gf_algebra() {
  Outcome r;
  std::mt19937_64 rng(kSeed + 1);
  for (int c = 0; c < 200; ++c) {
    // Half the cases use polygons, half unions of boxes in three dimensions.
    const bool polygons = c % 2 == 0;
    const std::size_t dim = polygons ? 2 : 3;
    const Box universe = cube(dim, polygons ? 5 : 3);
    const auto uni_pts = testing::scan_points(Polyhedron::from_box(universe), universe);
    const PointSet uni(uni_pts.begin(), uni_pts.end());
    std::vector<SRF> gfs;
    std::vector<PointSet> sets;
    for (int s = 0; s < 3; ++s) {
      if (polygons) {
        Polyhedron p = testing::random_polytope(rng, 2, 5, 1 + s % 2, 3);
        auto pts = testing::scan_points(p, universe);
        sets.emplace_back(pts.begin(), pts.end());
        gfs.push_back(gf_of_polytope(p));
      } else {
        std::uniform_int_distribution<Int> x(-3, 3);
        std::vector<Box> boxes;
        PointSet pts;
        for (int b = 0; b < 2; ++b) {
          IntVec lo(3), hi(3);
          for (std::size_t i = 0; i < 3; ++i) {
            Int a = x(rng), z = x(rng);
            lo[i] = std::min(a, z);
            hi[i] = std::max(a, z);
          }
          boxes.emplace_back(lo, hi);
          auto v = testing::scan_points(Polyhedron::from_box(boxes.back()), boxes.back());
          pts.insert(v.begin(), v.end());
        }
        sets.push_back(pts);
        gfs.push_back(union_of_boxes(boxes));
      }
    }
    SetExpr e = random_expr(rng, 3, 2);
    const PointSet want = evaluate_sets(sets, e, uni);
    r.expect(specialize_count(boolean_combine(gfs, e, universe)) == static_cast<long>(want.size()),
             "boolean case " + std::to_string(c));
  }
  std::uniform_int_distribution<Int> x(-4, 4);
  for (int c = 0; c < 50; ++c) {
    const std::size_t dim = 1 + c % 3;
    IntVec a(dim), b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      a[i] = x(rng);
      b[i] = c % 5 == 0 ? a[i] : x(rng);
    }
    SRF h = hadamard(SRF::monomial(a), SRF::monomial(b));
    if (a == b) {
      r.expect(specialize_count(h) == 1 && h.terms.size() == 1 && h.terms[0].numerator == a,
               "x^a * x^a = x^a at " + to_string(a));
    } else {
      r.expect(h.terms.empty(), "x^a * x^b = 0 at " + to_string(a) + " / " + to_string(b));
    }
  }
  r.detail = "200 boolean cases, 50 monomial pairs";
  return r;
}

Outcome enumeration(const std::vector<Instance>& all) {
  Outcome r;
  std::mt19937_64 rng(kSeed + 2);
  std::size_t runs = 0;
  for (const auto& in : all) {
    const std::size_t k = in.problem.k();
    for (int t = 0; t < 10; ++t) {
      TermOrder order = testing::random_order(rng, k);
      auto stream = enumerate_projection(in.handles.pareto, in.bound, k, order);
      std::vector<IntVec> got;
      while (auto w = stream.next()) got.push_back(*w);
      r.expect(got == oracle::sorted_by(in.truth.pareto, order), in.name + " order " + std::to_string(t));
      r.expect(static_cast<double>(stream.metrics().max_nodes_between_outputs) <= stream.delay_bound(),
               in.name + " delay");
      ++runs;
    }
    if (k > 1) {
      TermOrder order = testing::random_order(rng, k - 1);
      auto stream = enumerate_projection(in.handles.pareto, in.bound, k - 1, order);
      std::vector<IntVec> got;
      while (auto w = stream.next()) got.push_back(*w);
      r.expect(got == oracle::projection(in.truth.pareto, k - 1, order), in.name + " projection");
      r.expect(static_cast<double>(stream.metrics().max_nodes_between_outputs) <= stream.delay_bound(),
               in.name + " projection delay");
      ++runs;
    }
  }

  // Stack depth must not grow with the number of outputs.
  std::size_t depth_small = 0, depth_large = 0;
  double bound_large = 0;
  for (Int side : {10, 100}) {
    SRF g = box_gf(Box({0, 0}, {side - 1, side - 1}));
    const TermOrder order = testing::random_order(rng, 2);
    auto stream = enumerate_projection(g, 99, 2, order);
    std::size_t n = 0;
    IntVec prev;
    bool increasing = true;
    while (auto w = stream.next()) {
      if (n > 0) increasing = increasing && compare(order, prev, *w) == Ordering::Less;
      prev = *w;
      ++n;
    }
    r.expect(increasing, "synthetic set in strictly increasing order");
    r.expect(n == static_cast<std::size_t>(side * side), "synthetic set size");
    r.expect(static_cast<double>(stream.metrics().max_nodes_between_outputs) <= stream.delay_bound(),
             "synthetic delay");
    (side == 10 ? depth_small : depth_large) = stream.metrics().max_stack_depth;
    bound_large = stream.delay_bound();
  }
  r.expect(static_cast<double>(depth_large) <= bound_large, "stack depth bounded on 10^4 outputs");
  r.detail = std::to_string(runs) + " ordered runs; stack depth " + std::to_string(depth_small) + " at 10^2 outputs, " +
             std::to_string(depth_large) + " at 10^4 (bound " + std::to_string(static_cast<int>(bound_large)) + ")";
  return r;
}

Outcome selection(const std::vector<Instance>& all) {
  Outcome r;
  std::mt19937_64 rng(kSeed + 3);
  std::map<std::size_t, std::vector<std::pair<std::string, PolyhedralNorm>>> norms;
  for (std::size_t k = 1; k <= 3; ++k) {
    norms[k].emplace_back("l1", PolyhedralNorm::l1(k));
    norms[k].emplace_back("linf", PolyhedralNorm::linf(k));
    for (int q = 0; q < 5; ++q) norms[k].emplace_back("Q" + std::to_string(q), testing::random_symmetric_norm(rng, k));
  }
  std::size_t queries = 0;
  for (const auto& in : all) {
    const std::size_t k = in.problem.k();
    for (const auto& [label, q] : norms[k]) {
      const IntVec vhat = random_point_near(rng, in.handles.box);
      const TermOrder order = testing::random_order(rng, k);
      const std::string where = in.name + " " + label + " from " + to_string(vhat);
      auto got = nearest_polyhedral(in.handles.pareto, q, vhat, in.bound, order);
      auto want = oracle::nearest(in.truth.pareto, q, vhat, order);
      r.expect(got.distance == want.distance, where + " distance");
      r.expect(got.point == want.point, where + " minimizer");
      r.expect(Rational(got.distance * rational(q.granularity())).get_den() == 1, where + " granularity");
      ++queries;
    }
  }
  auto e1 = nearest_polyhedral(all[0].handles.pareto, PolyhedralNorm::linf(2), {0, 0}, all[0].bound,
                               TermOrder::identity(2));
  r.expect(e1.point == IntVec{1, 2} && e1.distance == 2, "E1 linf from origin");
  r.detail = std::to_string(queries) + " queries over l1, linf and 5 random norms per dimension";
  return r;
}

Outcome fptas(const std::vector<Instance>& all) {
  Outcome r;
  std::mt19937_64 rng(kSeed + 4);
  std::size_t queries = 0;
  for (const auto& in : all) {
    const std::size_t k = in.problem.k();
    for (unsigned degree : {2u, 4u}) {
      // The Euclidean ball of R^3 does not contain (7/10) times the cube.
      const Rational alpha = degree == 2 && k == 3 ? Rational(1, 2) : Rational(7, 10);
      const PseudoNorm pn = PseudoNorm::make(Polynomial::power_sum(k, degree), degree, alpha, Rational(1));
      for (const Rational eps : {Rational(1, 2), Rational(1, 10)}) {
        const IntVec vhat = random_point_near(rng, in.handles.box);
        const std::string where = in.name + " D=" + std::to_string(degree) + " eps=" + to_string(eps);
        auto got = fptas_nearest_pseudonorm(in.handles.pareto, pn, vhat, in.bound, eps);
        auto best = oracle::nearest_q(in.truth.pareto, pn.q, vhat);
        IntVec diff(k);
        for (std::size_t i = 0; i < k; ++i) diff[i] = got.point[i] - vhat[i];
        r.expect(std::binary_search(in.truth.pareto.begin(), in.truth.pareto.end(), got.point),
                 where + " returns a Pareto optimum");
        r.expect(got.qvalue == pn.q.evaluate(diff), where + " reported q value");
        r.expect(got.qvalue <= pow_q(1 + eps, degree) * best.value, where + " approximation");
        ++queries;
      }
    }
  }

  std::size_t sandwiches = 0;
  for (int c = 0; c < 50; ++c) {
    const std::size_t k = 1 + c % 3;
    Polyhedron p = testing::random_polytope(rng, k, 3, 1, 3);
    auto pts = oracle::enumerate_lattice(p);
    if (pts.empty()) {
      --c;
      continue;
    }
    Polynomial f = Polynomial::constant(k, Rational(static_cast<long>(k + 1)));
    std::uniform_int_distribution<int> a(1, 3), b(-2, 2);
    for (std::size_t i = 0; i < k; ++i) {
      Exponent sq(k, 0), lin(k, 0);
      sq[i] = 2;
      lin[i] = 1;
      f.add_term(sq, Rational(a(rng)));
      f.add_term(lin, Rational(b(rng)));
    }
    const Rational eps(1, 2 + c % 9);
    auto res = fptas_max_polynomial(gf_of_polytope(p), f, *integer_bounding_box(p), eps);
    auto best = oracle::maximize(pts, f);
    const Rational top = pow_q(best.value, res.s);
    const std::string where = "sandwich " + std::to_string(c);
    r.expect(res.count == static_cast<long>(pts.size()), where + " count");
    r.expect(res.moment / Rational(res.count) <= top && top <= res.moment, where + " moment bounds");
    r.expect(res.value >= (1 - eps) * best.value, where + " value");
    ++sandwiches;
  }

  const PseudoNorm euclid = PseudoNorm::make(Polynomial::power_sum(2, 2), 2, Rational(7, 10), Rational(1));
  auto e1 = fptas_nearest_pseudonorm(all[0].handles.pareto, euclid, {0, 0}, all[0].bound, Rational(1, 10));
  r.expect(e1.qvalue == 5, "E1 Euclidean squared distance 5");
  r.detail = std::to_string(queries) + " pseudo-norm queries, " + std::to_string(sandwiches) + " sandwich cases";
  return r;
}

struct Captured {
  int status = -1;
  std::string out;
};

Captured run_binary(const std::string& args) {
  Captured c;
  const std::string cmd = std::string(MCILP_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) c.out.append(buf, n);
  const int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

Outcome determinism(const std::vector<Instance>& all) {
  Outcome r;
  const auto dir = std::filesystem::temp_directory_path() / "mcilp_acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  for (const std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{all.size() - 1}}) {
    const auto path = dir / (all[i].name + ".prob");
    std::ofstream(path) << format_problem(all[i].problem);
    files.push_back(path.string());
  }
  const auto order_path = dir / "order.txt";
  std::ofstream(order_path) << "2 1\n0 1\n";
  const auto bad_path = dir / "bad.prob";
  std::ofstream(bad_path) << "mcilp-problem v1\nn x\n";

  std::vector<std::pair<std::string, int>> commands;
  for (const auto& f : files) {
    if (f.find("random") == std::string::npos) {
      for (const std::string prefix : {"", "oracle "}) {
        commands.emplace_back(prefix + "count " + f, 0);
        for (const std::string which : {"pareto", "strategies", "dominated"})
          commands.emplace_back(prefix + "gf " + f + " --which " + which, 0);
        commands.emplace_back(prefix + "enumerate " + f + " --order " + order_path.string(), 0);
        commands.emplace_back(prefix + "enumerate " + f + " --project 1 --limit 3", 0);
        commands.emplace_back(prefix + "nearest " + f + " --norm linf --point '0 0'", 0);
        commands.emplace_back(prefix + "nearest " + f + " --norm 'poly-verts 2,1;-2,-1;1,-1;-1,1' --point '1 1'", 0);
        commands.emplace_back(prefix + "rank " + f + " --norm l1 --point '0 0'", 0);
        commands.emplace_back(prefix + "fptas " + f + " --pseudo 'pseudo 2 sum2 7/10 1' --point '0 0' --eps 1/10", 0);
        commands.emplace_back(prefix + "fptas " + f + " --pseudo 'lp-odd 3' --point '0 0' --eps 1/2", 0);
        commands.emplace_back(prefix + "ideal " + f, 0);
      }
    } else {
      commands.emplace_back("count " + f, 0);
      commands.emplace_back("enumerate " + f, 0);
      commands.emplace_back("gf " + f + " --which strategies", 0);
      commands.emplace_back("ideal " + f, 0);
    }
  }
  commands.emplace_back("count " + bad_path.string(), 2);
  commands.emplace_back("nearest E1 --norm 'poly-ineq 1 2 1 0 1' --point '0 0'", 4);
  commands.emplace_back("no-such-command", 2);

  for (const auto& [args, status] : commands) {
    Captured first = run_binary(args);
    r.expect(first.status == status, "exit status of '" + args + "' was " + std::to_string(first.status));
    for (int i = 0; i < 2; ++i) {
      Captured again = run_binary(args);
      r.expect(again.status == first.status && again.out == first.out, "'" + args + "' differs on run " +
                                                                            std::to_string(i + 2));
    }
  }
  Captured count = run_binary("count E1");
  r.expect(count.out == "pareto: 4\nstrategies: 4\n", "count E1 output");
  Captured near = run_binary("nearest E1 --norm linf --point '0 0'");
  r.expect(near.out == "point: 1 2\ndistance: 2\n", "nearest E1 output");
  r.detail = std::to_string(commands.size()) + " commands, 3 runs each";
  return r;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  bool all_pass = true;
  auto report = [&](const std::string& name, const std::function<Outcome()>& check) {
    const auto start = clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    all_pass = all_pass && o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << "; " << o.checks << " checks; " << secs << "s";
    std::cout << line.str() << std::endl;
    for (const auto& f : o.failures) std::cout << "    " << f << std::endl;
  };

  std::vector<Instance> instances;
  const auto start = clock::now();
  instances = build_instances();
  std::cout << "built " << instances.size() << " instances in "
            << std::chrono::duration<double>(clock::now() - start).count() << "s" << std::endl;

  report("counting", [&] { return counting(instances); });
  report("gf-algebra", [] { return gf_algebra(); });
  report("enumeration", [&] { return enumeration(instances); });
  report("polyhedral-selection", [&] { return selection(instances); });
  report("fptas", [&] { return fptas(instances); });
  report("cli-determinism", [&] { return determinism(instances); });
  return all_pass ? 0 : 1;
}
