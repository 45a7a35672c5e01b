#include "mcilp/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mcilp/oracle.hpp"
#include "mcilp/select.hpp"
#include "mcilp/service.hpp"

namespace mcilp {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IntVec parse_point(const std::string& text, std::size_t k) {
  std::istringstream is(text);
  IntVec v;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("malformed point entry '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError("malformed point entry '" + tok + "'");
    v.push_back(x);
  }
  if (v.size() != k) throw ParseError("point needs " + std::to_string(k) + " coordinates");
  return v;
}

TermOrder load_order(const std::string& path, std::size_t p) {
  if (path.empty()) return TermOrder::identity(p);
  TermOrder order = TermOrder::parse(read_file(path));
  if (order.size() != p) throw DimensionMismatch("order matrix size differs from projection width");
  return order;
}

struct Options {
  std::string problem;
  std::string which = "pareto";
  std::string order;
  std::size_t project = 0;
  long long limit = -1;
  std::string norm;
  std::string point;
  std::string eps = "1/10";
  int port = 8080;
  std::string host = "127.0.0.1";
};

void print_points(std::ostream& out, const std::vector<IntVec>& pts, long long limit) {
  long long n = 0;
  for (const auto& p : pts) {
    if (limit >= 0 && n++ >= limit) break;
    out << to_string(p) << '\n';
  }
}

void print_pseudo(std::ostream& out, const PseudoSelection& r) {
  out << "point: " << to_string(r.point) << '\n';
  out << "qvalue: " << to_string(r.qvalue) << '\n';
  out << "distance: [" << r.root_lo << ", " << r.root_hi << "]\n";
  out << "certificate: gamma=" << r.gamma << " delta=" << to_string(r.delta) << " s=" << r.s
      << " eps_prime=" << to_string(r.eps_prime) << " L_s=" << to_string(r.moment) << " count=" << r.count.get_str()
      << '\n';
}

PolyhedralNorm polyhedral(const NormSpec& spec) {
  if (auto q = std::get_if<PolyhedralNorm>(&spec)) return *q;
  throw InvalidNorm("this command needs a polyhedral norm (linf, l1, poly-ineq, poly-verts)");
}

// Commands answered by the generating-function pipeline.
void run_exact(const std::string& cmd, const Options& o, std::ostream& out) {
  Problem p = load_problem(o.problem);
  const std::size_t k = p.k();
  if (cmd == "count") {
    ParetoHandles h = compute_handles(p);
    out << "pareto: " << h.pareto_count.get_str() << "\nstrategies: " << h.strategy_count.get_str() << '\n';
  } else if (cmd == "gf") {
    if (o.which == "dominated") {
      out << serialize(dominated_gf(p));
    } else if (o.which == "pareto") {
      out << serialize(pareto_gf(p));
    } else {
      out << serialize(strategies_gf(p, pareto_gf(p)).strategies);
    }
  } else if (cmd == "enumerate") {
    const std::size_t width = o.project == 0 ? k : o.project;
    if (width > k) throw DimensionMismatch("projection wider than the outcome space");
    TermOrder order = load_order(o.order, width);
    auto stream = enumerate_projection(pareto_gf(p), outcome_bound(p), width, order);
    long long n = 0;
    while (o.limit < 0 || n < o.limit) {
      auto w = stream.next();
      if (!w) break;
      out << to_string(*w) << '\n';
      ++n;
    }
  } else if (cmd == "nearest") {
    PolyhedralNorm q = polyhedral(parse_norm_spec(o.norm, k));
    auto r = nearest_polyhedral(pareto_gf(p), q, parse_point(o.point, k), outcome_bound(p), load_order(o.order, k));
    out << "point: " << to_string(r.point) << "\ndistance: " << to_string(r.distance) << '\n';
  } else if (cmd == "rank") {
    PolyhedralNorm q = polyhedral(parse_norm_spec(o.norm, k));
    auto stream =
        enumerate_by_distance(pareto_gf(p), q, parse_point(o.point, k), outcome_bound(p), load_order(o.order, k));
    long long n = 0;
    while (o.limit < 0 || n < o.limit) {
      auto r = stream.next();
      if (!r) break;
      out << to_string(r->point) << " ; " << to_string(r->distance) << '\n';
      ++n;
    }
  } else if (cmd == "fptas") {
    NormSpec spec = parse_norm_spec(o.norm, k);
    const IntVec vhat = parse_point(o.point, k);
    const Rational eps = parse_rational(o.eps);
    SRF par = pareto_gf(p);
    if (auto pn = std::get_if<PseudoNorm>(&spec)) {
      print_pseudo(out, fptas_nearest_pseudonorm(par, *pn, vhat, outcome_bound(p), eps));
    } else if (auto lp = std::get_if<OddLpNorm>(&spec)) {
      print_pseudo(out, nearest_odd_lp(par, lp->p, vhat, outcome_bound(p), eps));
    } else {
      throw InvalidNorm("fptas needs a pseudo or lp-odd norm");
    }
  } else if (cmd == "ideal") {
    out << "ideal: " << to_string(ideal_point(p)) << '\n';
  }
}

// The same commands answered by exhaustive enumeration.
void run_oracle(const std::string& cmd, const Options& o, std::ostream& out) {
  Problem p = load_problem(o.problem);
  const std::size_t k = p.k();
  oracle::Solution s = oracle::solve(p);
  if (s.feasible.empty()) throw EmptyPolyhedron("no feasible lattice point");
  if (cmd == "count") {
    out << "pareto: " << s.pareto.size() << "\nstrategies: " << s.strategies.size() << '\n';
  } else if (cmd == "gf") {
    if (o.which == "dominated") {
      Box box = outcome_box(p);
      std::vector<IntVec> dom;
      for (const auto& v : oracle::enumerate_lattice(Polyhedron::from_box(box)))
        for (const auto& w : s.outcomes) {
          bool below = true;
          for (std::size_t i = 0; i < k; ++i) below = below && w[i] <= v[i];
          if (below) {
            dom.push_back(v);
            break;
          }
        }
      print_points(out, dom, -1);
    } else {
      print_points(out, o.which == "pareto" ? s.pareto : s.strategies, -1);
    }
  } else if (cmd == "enumerate") {
    const std::size_t width = o.project == 0 ? k : o.project;
    if (width > k) throw DimensionMismatch("projection wider than the outcome space");
    print_points(out, oracle::projection(s.pareto, width, load_order(o.order, width)), o.limit);
  } else if (cmd == "nearest") {
    PolyhedralNorm q = polyhedral(parse_norm_spec(o.norm, k));
    auto r = oracle::nearest(s.pareto, q, parse_point(o.point, k), load_order(o.order, k));
    out << "point: " << to_string(r.point) << "\ndistance: " << to_string(r.distance) << '\n';
  } else if (cmd == "rank") {
    PolyhedralNorm q = polyhedral(parse_norm_spec(o.norm, k));
    long long n = 0;
    for (const auto& r : oracle::rank(s.pareto, q, parse_point(o.point, k), load_order(o.order, k))) {
      if (o.limit >= 0 && n++ >= o.limit) break;
      out << to_string(r.point) << " ; " << to_string(r.distance) << '\n';
    }
  } else if (cmd == "fptas") {
    NormSpec spec = parse_norm_spec(o.norm, k);
    const IntVec vhat = parse_point(o.point, k);
    oracle::QMin best;
    if (auto pn = std::get_if<PseudoNorm>(&spec)) {
      best = oracle::nearest_q(s.pareto, pn->q, vhat);
    } else if (auto lp = std::get_if<OddLpNorm>(&spec)) {
      best = oracle::nearest_lp(s.pareto, lp->p, vhat);
    } else {
      throw InvalidNorm("fptas needs a pseudo or lp-odd norm");
    }
    out << "point: " << to_string(best.point) << "\nqvalue: " << to_string(best.value) << '\n';
  } else if (cmd == "ideal") {
    out << "ideal: " << to_string(s.ideal) << '\n';
  }
}

void add_problem_commands(CLI::App& parent, Options& o, std::vector<std::pair<std::string, CLI::App*>>& subs) {
  auto problem = [&](CLI::App* c) { c->add_option("problem", o.problem, "problem file or E1/E2/E3")->required(); };
  auto order = [&](CLI::App* c) { c->add_option("--order", o.order, "term order matrix file"); };
  auto norm_point = [&](CLI::App* c, const char* flag) {
    c->add_option(flag, o.norm, "norm specification")->required();
    c->add_option("--point", o.point, "reference point")->required();
  };

  auto* count = parent.add_subcommand("count", "number of Pareto optima and strategies");
  problem(count);
  auto* gf = parent.add_subcommand("gf", "serialized generating function");
  problem(gf);
  gf->add_option("--which", o.which, "pareto | strategies | dominated")
      ->check(CLI::IsMember({"pareto", "strategies", "dominated"}));
  auto* en = parent.add_subcommand("enumerate", "Pareto optima in a term order");
  problem(en);
  order(en);
  en->add_option("--project", o.project, "keep the last p outcome coordinates");
  en->add_option("--limit", o.limit, "stop after N points");
  auto* near = parent.add_subcommand("nearest", "nearest Pareto optimum under a polyhedral norm");
  problem(near);
  norm_point(near, "--norm");
  order(near);
  auto* rank = parent.add_subcommand("rank", "Pareto optima by increasing distance");
  problem(rank);
  norm_point(rank, "--norm");
  order(rank);
  rank->add_option("--limit", o.limit, "stop after N points");
  auto* fp = parent.add_subcommand("fptas", "approximate nearest optimum under a pseudo-norm");
  problem(fp);
  norm_point(fp, "--pseudo");
  fp->add_option("--eps", o.eps, "accuracy, a rational in (0, 1)");
  auto* ideal = parent.add_subcommand("ideal", "componentwise minima of the objectives");
  problem(ideal);
  for (auto* c : {count, gf, en, near, rank, fp, ideal}) subs.emplace_back(c->get_name(), c);
}

}  // namespace

Problem load_problem(const std::string& path_or_name) {
  std::error_code ec;
  if (!std::filesystem::exists(path_or_name, ec)) {
    for (const auto& name : oracle::instance_names())
      if (name == path_or_name) return oracle::named_instance(name);
  }
  return parse_problem(read_file(path_or_name));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multicriteria integer programming"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::pair<std::string, CLI::App*>> exact, brute;
  add_problem_commands(app, o, exact);
  auto* orc = app.add_subcommand("oracle", "brute-force answers for cross-checking");
  orc->require_subcommand(1);
  add_problem_commands(*orc, o, brute);
  auto* serve = app.add_subcommand("serve", "start the HTTP service");
  serve->add_option("--port", o.port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", o.host, "bind address");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (serve->parsed()) return run_service(o.host, o.port, err);
    for (const auto& [name, sub] : exact)
      if (sub->parsed()) {
        std::ostringstream buf;
        run_exact(name, o, buf);
        out << buf.str();
        return 0;
      }
    for (const auto& [name, sub] : brute)
      if (sub->parsed()) {
        std::ostringstream buf;
        run_oracle(name, o, buf);
        out << buf.str();
        return 0;
      }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 1;
}

}  // namespace mcilp
