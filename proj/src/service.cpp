#include "mcilp/service.hpp"

#include <list>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "httplib.h"
#include "json.hpp"
#include "mcilp/oracle.hpp"
#include "mcilp/select.hpp"

namespace mcilp {

namespace {

using nlohmann::json;

struct HttpError : std::runtime_error {
  int status;
  HttpError(int s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

struct Entry {
  std::string id;
  Problem problem;
  ParetoHandles handles;
  Integer feasible_count;
  Int bound = 0;
};

json count_json(const Integer& c) {
  if (c.fits_slong_p()) return json(static_cast<std::int64_t>(c.get_si()));
  return json(c.get_str());
}

json point_json(const IntVec& v) { return json(v); }

json box_json(const Box& b) { return json{{"lower", b.lower}, {"upper", b.upper}}; }

int status_for(const std::exception& e) {
  if (auto h = dynamic_cast<const HttpError*>(&e)) return h->status;
  switch (exit_code_for(e)) {
    case 2:
      return 400;
    case 3:
      return 409;
    case 4:
      return 422;
    default:
      return 500;
  }
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

json parse_body(const httplib::Request& req) {
  try {
    json body = json::parse(req.body);
    if (!body.is_object()) throw ParseError("request body must be a JSON object");
    return body;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON body: ") + e.what());
  }
}

std::string require_string(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

IntVec parse_point_field(const json& body, std::size_t k) {
  auto it = body.find("point");
  if (it == body.end() || !it->is_array()) throw ParseError("field 'point' must be an array of integers");
  IntVec v;
  for (const auto& x : *it) {
    if (!x.is_number_integer()) throw ParseError("field 'point' must be an array of integers");
    v.push_back(x.get<Int>());
  }
  if (v.size() != k) throw ParseError("point needs " + std::to_string(k) + " coordinates");
  return v;
}

// Rows separated by ';' or newlines, entries by ',' or whitespace.
TermOrder order_from_text(std::string text, std::size_t p) {
  for (char& c : text) {
    if (c == ';') c = '\n';
    if (c == ',') c = ' ';
  }
  TermOrder order = TermOrder::parse(text);
  if (order.size() != p) throw DimensionMismatch("order matrix size differs from the outcome dimension");
  return order;
}

TermOrder order_field(const json& body, std::size_t k) {
  auto it = body.find("order");
  if (it == body.end() || it->is_null()) return TermOrder::identity(k);
  if (it->is_string()) return order_from_text(it->get<std::string>(), k);
  if (!it->is_array()) throw ParseError("field 'order' must be a matrix");
  std::string text;
  for (const auto& row : *it) {
    if (!row.is_array()) throw ParseError("field 'order' must be a matrix");
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw ParseError("order entries must be integers");
      text += std::to_string(x.get<Int>()) + " ";
    }
    text += "\n";
  }
  return order_from_text(text, k);
}

long long limit_from(const std::string& text) {
  if (text.empty()) return -1;
  std::size_t used = 0;
  long long n = 0;
  try {
    n = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ParseError("limit must be a non-negative integer");
  }
  if (used != text.size() || n < 0) throw ParseError("limit must be a non-negative integer");
  return n;
}

long long limit_field(const json& body) {
  auto it = body.find("limit");
  if (it == body.end() || it->is_null()) return -1;
  if (!it->is_number_integer() || it->get<long long>() < 0) throw ParseError("limit must be a non-negative integer");
  return it->get<long long>();
}

PolyhedralNorm polyhedral_field(const json& body, std::size_t k) {
  NormSpec spec = parse_norm_spec(require_string(body, "norm"), k);
  if (auto q = std::get_if<PolyhedralNorm>(&spec)) return *q;
  throw InvalidNorm("this endpoint needs a polyhedral norm");
}

json selection_json(const Selection& s) {
  return json{{"point", point_json(s.point)}, {"distance", to_fraction_string(s.distance)}};
}

json pseudo_json(const PseudoSelection& r) {
  return json{{"point", point_json(r.point)},
              {"qvalue", to_fraction_string(r.qvalue)},
              {"distance_bracket", json::array({r.root_lo, r.root_hi})},
              {"certificate",
               {{"gamma", r.gamma},
                {"delta", to_fraction_string(r.delta)},
                {"s", r.s},
                {"eps_prime", to_fraction_string(r.eps_prime)},
                {"moment", to_fraction_string(r.moment)},
                {"count", count_json(r.count)}}}};
}

}  // namespace

std::string problem_id(const std::string& canonical_text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return s;
}

struct Service::Impl {
  ServiceOptions options;
  httplib::Server server;
  std::thread thread;

  mutable std::mutex mutex;
  std::list<std::shared_ptr<const Entry>> lru;  // most recent first
  std::unordered_map<std::string, std::list<std::shared_ptr<const Entry>>::iterator> index;

  explicit Impl(ServiceOptions o) : options(std::move(o)) { routes(); }

  std::shared_ptr<const Entry> lookup(const std::string& id) {
    std::lock_guard lock(mutex);
    auto it = index.find(id);
    if (it == index.end()) throw HttpError(404, "unknown problem id '" + id + "'");
    lru.splice(lru.begin(), lru, it->second);
    return *it->second;
  }

  std::shared_ptr<const Entry> insert(const Problem& p) {
    const std::string text = format_problem(p);
    const std::string id = problem_id(text);
    {
      std::lock_guard lock(mutex);
      auto it = index.find(id);
      if (it != index.end()) {
        lru.splice(lru.begin(), lru, it->second);
        return *it->second;
      }
    }
    // Built outside the lock; a concurrent duplicate upload just recomputes.
    auto e = std::make_shared<Entry>(Entry{id, p, compute_handles(p), specialize_count(gf_of_polytope(p.polyhedron())),
                                           outcome_bound(p)});
    std::lock_guard lock(mutex);
    auto it = index.find(id);
    if (it != index.end()) return *it->second;
    lru.push_front(e);
    index[id] = lru.begin();
    while (lru.size() > std::max<std::size_t>(1, options.cache_capacity)) {
      index.erase(lru.back()->id);
      lru.pop_back();
    }
    return e;
  }

  template <typename F>
  static httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const std::exception& e) {
        send_json(res, json{{"error", e.what()}}, status_for(e));
      }
    };
  }

  // Streams records from `next` as NDJSON, one per provider call.
  template <typename Next>
  void stream(httplib::Response& res, Next next, long long limit) {
    auto hook = options.on_stream_event;
    auto produced = std::make_shared<std::size_t>(0);
    res.set_chunked_content_provider(
        "application/x-ndjson", [next = std::move(next), hook, produced, limit](std::size_t, httplib::DataSink& sink) mutable {
          const std::size_t i = *produced;
          if (limit >= 0 && static_cast<long long>(i) >= limit) {
            sink.done();
            return true;
          }
          if (hook) hook("compute", i);
          std::optional<json> rec;
          try {
            rec = next();
          } catch (const std::exception&) {
            return false;
          }
          if (!rec) {
            sink.done();
            return true;
          }
          const std::string line = rec->dump() + "\n";
          if (!sink.write(line.data(), line.size())) return false;
          ++*produced;
          if (hook) hook("emit", i);
          return true;
        });
  }

  void routes() {
    const std::string id = R"(/problems/([0-9a-f]{16}))";

    server.Post("/problems", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto e = insert(parse_problem(req.body));
                  const Problem& p = e->problem;
                  send_json(res, json{{"id", e->id},
                                      {"n", p.n},
                                      {"m", p.m()},
                                      {"k", p.k()},
                                      {"outcome_box", box_json(e->handles.box)},
                                      {"feasible_count", count_json(e->feasible_count)}});
                }));

    server.Get(id + "/pareto/count", guarded([this](const httplib::Request& req, httplib::Response& res) {
                 auto e = lookup(req.matches[1]);
                 send_json(res, json{{"pareto", count_json(e->handles.pareto_count)},
                                     {"strategies", count_json(e->handles.strategy_count)}});
               }));

    server.Get(id + "/pareto/stream", guarded([this](const httplib::Request& req, httplib::Response& res) {
                 auto e = lookup(req.matches[1]);
                 const std::size_t k = e->problem.k();
                 TermOrder order = req.has_param("order") ? order_from_text(req.get_param_value("order"), k)
                                                          : TermOrder::identity(k);
                 const long long limit = limit_from(req.get_param_value("limit"));
                 auto es = std::make_shared<EnumerationStream>(enumerate_projection(e->handles.pareto, e->bound, k, order));
                 stream(
                     res,
                     [e, es]() -> std::optional<json> {
                       auto w = es->next();
                       if (!w) return std::nullopt;
                       return json{{"point", point_json(*w)}};
                     },
                     limit);
               }));

    server.Post(id + "/nearest", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto e = lookup(req.matches[1]);
                  json body = parse_body(req);
                  const std::size_t k = e->problem.k();
                  PolyhedralNorm q = polyhedral_field(body, k);
                  send_json(res, selection_json(nearest_polyhedral(e->handles.pareto, q, parse_point_field(body, k),
                                                                   e->bound, order_field(body, k))));
                }));

    server.Post(id + "/rank", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto e = lookup(req.matches[1]);
                  json body = parse_body(req);
                  const std::size_t k = e->problem.k();
                  PolyhedralNorm q = polyhedral_field(body, k);
                  auto ds = std::make_shared<DistanceStream>(enumerate_by_distance(
                      e->handles.pareto, q, parse_point_field(body, k), e->bound, order_field(body, k)));
                  stream(
                      res,
                      [e, ds]() -> std::optional<json> {
                        auto s = ds->next();
                        if (!s) return std::nullopt;
                        return selection_json(*s);
                      },
                      limit_field(body));
                }));

    server.Post(id + "/fptas", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto e = lookup(req.matches[1]);
                  json body = parse_body(req);
                  const std::size_t k = e->problem.k();
                  NormSpec spec = parse_norm_spec(require_string(body, "pseudo"), k);
                  const IntVec vhat = parse_point_field(body, k);
                  const Rational eps = parse_rational(body.contains("eps") ? require_string(body, "eps") : "1/10");
                  if (auto pn = std::get_if<PseudoNorm>(&spec)) {
                    send_json(res, pseudo_json(fptas_nearest_pseudonorm(e->handles.pareto, *pn, vhat, e->bound, eps)));
                  } else if (auto lp = std::get_if<OddLpNorm>(&spec)) {
                    send_json(res, pseudo_json(nearest_odd_lp(e->handles.pareto, lp->p, vhat, e->bound, eps)));
                  } else {
                    throw InvalidNorm("fptas needs a pseudo or lp-odd norm");
                  }
                }));

    server.Get(id + "/ideal", guarded([this](const httplib::Request& req, httplib::Response& res) {
                 auto e = lookup(req.matches[1]);
                 send_json(res, json{{"point", point_json(ideal_point(e->problem))}});
               }));

    oracle_routes(id);
  }

  void oracle_routes(const std::string& id) {
    auto solved = [this](const httplib::Request& req) {
      auto e = lookup(req.matches[1]);
      return std::make_pair(e, oracle::solve(e->problem));
    };

    server.Post(id + "/oracle/count", guarded([solved](const httplib::Request& req, httplib::Response& res) {
                  auto [e, s] = solved(req);
                  send_json(res, json{{"pareto", s.pareto.size()}, {"strategies", s.strategies.size()}});
                }));

    server.Post(id + "/oracle/stream", guarded([solved](const httplib::Request& req, httplib::Response& res) {
                  auto [e, s] = solved(req);
                  json body = req.body.empty() ? json::object() : parse_body(req);
                  const long long limit = limit_field(body);
                  std::string out;
                  long long n = 0;
                  for (const auto& w : oracle::sorted_by(s.pareto, order_field(body, e->problem.k()))) {
                    if (limit >= 0 && n++ >= limit) break;
                    out += json{{"point", point_json(w)}}.dump() + "\n";
                  }
                  res.set_content(out, "application/x-ndjson");
                }));

    server.Post(id + "/oracle/nearest", guarded([solved](const httplib::Request& req, httplib::Response& res) {
                  auto [e, s] = solved(req);
                  json body = parse_body(req);
                  const std::size_t k = e->problem.k();
                  send_json(res, selection_json(oracle::nearest(s.pareto, polyhedral_field(body, k),
                                                                parse_point_field(body, k), order_field(body, k))));
                }));

    server.Post(id + "/oracle/rank", guarded([solved](const httplib::Request& req, httplib::Response& res) {
                  auto [e, s] = solved(req);
                  json body = parse_body(req);
                  const std::size_t k = e->problem.k();
                  const long long limit = limit_field(body);
                  std::string out;
                  long long n = 0;
                  for (const auto& r : oracle::rank(s.pareto, polyhedral_field(body, k), parse_point_field(body, k),
                                                    order_field(body, k))) {
                    if (limit >= 0 && n++ >= limit) break;
                    out += selection_json(r).dump() + "\n";
                  }
                  res.set_content(out, "application/x-ndjson");
                }));

    server.Post(id + "/oracle/fptas", guarded([solved](const httplib::Request& req, httplib::Response& res) {
                  auto [e, s] = solved(req);
                  json body = parse_body(req);
                  const std::size_t k = e->problem.k();
                  NormSpec spec = parse_norm_spec(require_string(body, "pseudo"), k);
                  const IntVec vhat = parse_point_field(body, k);
                  oracle::QMin best;
                  if (auto pn = std::get_if<PseudoNorm>(&spec)) {
                    best = oracle::nearest_q(s.pareto, pn->q, vhat);
                  } else if (auto lp = std::get_if<OddLpNorm>(&spec)) {
                    best = oracle::nearest_lp(s.pareto, lp->p, vhat);
                  } else {
                    throw InvalidNorm("fptas needs a pseudo or lp-odd norm");
                  }
                  send_json(res, json{{"point", point_json(best.point)}, {"qvalue", to_fraction_string(best.value)}});
                }));

    server.Post(id + "/oracle/ideal", guarded([solved](const httplib::Request& req, httplib::Response& res) {
                  auto [e, s] = solved(req);
                  send_json(res, json{{"point", point_json(s.ideal)}});
                }));
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void Service::listen() { impl_->server.listen_after_bind(); }

int Service::start(const std::string& host, int port) {
  const int bound = bind(host, port);
  if (bound < 0) return bound;
  impl_->thread = std::thread([this] { listen(); });
  impl_->server.wait_until_ready();
  return bound;
}

void Service::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::size_t Service::cached() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->lru.size();
}

int run_service(const std::string& host, int port, std::ostream& log) {
  Service service;
  const int bound = service.bind(host, port);
  if (bound < 0) {
    log << "error: cannot bind " << host << ":" << port << '\n';
    return 1;
  }
  log << "listening on http://" << host << ":" << bound << '\n' << std::flush;
  service.listen();
  return 0;
}

}  // namespace mcilp
