#pragma once

// Local HTTP/JSON facade: problem upload, counts, NDJSON streams of Pareto
// optima and distance rankings, and selection queries.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

namespace mcilp {

struct ServiceOptions {
  std::size_t cache_capacity = 64;
  /// Called with ("compute", i) before record i of a stream is produced and
  /// ("emit", i) once it has been handed to the socket.
  std::function<void(const std::string& event, std::size_t index)> on_stream_event;
};

class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  /// bind() then listen() on a background thread; returns the port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  void stop();

  /// Number of problems currently cached.
  [[nodiscard]] std::size_t cached() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocking entry point used by `mcilp serve`.
int run_service(const std::string& host, int port, std::ostream& log);

/// FNV-1a 64-bit digest of the canonical problem text, as 16 hex digits.
std::string problem_id(const std::string& canonical_text);

}  // namespace mcilp
