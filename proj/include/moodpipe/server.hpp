#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "moodpipe/scoring.hpp"

namespace moodpipe::server {

struct ApiError {
  int status = 500;  // 400, 404 or 500
  std::string code;
  std::string message;

  nlohmann::json to_json() const;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

using Params = std::multimap<std::string, std::string>;

inline constexpr std::size_t kMaxClassifyChars = 1000;

/// Request handlers independent of any HTTP library. The corpus and model
/// are fixed at construction; the stats store is read on every request.
/// Handlers never throw: failures come back as an ApiError body.
class Api {
 public:
  // `now` defaults to the newest corpus tweet, so searches over a replayed
  // corpus look at its final days.
  Api(std::shared_ptr<const scoring::Scorer> scorer, std::optional<scoring::StatsStore> store,
      std::optional<scoring::Timestamp> now = std::nullopt);

  ApiResponse score(const Params& query) const;     // GET /api/score?q=
  ApiResponse compare(const Params& query) const;   // GET /api/compare?q=a,b[,c]
  ApiResponse stats(const Params& query) const;     // GET /api/stats?q=&from=&to=
  ApiResponse classify(std::string_view body) const;  // POST /api/classify {"text": ...}
  ApiResponse health() const;                        // GET /api/health

  // Dispatches by method and path; unknown routes give 404.
  ApiResponse handle(std::string_view method, std::string_view path, const Params& query,
                     std::string_view body) const;

  scoring::Timestamp now() const { return now_; }

 private:
  std::shared_ptr<const scoring::Scorer> scorer_;
  std::optional<scoring::StatsStore> store_;
  scoring::Timestamp now_ = 0;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
};

/// HTTP front end with permissive CORS for a locally served UI.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<const Api> api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and returns the port in use. Throws std::runtime_error on failure.
  int bind(const ServeOptions& options);
  // Serves until stop() is called from another thread.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace moodpipe::server
