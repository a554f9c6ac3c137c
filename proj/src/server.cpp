#include "moodpipe/server.hpp"

#include <httplib.h>

#include <charconv>
#include <limits>
#include <stdexcept>
#include <vector>

#include "moodpipe/text.hpp"

namespace moodpipe::server {

namespace {

ApiResponse error(int status, std::string code, std::string message) {
  return {status, ApiError{status, std::move(code), std::move(message)}.to_json()};
}

std::optional<std::string> param(const Params& q, const std::string& name) {
  auto it = q.find(name);
  if (it == q.end()) return std::nullopt;
  return it->second;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<scoring::Timestamp> parse_epoch(const std::string& s) {
  scoring::Timestamp v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// Runs a handler body, mapping argument errors to 400 and anything else to 500.
template <typename F>
ApiResponse guarded(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    return error(400, "bad_request", e.what());
  } catch (const std::exception& e) {
    return error(500, "internal", e.what());
  }
}

}  // namespace

nlohmann::json ApiError::to_json() const {
  return {{"error", {{"status", status}, {"code", code}, {"message", message}}}};
}

Api::Api(std::shared_ptr<const scoring::Scorer> scorer, std::optional<scoring::StatsStore> store,
         std::optional<scoring::Timestamp> now)
    : scorer_(std::move(scorer)), store_(std::move(store)) {
  if (!scorer_) throw std::invalid_argument("api needs a scorer");
  now_ = now ? *now : scorer_->corpus().newest();
}

ApiResponse Api::score(const Params& query) const {
  auto q = param(query, "q");
  if (!q || trim(*q).empty()) return error(400, "missing_keyword", "query parameter q is required");
  return guarded([&] { return ApiResponse{200, scorer_->score(trim(*q), now_).to_json()}; });
}

ApiResponse Api::compare(const Params& query) const {
  auto q = param(query, "q");
  if (!q) return error(400, "missing_keyword", "query parameter q is required");
  std::vector<std::string> keywords;
  std::string_view rest = *q;
  while (true) {
    auto comma = rest.find(',');
    keywords.push_back(trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (keywords.size() < 2 || keywords.size() > 3) {
    return error(400, "keyword_count", "compare takes two or three comma-separated keywords");
  }
  return guarded([&] {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : scorer_->compare(keywords, now_)) out.push_back(r.to_json());
    return ApiResponse{200, std::move(out)};
  });
}

ApiResponse Api::stats(const Params& query) const {
  auto q = param(query, "q");
  if (!q || trim(*q).empty()) return error(400, "missing_keyword", "query parameter q is required");
  scoring::Timestamp from = std::numeric_limits<scoring::Timestamp>::min();
  scoring::Timestamp to = std::numeric_limits<scoring::Timestamp>::max();
  for (auto [name, target] : {std::pair{"from", &from}, std::pair{"to", &to}}) {
    if (auto v = param(query, name)) {
      auto t = parse_epoch(*v);
      if (!t) return error(400, "bad_time", std::string(name) + " must be epoch seconds");
      *target = *t;
    }
  }
  if (from > to) return error(400, "bad_range", "from must not exceed to");
  if (!store_) return ApiResponse{200, nlohmann::json::array()};
  return guarded([&] {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : store_->series(trim(*q), from, to)) out.push_back(scoring::to_json(s));
    return ApiResponse{200, std::move(out)};
  });
}

ApiResponse Api::classify(std::string_view body) const {
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return error(400, "bad_json", "body must be a JSON object");
  auto it = doc.find("text");
  if (it == doc.end() || !it->is_string()) return error(400, "missing_text", "field text is required");
  auto txt = it->get<std::string>();
  if (text::utf8_length(txt) > kMaxClassifyChars) {
    return error(400, "text_too_long", "text is limited to " + std::to_string(kMaxClassifyChars) + " characters");
  }
  return guarded([&] {
    const auto& pipeline = scorer_->pipeline();
    auto analyzed = features::analyze(txt, scorer_->resources(), pipeline.terms());
    auto point = pipeline.point(analyzed);
    auto label = pipeline.stage2().predict(point);
    return ApiResponse{200, {{"class", classify::to_string(label)}, {"p_obj", point.p_obj}, {"p_pos", point.p_pos}}};
  });
}

ApiResponse Api::health() const {
  return {200, {{"status", "ok"}, {"tweets", scorer_->corpus().size()}, {"now", now_}}};
}

ApiResponse Api::handle(std::string_view method, std::string_view path, const Params& query,
                        std::string_view body) const {
  if (method == "GET") {
    if (path == "/api/score") return score(query);
    if (path == "/api/compare") return compare(query);
    if (path == "/api/stats") return stats(query);
    if (path == "/api/health") return health();
  } else if (method == "POST" && path == "/api/classify") {
    return classify(body);
  }
  return error(404, "not_found", "no route for " + std::string(method) + " " + std::string(path));
}

struct HttpServer::Impl {
  std::shared_ptr<const Api> api;
  httplib::Server http;
};

HttpServer::HttpServer(std::shared_ptr<const Api> api) : impl_(std::make_unique<Impl>()) {
  impl_->api = std::move(api);
  auto& http = impl_->http;
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                            {"Access-Control-Allow-Headers", "Content-Type"}});
  http.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  auto dispatch = [api = impl_->api](const httplib::Request& req, httplib::Response& res) {
    Params query(req.params.begin(), req.params.end());
    auto r = api->handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  http.Get(".*", dispatch);
  http.Post(".*", dispatch);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const ServeOptions& options) {
  int port = options.port;
  if (port == 0) {
    port = impl_->http.bind_to_any_port(options.host);
  } else if (!impl_->http.bind_to_port(options.host, port)) {
    port = -1;
  }
  if (port < 0) throw std::runtime_error("cannot bind " + options.host + ":" + std::to_string(options.port));
  return port;
}

void HttpServer::listen() { impl_->http.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace moodpipe::server
