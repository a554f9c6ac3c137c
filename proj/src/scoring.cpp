#include "moodpipe/scoring.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "moodpipe/error.hpp"
#include "moodpipe/text.hpp"

namespace moodpipe::scoring {

using classify::Sentiment;

namespace {

std::string lowered_keyword(std::string_view keyword) {
  if (keyword.empty()) throw std::invalid_argument("keyword must not be empty");
  return text::ascii_lower(keyword);
}

// Exclusive advisory lock on "<store>.lock" for the lifetime of the object.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& target) {
    auto lock_path = target.string() + ".lock";
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw DataError("cannot open lock file " + lock_path + ": " + std::strerror(errno));
    while (::flock(fd_, LOCK_EX) != 0) {
      if (errno != EINTR) {
        ::close(fd_);
        throw DataError("cannot lock " + lock_path + ": " + std::strerror(errno));
      }
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

void write_all(int fd, const std::string& data, const std::string& where) {
  std::size_t done = 0;
  while (done < data.size()) {
    auto n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw DataError("cannot write " + where + ": " + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
}

// Writes `data` to a sibling temporary file, syncs it and renames it over
// `path`, so the target holds either the old or the new content.
void replace_file(const std::filesystem::path& path, const std::string& data) {
  auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
  int fd = ::open(tmp.c_str(), O_CREAT | O_TRUNC | O_WRONLY | O_CLOEXEC, 0644);
  if (fd < 0) throw DataError("cannot create " + tmp + ": " + std::strerror(errno));
  try {
    write_all(fd, data, tmp);
    if (::fsync(fd) != 0) throw DataError("cannot sync " + tmp + ": " + std::strerror(errno));
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  ::close(fd);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    ::unlink(tmp.c_str());
    throw DataError("cannot replace " + path.string() + ": " + ec.message());
  }
}

std::mutex& store_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void ScoreConfig::validate() const {
  if (!(velocity_ref > 0)) throw std::invalid_argument("velocity_ref must be positive");
  if (!(floor >= 0 && floor <= 1)) throw std::invalid_argument("score floor must lie in [0, 1]");
}

double base_score(std::uint64_t n_pos, std::uint64_t n_neg) {
  if (n_pos + n_neg == 0) return 0.0;
  double diff = n_pos >= n_neg ? static_cast<double>(n_pos - n_neg) : -static_cast<double>(n_neg - n_pos);
  return 100.0 * diff / static_cast<double>(n_pos + n_neg);
}

double popularity_score(std::uint64_t n_pos, std::uint64_t n_neg, double velocity_per_hour,
                        const ScoreConfig& config) {
  double base = base_score(n_pos, n_neg);
  double intensity = std::min(1.0, std::max(0.0, velocity_per_hour) / config.velocity_ref);
  return base * (config.floor + (1.0 - config.floor) * intensity);
}

std::vector<ClassifiedTweet> classify_tweets(std::span<const corpus::Tweet> tweets, const classify::Pipeline& pipeline,
                                             const Resources& resources) {
  std::vector<ClassifiedTweet> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) {
    auto analyzed = features::analyze(t.text, resources, pipeline.terms());
    auto point = pipeline.point(analyzed);
    out.push_back({t, pipeline.stage2().predict(point), point});
  }
  return out;
}

ScoreResult tweet_score(std::string_view keyword, std::span<const ClassifiedTweet> classified,
                        const ScoreConfig& config) {
  config.validate();
  ScoreResult r;
  r.keyword = std::string(keyword);
  r.acquired = classified.size();
  if (classified.empty()) return r;

  Timestamp oldest = classified.front().tweet.created_at;
  Timestamp newest = oldest;
  for (const auto& c : classified) {
    oldest = std::min(oldest, c.tweet.created_at);
    newest = std::max(newest, c.tweet.created_at);
    switch (c.label) {
      case Sentiment::Positive: ++r.n_pos; break;
      case Sentiment::Negative: ++r.n_neg; break;
      case Sentiment::Objective: ++r.n_neu; break;
    }
    auto& bucket = r.samples[static_cast<std::size_t>(c.label)];
    if (bucket.size() < config.samples_per_class) bucket.push_back(c);
  }
  r.window_seconds = static_cast<double>(newest - oldest);
  double hours = std::max(r.window_seconds / 3600.0, 1.0 / 60.0);
  r.velocity = static_cast<double>(r.acquired) / hours;
  r.base = base_score(r.n_pos, r.n_neg);
  r.score = popularity_score(r.n_pos, r.n_neg, r.velocity, config);
  return r;
}

nlohmann::json ScoreResult::to_json() const {
  nlohmann::json samples_json = nlohmann::json::object();
  for (auto s : classify::kAllSentiments) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : samples[static_cast<std::size_t>(s)]) {
      list.push_back({{"id", c.tweet.id},
                      {"text", c.tweet.text},
                      {"created_at", c.tweet.created_at},
                      {"p_obj", c.point.p_obj},
                      {"p_pos", c.point.p_pos}});
    }
    samples_json[std::string(classify::to_string(s))] = std::move(list);
  }
  return {{"keyword", keyword},   {"score", score},       {"base", base},
          {"velocity", velocity}, {"n_pos", n_pos},       {"n_neg", n_neg},
          {"n_neu", n_neu},       {"acquired", acquired}, {"window_seconds", window_seconds},
          {"pages", pages},       {"samples", std::move(samples_json)}};
}

nlohmann::json to_json(const HourlyStat& s) {
  return {{"keyword", s.keyword}, {"hour_start", s.hour_start}, {"score", s.score},
          {"n_pos", s.n_pos},     {"n_neg", s.n_neg},           {"n_neu", s.n_neu}};
}

HourlyStat hourly_stat_from_json(const nlohmann::json& j) {
  HourlyStat s;
  s.keyword = j.at("keyword").get<std::string>();
  s.hour_start = j.at("hour_start").get<Timestamp>();
  s.score = j.at("score").get<double>();
  s.n_pos = j.at("n_pos").get<std::uint64_t>();
  s.n_neg = j.at("n_neg").get<std::uint64_t>();
  s.n_neu = j.at("n_neu").get<std::uint64_t>();
  return s;
}

StatsStore::StatsStore(std::filesystem::path path) : path_(std::move(path)) {}

std::vector<HourlyStat> StatsStore::load() const {
  std::ifstream in(path_);
  if (!in) {
    if (!std::filesystem::exists(path_)) return {};
    throw DataError("cannot read stats store " + path_.string());
  }
  std::map<std::pair<std::string, Timestamp>, HourlyStat> by_key;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto s = hourly_stat_from_json(nlohmann::json::parse(line));
      s.keyword = text::ascii_lower(s.keyword);
      by_key[{s.keyword, s.hour_start}] = s;
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path_.string() + ":" + std::to_string(line_no) + ": bad stats record: " + e.what());
    }
  }
  std::vector<HourlyStat> out;
  out.reserve(by_key.size());
  for (auto& [key, s] : by_key) out.push_back(std::move(s));
  return out;
}

void StatsStore::upsert(std::span<const HourlyStat> records) const {
  std::lock_guard guard(store_mutex());
  FileLock lock(path_);
  std::map<std::pair<std::string, Timestamp>, HourlyStat> by_key;
  for (auto& s : load()) by_key[{s.keyword, s.hour_start}] = s;
  for (auto s : records) {
    s.keyword = text::ascii_lower(s.keyword);
    by_key[{s.keyword, s.hour_start}] = s;
  }
  std::string data;
  for (const auto& [key, s] : by_key) {
    data += to_json(s).dump();
    data += '\n';
  }
  replace_file(path_, data);
}

std::vector<HourlyStat> StatsStore::series(std::string_view keyword, Timestamp from, Timestamp to) const {
  if (from > to) throw std::invalid_argument("series start lies after its end");
  auto key = text::ascii_lower(keyword);
  std::vector<HourlyStat> out;
  for (auto& s : load()) {
    if (s.keyword == key && s.hour_start >= from && s.hour_start < to) out.push_back(std::move(s));
  }
  return out;
}

Scorer::Scorer(std::shared_ptr<const corpus::Corpus> corpus, std::shared_ptr<const classify::Pipeline> pipeline,
               std::shared_ptr<const Resources> resources, ScoreConfig config)
    : corpus_(std::move(corpus)),
      pipeline_(std::move(pipeline)),
      resources_(std::move(resources)),
      config_(std::move(config)) {
  if (!corpus_ || !pipeline_ || !resources_) throw std::invalid_argument("scorer needs a corpus, pipeline and resources");
  config_.validate();
}

ScoreResult Scorer::score(std::string_view keyword, Timestamp now) const {
  lowered_keyword(keyword);
  auto found = corpus_->search(keyword, now, config_.search);
  auto classified = classify_tweets(found.tweets(), *pipeline_, *resources_);
  auto r = tweet_score(keyword, classified, config_);
  r.pages = found.page_count();
  return r;
}

std::vector<ScoreResult> Scorer::compare(std::span<const std::string> keywords, Timestamp now) const {
  if (keywords.size() < 2 || keywords.size() > 3) throw std::invalid_argument("compare takes two or three keywords");
  std::set<std::string> seen;
  for (const auto& k : keywords) {
    if (!seen.insert(lowered_keyword(k)).second) throw std::invalid_argument("duplicate keyword '" + k + "'");
  }
  std::vector<ScoreResult> out;
  for (const auto& k : keywords) out.push_back(score(k, now));
  std::sort(out.begin(), out.end(), [](const ScoreResult& a, const ScoreResult& b) {
    if (a.score != b.score) return a.score > b.score;
    return text::ascii_lower(a.keyword) < text::ascii_lower(b.keyword);
  });
  return out;
}

std::vector<HourlyStat> Scorer::tick(std::span<const std::string> keywords, Timestamp hour,
                                     const StatsStore& store) const {
  if (keywords.size() > kMaxTickKeywords) {
    throw std::invalid_argument("at most " + std::to_string(kMaxTickKeywords) + " keywords per tick");
  }
  if (hour % kHour != 0) throw std::invalid_argument("tick hour must fall on an hour boundary");
  std::vector<HourlyStat> stats;
  std::set<std::string> seen;
  for (const auto& k : keywords) {
    auto key = lowered_keyword(k);
    if (!seen.insert(key).second) continue;
    auto tweets = corpus_->matching(key, hour, hour + kHour);
    auto classified = classify_tweets(tweets, *pipeline_, *resources_);
    auto r = tweet_score(key, classified, config_);
    stats.push_back({key, hour, r.score, r.n_pos, r.n_neg, r.n_neu});
  }
  store.upsert(stats);
  return stats;
}

}  // namespace moodpipe::scoring
