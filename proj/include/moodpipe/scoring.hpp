#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "moodpipe/classify.hpp"
#include "moodpipe/corpus.hpp"
#include "moodpipe/resources.hpp"

namespace moodpipe::scoring {

using corpus::Timestamp;

struct ScoreConfig {
  double velocity_ref = 200.0;  // tweets per hour at which intensity saturates
  double floor = 0.25;          // share of the base score kept at zero velocity
  std::size_t samples_per_class = 10;
  corpus::SearchOptions search;

  // Throws std::invalid_argument for a non-positive velocity_ref or a floor
  // outside [0, 1].
  void validate() const;
};

// 100 (n_pos - n_neg) / (n_pos + n_neg), or 0 when both are zero.
double base_score(std::uint64_t n_pos, std::uint64_t n_neg);

/// base * (floor + (1 - floor) * min(1, velocity / velocity_ref)) where
/// base = 100 (n_pos - n_neg) / (n_pos + n_neg), or 0 without any
/// positive or negative tweet. Neutral tweets do not enter the base.
double popularity_score(std::uint64_t n_pos, std::uint64_t n_neg, double velocity_per_hour,
                        const ScoreConfig& config = {});

struct ClassifiedTweet {
  corpus::Tweet tweet;
  classify::Sentiment label = classify::Sentiment::Objective;
  classify::StageOnePoint point;
};

std::vector<ClassifiedTweet> classify_tweets(std::span<const corpus::Tweet> tweets, const classify::Pipeline& pipeline,
                                             const Resources& resources);

struct ScoreResult {
  std::string keyword;
  double score = 0;
  double base = 0;
  double velocity = 0;  // acquired tweets per hour
  std::uint64_t n_pos = 0;
  std::uint64_t n_neg = 0;
  std::uint64_t n_neu = 0;
  std::uint64_t acquired = 0;
  double window_seconds = 0;  // newest minus oldest acquired tweet
  std::size_t pages = 0;      // search calls a paging client would make
  // Indexed by Sentiment; at most samples_per_class each, newest first.
  std::array<std::vector<ClassifiedTweet>, 3> samples;

  nlohmann::json to_json() const;
};

/// Scores classified search results. The time window spans the oldest to
/// the newest tweet, with one minute as the smallest window so a single
/// tweet has a finite velocity. `classified` should be newest first; the
/// samples keep the first tweets of each class in that order.
ScoreResult tweet_score(std::string_view keyword, std::span<const ClassifiedTweet> classified,
                        const ScoreConfig& config = {});

struct HourlyStat {
  std::string keyword;  // lowercased
  Timestamp hour_start = 0;
  double score = 0;
  std::uint64_t n_pos = 0;
  std::uint64_t n_neg = 0;
  std::uint64_t n_neu = 0;

  friend bool operator==(const HourlyStat&, const HourlyStat&) = default;
};

nlohmann::json to_json(const HourlyStat& s);
HourlyStat hourly_stat_from_json(const nlohmann::json& j);

/// JSON-lines file of hourly stats with one record per (keyword, hour).
/// Writers serialize on an advisory lock next to the file and replace the
/// file atomically, so readers always see a complete snapshot and a failed
/// write leaves the previous state untouched.
class StatsStore {
 public:
  explicit StatsStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  // Every record sorted by (keyword, hour). A missing file is an empty
  // store; when a key repeats the last line wins. Throws DataError on an
  // unreadable or corrupt file.
  std::vector<HourlyStat> load() const;

  // Inserts or replaces records by key. Throws DataError when the store
  // cannot be written.
  void upsert(std::span<const HourlyStat> records) const;

  // Records of one keyword (case-insensitive) with hour_start in [from, to),
  // in time order. Throws std::invalid_argument when from > to.
  std::vector<HourlyStat> series(std::string_view keyword, Timestamp from, Timestamp to) const;

 private:
  std::filesystem::path path_;
};

inline constexpr std::size_t kMaxTickKeywords = 300;
inline constexpr Timestamp kHour = 3600;

/// Keyword scoring over a fixed corpus and trained pipeline.
class Scorer {
 public:
  Scorer(std::shared_ptr<const corpus::Corpus> corpus, std::shared_ptr<const classify::Pipeline> pipeline,
         std::shared_ptr<const Resources> resources, ScoreConfig config = {});

  // Search, classify and score one keyword as of `now`.
  ScoreResult score(std::string_view keyword, Timestamp now) const;

  /// Scores two or three keywords, highest score first, ties in
  /// alphabetical order of the lowercased keyword. Throws
  /// std::invalid_argument for a different count, an empty keyword or a
  /// repeat after case folding.
  std::vector<ScoreResult> compare(std::span<const std::string> keywords, Timestamp now) const;

  /// Scores each keyword over tweets created in [hour, hour + 3600) and
  /// upserts the results. Throws std::invalid_argument for more than 300
  /// keywords, an empty keyword or an hour not on an hour boundary.
  std::vector<HourlyStat> tick(std::span<const std::string> keywords, Timestamp hour, const StatsStore& store) const;

  const corpus::Corpus& corpus() const { return *corpus_; }
  const classify::Pipeline& pipeline() const { return *pipeline_; }
  const Resources& resources() const { return *resources_; }
  const ScoreConfig& config() const { return config_; }

 private:
  std::shared_ptr<const corpus::Corpus> corpus_;
  std::shared_ptr<const classify::Pipeline> pipeline_;
  std::shared_ptr<const Resources> resources_;
  ScoreConfig config_;
};

}  // namespace moodpipe::scoring
