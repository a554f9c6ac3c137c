#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "moodpipe/text.hpp"

namespace moodpipe::corpus {

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

struct Tweet {
  std::string id;
  std::string text;  // byte-exact from the source record
  std::string lang;
  Timestamp created_at = 0;
  bool is_retweet_hint = false;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

struct IngestResult {
  std::vector<Tweet> tweets;
  std::size_t missing_text = 0;
  std::size_t malformed = 0;
  std::size_t duplicate_ids = 0;
  std::vector<std::string> warnings;
};

// Reads a JSON-lines corpus. Throws DataError when the file cannot be read;
// bad records are skipped and counted.
IngestResult ingest(const std::filesystem::path& path);
IngestResult ingest(std::istream& in);

// Parses RFC 3339 ("2012-02-08T10:15:00Z", offsets and fractions allowed)
// or a decimal epoch-seconds string.
std::optional<Timestamp> parse_timestamp(std::string_view s);

nlohmann::json to_json(const Tweet& t);
void write_jsonl(std::ostream& out, std::span<const Tweet> tweets);

// Keeps tweets whose primary language subtag is "en", case-insensitively.
std::vector<Tweet> keep_english_accounts(std::span<const Tweet> tweets);

struct FilterConfig {
  int min_length_chars = 20;
  std::shared_ptr<const text::EnglishDictionary> english_words;
  double english_match_threshold = 0.15;
  double similarity_threshold = 0.90;

  // Throws std::invalid_argument when a threshold is outside (0, 1], the
  // minimum length is negative or no word list is set.
  void validate() const;
};

struct FilterReport {
  std::size_t input = 0;
  std::size_t retweets_removed = 0;
  std::size_t short_removed = 0;
  std::size_t non_english_removed = 0;
  std::size_t duplicates_removed = 0;
  std::size_t kept = 0;

  friend bool operator==(const FilterReport&, const FilterReport&) = default;
};

nlohmann::json to_json(const FilterReport& r);

struct FilterResult {
  std::vector<Tweet> kept;
  FilterReport report;
};

/// Applies the four acquisition filters in order:
///  1. retweets: raw text contains "RT" (case-sensitive substring, so words
///     such as "START" also match);
///  2. short tweets: fewer than min_length_chars code points;
///  3. non-English: share of word tokens found in the English word list is
///     below english_match_threshold;
///  4. near duplicates: Jaccard similarity of the lowercased alphanumeric
///     token sets with any earlier kept tweet exceeds similarity_threshold.
///     The earliest tweet of a similar group survives.
FilterResult filter_pipeline(std::span<const Tweet> tweets, const FilterConfig& config,
                             const text::Tokenizer& tokenizer);

// Lowercased maximal runs of ASCII alphanumerics and non-ASCII bytes.
std::unordered_set<std::string> content_tokens(std::string_view text);

// Two empty sets count as identical (1.0).
double jaccard(const std::unordered_set<std::string>& a, const std::unordered_set<std::string>& b);

// Fraction of word tokens (URLs, mentions, numbers and punctuation
// excluded) that the dictionary recognises; 0 for a tweet without words.
double english_fraction(std::string_view text, const text::EnglishDictionary& dict,
                        const text::Tokenizer& tokenizer);

struct SearchOptions {
  std::size_t max_results = 1000;
  std::size_t page_size = 100;
  int window_days = 5;
};

/// Keyword search results delivered in pages, as a REST API would.
class SearchResult {
 public:
  SearchResult(std::vector<Tweet> tweets, std::size_t page_size);

  const std::vector<Tweet>& tweets() const { return tweets_; }
  std::size_t page_size() const { return page_size_; }
  // Number of calls a paging client would make: ceil(n / page_size).
  std::size_t page_count() const;
  std::span<const Tweet> page(std::size_t index) const;

 private:
  std::vector<Tweet> tweets_;
  std::size_t page_size_;
};

/// Immutable tweet collection ordered newest first (ties by ascending id),
/// replayed in place of the live search API.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Tweet> tweets);

  const std::vector<Tweet>& tweets() const { return tweets_; }
  std::size_t size() const { return tweets_.size(); }
  Timestamp newest() const;

  // Tweets whose lowercased text contains the lowercased keyword, created
  // in [now - window_days, now], newest first, truncated to max_results.
  // Throws std::invalid_argument on an empty keyword or a page size outside
  // 1..100.
  SearchResult search(std::string_view keyword, Timestamp now, const SearchOptions& options = {}) const;

  // All keyword matches created in [from, to), newest first.
  std::vector<Tweet> matching(std::string_view keyword, Timestamp from, Timestamp to) const;

 private:
  std::vector<Tweet> tweets_;
  std::vector<std::string> lowered_;
};

// Newest first; equal timestamps ordered by ascending id (numeric ids
// compare numerically).
bool newer_first(const Tweet& a, const Tweet& b);

}  // namespace moodpipe::corpus
