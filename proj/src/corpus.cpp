#include "moodpipe/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "moodpipe/error.hpp"

namespace moodpipe::corpus {

namespace {

constexpr std::size_t kMaxStoredWarnings = 100;
constexpr Timestamp kSecondsPerDay = 86400;

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void warn(IngestResult& r, std::size_t line_no, const std::string& what) {
  if (r.warnings.size() < kMaxStoredWarnings) {
    r.warnings.push_back("line " + std::to_string(line_no) + ": " + what);
  }
}

std::string id_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  return {};
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view s) {
  if (all_digits(s) || (s.size() > 1 && s.front() == '-' && all_digits(s.substr(1)))) {
    Timestamp v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc()) return std::nullopt;
    return v;
  }
  // YYYY-MM-DDTHH:MM:SS[.fff](Z|+HH:MM|-HH:MM)
  if (s.size() < 20) return std::nullopt;
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't' && s[10] != ' ') || s[13] != ':' ||
      s[16] != ':') {
    return std::nullopt;
  }
  if (!parse_int(s.substr(0, 4), year) || !parse_int(s.substr(5, 2), month) || !parse_int(s.substr(8, 2), day) ||
      !parse_int(s.substr(11, 2), hour) || !parse_int(s.substr(14, 2), minute) ||
      !parse_int(s.substr(17, 2), second)) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return std::nullopt;
  }
  if (pos >= s.size()) return std::nullopt;
  int offset_seconds = 0;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    if (s.size() - pos != 6 || s[pos + 3] != ':') return std::nullopt;
    int oh = 0, om = 0;
    if (!parse_int(s.substr(pos + 1, 2), oh) || !parse_int(s.substr(pos + 4, 2), om)) return std::nullopt;
    offset_seconds = (oh * 3600 + om * 60) * (s[pos] == '-' ? -1 : 1);
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;

  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                     std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) return std::nullopt;
  auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<Timestamp>(days) * kSecondsPerDay + hour * 3600 + minute * 60 + second - offset_seconds;
}

IngestResult ingest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read corpus file " + path.string());
  return ingest(in);
}

IngestResult ingest(std::istream& in) {
  IngestResult result;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      ++result.malformed;
      warn(result, line_no, "not a JSON object");
      continue;
    }
    auto text_it = rec.find("text");
    if (text_it == rec.end() || !text_it->is_string()) {
      ++result.missing_text;
      warn(result, line_no, "record has no text");
      continue;
    }

    Tweet t;
    t.text = text_it->get<std::string>();
    if (auto it = rec.find("id"); it != rec.end()) t.id = id_string(*it);
    if (t.id.empty()) {
      if (auto it = rec.find("id_str"); it != rec.end()) t.id = id_string(*it);
    }
    if (t.id.empty()) t.id = std::to_string(line_no);

    if (auto it = rec.find("lang"); it != rec.end() && it->is_string()) {
      t.lang = it->get<std::string>();
    } else if (auto u = rec.find("user"); u != rec.end() && u->is_object()) {
      if (auto ul = u->find("lang"); ul != u->end() && ul->is_string()) t.lang = ul->get<std::string>();
    }

    if (auto it = rec.find("created_at"); it != rec.end() && !it->is_null()) {
      std::optional<Timestamp> ts;
      if (it->is_number_integer() || it->is_number_unsigned()) {
        ts = it->get<Timestamp>();
      } else if (it->is_string()) {
        ts = parse_timestamp(it->get<std::string>());
      }
      if (!ts) {
        ++result.malformed;
        warn(result, line_no, "unparseable created_at");
        continue;
      }
      t.created_at = *ts;
    }
    if (auto it = rec.find("retweeted"); it != rec.end() && it->is_boolean()) {
      t.is_retweet_hint = it->get<bool>();
    }

    if (seen.contains(t.id)) {
      ++result.duplicate_ids;
      warn(result, line_no, "duplicate id " + t.id + " (first seen on line " + std::to_string(seen[t.id]) + ")");
      continue;
    }
    seen.emplace(t.id, line_no);
    result.tweets.push_back(std::move(t));
  }
  return result;
}

nlohmann::json to_json(const Tweet& t) {
  return {{"id", t.id}, {"text", t.text}, {"lang", t.lang}, {"created_at", t.created_at}, {"retweeted", t.is_retweet_hint}};
}

void write_jsonl(std::ostream& out, std::span<const Tweet> tweets) {
  for (const auto& t : tweets) out << to_json(t).dump() << '\n';
}

std::vector<Tweet> keep_english_accounts(std::span<const Tweet> tweets) {
  std::vector<Tweet> out;
  for (const auto& t : tweets) {
    std::string_view lang = t.lang;
    auto sep = lang.find_first_of("-_");
    std::string primary = text::ascii_lower(lang.substr(0, sep));
    if (primary == "en") out.push_back(t);
  }
  return out;
}

void FilterConfig::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (min_length_chars < 0) throw std::invalid_argument("min_length_chars must be non-negative");
  if (!in_unit(english_match_threshold)) throw std::invalid_argument("english_match_threshold must be in (0, 1]");
  if (!in_unit(similarity_threshold)) throw std::invalid_argument("similarity_threshold must be in (0, 1]");
  if (!english_words || english_words->size() == 0) throw std::invalid_argument("filter needs an English word list");
}

nlohmann::json to_json(const FilterReport& r) {
  return {{"retweets_removed", r.retweets_removed},
          {"short_removed", r.short_removed},
          {"non_english_removed", r.non_english_removed},
          {"duplicates_removed", r.duplicates_removed},
          {"kept", r.kept}};
}

std::unordered_set<std::string> content_tokens(std::string_view text) {
  std::unordered_set<std::string> out;
  std::string cur;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    bool word = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
    if (word) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : ch);
    } else if (!cur.empty()) {
      out.insert(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.insert(std::move(cur));
  return out;
}

double jaccard(const std::unordered_set<std::string>& a, const std::unordered_set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t inter = 0;
  for (const auto& t : small) inter += large.contains(t) ? 1 : 0;
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

double english_fraction(std::string_view text, const text::EnglishDictionary& dict, const text::Tokenizer& tokenizer) {
  std::size_t words = 0;
  std::size_t known = 0;
  for (const auto& tok : tokenizer.tokenize(text)) {
    if (tok.kind != text::TokenKind::Word || text::is_clitic(tok.surface)) continue;
    std::string w = text::ascii_lower(tok.surface);
    std::erase_if(w, [](char c) { return c == '\'' || c == '-'; });
    if (w.empty()) continue;
    ++words;
    known += dict.contains(w) ? 1 : 0;
  }
  return words == 0 ? 0.0 : static_cast<double>(known) / static_cast<double>(words);
}

FilterResult filter_pipeline(std::span<const Tweet> tweets, const FilterConfig& config,
                             const text::Tokenizer& tokenizer) {
  config.validate();
  FilterResult result;
  result.report.input = tweets.size();

  // Inverted index over kept tweets for the near-duplicate scan; only
  // tweets sharing a token can exceed a positive similarity threshold.
  std::vector<std::unordered_set<std::string>> kept_sets;
  std::unordered_map<std::string, std::vector<std::size_t>> postings;
  bool kept_empty_set = false;

  for (const auto& t : tweets) {
    if (t.text.find("RT") != std::string::npos) {
      ++result.report.retweets_removed;
      continue;
    }
    if (text::utf8_length(t.text) < static_cast<std::size_t>(config.min_length_chars)) {
      ++result.report.short_removed;
      continue;
    }
    if (english_fraction(t.text, *config.english_words, tokenizer) < config.english_match_threshold) {
      ++result.report.non_english_removed;
      continue;
    }

    auto tokens = content_tokens(t.text);
    bool duplicate = false;
    if (tokens.empty()) {
      duplicate = kept_empty_set;
    } else {
      std::unordered_map<std::size_t, std::size_t> shared;
      for (const auto& tok : tokens) {
        auto it = postings.find(tok);
        if (it == postings.end()) continue;
        for (auto idx : it->second) ++shared[idx];
      }
      for (const auto& [idx, inter] : shared) {
        double sim = static_cast<double>(inter) /
                     static_cast<double>(tokens.size() + kept_sets[idx].size() - inter);
        if (sim > config.similarity_threshold) {
          duplicate = true;
          break;
        }
      }
    }
    if (duplicate) {
      ++result.report.duplicates_removed;
      continue;
    }

    if (tokens.empty()) kept_empty_set = true;
    std::size_t idx = kept_sets.size();
    for (const auto& tok : tokens) postings[tok].push_back(idx);
    kept_sets.push_back(std::move(tokens));
    result.kept.push_back(t);
  }
  result.report.kept = result.kept.size();
  return result;
}

bool newer_first(const Tweet& a, const Tweet& b) {
  if (a.created_at != b.created_at) return a.created_at > b.created_at;
  if (all_digits(a.id) && all_digits(b.id) && a.id.size() != b.id.size()) return a.id.size() < b.id.size();
  return a.id < b.id;
}

SearchResult::SearchResult(std::vector<Tweet> tweets, std::size_t page_size)
    : tweets_(std::move(tweets)), page_size_(page_size) {
  if (page_size_ == 0) throw std::invalid_argument("page size must be positive");
}

std::size_t SearchResult::page_count() const { return (tweets_.size() + page_size_ - 1) / page_size_; }

std::span<const Tweet> SearchResult::page(std::size_t index) const {
  if (index >= page_count()) throw std::out_of_range("search page " + std::to_string(index) + " out of range");
  std::size_t begin = index * page_size_;
  std::size_t len = std::min(page_size_, tweets_.size() - begin);
  return std::span<const Tweet>(tweets_).subspan(begin, len);
}

Corpus::Corpus(std::vector<Tweet> tweets) : tweets_(std::move(tweets)) {
  std::stable_sort(tweets_.begin(), tweets_.end(), newer_first);
  lowered_.reserve(tweets_.size());
  for (const auto& t : tweets_) lowered_.push_back(text::ascii_lower(t.text));
}

Timestamp Corpus::newest() const { return tweets_.empty() ? 0 : tweets_.front().created_at; }

SearchResult Corpus::search(std::string_view keyword, Timestamp now, const SearchOptions& options) const {
  if (keyword.empty()) throw std::invalid_argument("search keyword must not be empty");
  if (options.page_size == 0 || options.page_size > 100) {
    throw std::invalid_argument("page size must be between 1 and 100");
  }
  if (options.window_days < 0) throw std::invalid_argument("window_days must be non-negative");
  std::string needle = text::ascii_lower(keyword);
  Timestamp oldest = now - static_cast<Timestamp>(options.window_days) * kSecondsPerDay;
  std::vector<Tweet> hits;
  for (std::size_t i = 0; i < tweets_.size() && hits.size() < options.max_results; ++i) {
    const auto& t = tweets_[i];
    if (t.created_at > now) continue;
    if (t.created_at < oldest) break;
    if (lowered_[i].find(needle) != std::string::npos) hits.push_back(t);
  }
  return SearchResult(std::move(hits), options.page_size);
}

std::vector<Tweet> Corpus::matching(std::string_view keyword, Timestamp from, Timestamp to) const {
  if (keyword.empty()) throw std::invalid_argument("keyword must not be empty");
  std::string needle = text::ascii_lower(keyword);
  std::vector<Tweet> hits;
  for (std::size_t i = 0; i < tweets_.size(); ++i) {
    const auto& t = tweets_[i];
    if (t.created_at >= to) continue;
    if (t.created_at < from) break;
    if (lowered_[i].find(needle) != std::string::npos) hits.push_back(t);
  }
  return hits;
}

}  // namespace moodpipe::corpus
