#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace moodpipe::text {

enum class TokenKind : std::uint8_t { Word, Url, Mention, Hashtag, Emoticon, Punct, Number };

std::string_view to_string(TokenKind kind);

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::Word;

  friend bool operator==(const Token&, const Token&) = default;
};

// Small bit set over TokenKind.
class KindSet {
 public:
  constexpr KindSet() = default;
  constexpr KindSet(std::initializer_list<TokenKind> kinds) {
    for (auto k : kinds) bits_ |= bit(k);
  }
  constexpr bool contains(TokenKind k) const { return (bits_ & bit(k)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }

 private:
  static constexpr std::uint8_t bit(TokenKind k) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

/// Splits micro-blog text into typed tokens.
///
/// Recognised, in priority order at each position: URLs (http:// or
/// https:// up to the next whitespace), @mentions, #hashtags, emoticons from
/// the configured inventory (longest match first), numbers, words and runs
/// of punctuation. Whitespace separates tokens and is discarded. English
/// clitics ('s, n't, 're, 've, 'll, 'd, 'm) are split off words as separate
/// Word tokens so that the tagger can see possessive endings.
///
/// An emoticon is only matched where the preceding character is not
/// alphanumeric; one that ends in a letter or digit must also be followed by
/// a non-alphanumeric character ("xD" matches in "lol xD" but not in "xDrive").
class Tokenizer {
 public:
  Tokenizer() = default;
  explicit Tokenizer(std::vector<std::string> emoticons);

  std::vector<Token> tokenize(std::string_view text) const;

  std::span<const std::string> emoticons() const { return emoticons_; }

 private:
  std::size_t match_emoticon(std::string_view text, std::size_t pos) const;

  std::vector<std::string> emoticons_;  // sorted longest first
};

std::vector<Token> strip_noise(std::span<const Token> tokens, KindSet drop);

std::string ascii_lower(std::string_view s);

// True for the clitic pieces the tokenizer splits off ('s, n't, ...).
bool is_clitic(std::string_view surface);

// Number of UTF-8 code points; invalid lead bytes count as one each.
std::size_t utf8_length(std::string_view s);

/// Porter suffix-stripping stemmer, as distributed in Martin Porter's
/// reference implementations (including the "bli"/"logi" step 2 rules and
/// leaving words of one or two letters untouched). Expects lowercase ASCII.
std::string porter_stem(std::string_view word);

class StopList {
 public:
  StopList() = default;
  explicit StopList(std::unordered_set<std::string> words);

  static StopList load(const std::filesystem::path& path);

  bool contains(std::string_view lower_word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Drops Word tokens whose lowercase form is a stop word.
std::vector<Token> remove_stopwords(std::span<const Token> tokens, const StopList& stoplist);

// A list of common English words, compared both verbatim and after
// Porter stemming of the candidate and of every list entry.
class EnglishDictionary {
 public:
  EnglishDictionary() = default;
  explicit EnglishDictionary(std::vector<std::string> words);

  static EnglishDictionary load(const std::filesystem::path& path);

  bool contains(std::string_view lower_word) const;
  std::size_t size() const { return words_.size(); }
  const std::unordered_set<std::string>& words() const { return words_; }

 private:
  std::unordered_set<std::string> words_;
  std::unordered_set<std::string> stems_;
};

// Reads one entry per line, trimming whitespace and skipping blank lines.
std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace moodpipe::text
