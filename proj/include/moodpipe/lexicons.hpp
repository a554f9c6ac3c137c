#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "moodpipe/pos_tagger.hpp"
#include "moodpipe/text.hpp"

namespace moodpipe::lexicons {

enum class Strength { Strong, Weak };
enum class Polarity { Positive, Negative, Neutral, Both };
// The MPQA pos1 field: adj, noun, verb, adverb or anypos.
enum class PosClass { Any, Adjective, Noun, Verb, Adverb };

struct MpqaEntry {
  std::string word;
  Strength strength = Strength::Weak;
  Polarity polarity = Polarity::Neutral;
  PosClass pos = PosClass::Any;
  bool stemmed = false;  // matches any word with the same Porter stem
};

// +1 strong positive, +0.5 weak positive, -0.5 weak negative, -1 strong
// negative, 0 for neutral or both.
double weight(const MpqaEntry& e);

bool pos_matches(PosClass c, text::PosTag tag);

/// Subjectivity clue lexicon in the MPQA "key=value" line format.
class MpqaLexicon {
 public:
  MpqaLexicon() = default;
  // Entries are kept in order; a repeated (word, pos) pair keeps the first.
  explicit MpqaLexicon(std::vector<MpqaEntry> entries);

  // Throws DataError when the file is unreadable or yields no entries.
  // Malformed lines are skipped; a description of each is appended to
  // `warnings` when given.
  static MpqaLexicon load(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

  /// Entry for a lowercase word. Exact entries beat stemmed ones. With
  /// `enforce_pos` only entries whose pos1 admits `tag` are considered;
  /// otherwise the first entry for the word in file order wins.
  const MpqaEntry* find(std::string_view lower_word, text::PosTag tag = text::PosTag::None,
                        bool enforce_pos = false) const;

  std::size_t size() const { return entries_.size(); }
  std::span<const MpqaEntry> entries() const { return entries_; }

 private:
  const MpqaEntry* pick(const std::vector<std::size_t>& candidates, text::PosTag tag, bool enforce_pos) const;

  std::vector<MpqaEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> exact_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_stem_;
};

struct MpqaTally {
  double score = 0.0;
  std::size_t positive_words = 0;
  std::size_t negative_words = 0;
};

// Scores Word tokens (lowercased here). Hashtag and other kinds are ignored.
MpqaTally mpqa_tally(std::span<const text::TaggedToken> tokens, const MpqaLexicon& lexicon,
                     bool enforce_pos = false);
double mpqa_score(std::span<const text::Token> tokens, const MpqaLexicon& lexicon);

class EmoticonLexicon {
 public:
  // Throws std::invalid_argument if either side is empty or they overlap.
  EmoticonLexicon(std::vector<std::string> positive, std::vector<std::string> negative);

  // The bundled inventory, identical to data/emoticons_{positive,negative}.txt.
  static EmoticonLexicon builtin();
  static EmoticonLexicon load(const std::filesystem::path& positive, const std::filesystem::path& negative);

  // +1, -1 or 0 for a token surface.
  int polarity(std::string_view surface) const;

  const std::vector<std::string>& positive() const { return positive_; }
  const std::vector<std::string>& negative() const { return negative_; }
  std::vector<std::string> all() const;

 private:
  std::vector<std::string> positive_;
  std::vector<std::string> negative_;
  std::unordered_set<std::string> pos_set_;
  std::unordered_set<std::string> neg_set_;
};

struct EmoticonTally {
  std::size_t positive = 0;
  std::size_t negative = 0;

  long score() const { return static_cast<long>(positive) - static_cast<long>(negative); }
  std::size_t total() const { return positive + negative; }
};

EmoticonTally emoticon_tally(std::span<const text::Token> tokens, const EmoticonLexicon& lexicon);
long emoticon_score(std::span<const text::Token> tokens, const EmoticonLexicon& lexicon);

}  // namespace moodpipe::lexicons
