#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "moodpipe/lexicons.hpp"
#include "moodpipe/pos_tagger.hpp"
#include "moodpipe/text.hpp"

namespace moodpipe {

// Everything text analysis needs, loaded once and shared read-only.
struct Resources {
  text::Tokenizer tokenizer;
  text::StopList stopwords;
  std::shared_ptr<const text::EnglishDictionary> english;
  text::PosTagger tagger;
  lexicons::MpqaLexicon mpqa;
  lexicons::EmoticonLexicon emoticons = lexicons::EmoticonLexicon::builtin();
  bool enforce_mpqa_pos = false;
  std::vector<std::string> warnings;

  /// Loads english_words.txt, stopwords.txt, tag_lexicon.tsv,
  /// mpqa_subset.tff and emoticons_{positive,negative}.txt from `dir`.
  /// Throws DataError naming the first missing or unusable file.
  static std::shared_ptr<const Resources> load(const std::filesystem::path& dir);
};

// Directory compiled in as the default data location.
std::filesystem::path default_data_dir();

}  // namespace moodpipe
