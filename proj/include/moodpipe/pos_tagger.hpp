#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "moodpipe/text.hpp"

namespace moodpipe::text {

// Penn Treebank word-level tags. `None` marks non-word tokens.
enum class PosTag : std::uint8_t {
  None,
  CC, CD, DT, EX, FW, IN, JJ, JJR, JJS, LS, MD, NN, NNS, NNP, NNPS, PDT, POS,
  PRP, PRP_S, RB, RBR, RBS, RP, SYM, TO, UH, VB, VBD, VBG, VBN, VBP, VBZ,
  WDT, WP, WP_S, WRB,
};

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

bool is_adjective(PosTag tag);
bool is_verb(PosTag tag);
bool is_noun(PosTag tag);
bool is_pronoun(PosTag tag);
bool is_adverb(PosTag tag);

struct TaggedToken {
  Token token;
  PosTag tag = PosTag::None;
};

/// Deterministic lexicon tagger with suffix fallbacks.
///
/// Each Word token is looked up verbatim, then lowercased, in a word->tag
/// lexicon holding each word's most frequent tag. Capitalised words that are
/// not sentence-initial and not in the lexicon verbatim become NNP. Unknown
/// words go through suffix rules (-ly RB, -ing VBG, -ed VBD, -est JJS, -er
/// JJR on an adjectival stem, -s NNS or VBZ depending on the stem's lexicon
/// tag) and otherwise default to NN. Number tokens are tagged CD; all other
/// token kinds get PosTag::None.
class PosTagger {
 public:
  PosTagger() = default;
  explicit PosTagger(std::unordered_map<std::string, PosTag> lexicon);

  // Lexicon file: "word<TAB>TAG" per line; unknown tags are skipped.
  static PosTagger load(const std::filesystem::path& path);

  std::vector<TaggedToken> tag(std::span<const Token> tokens) const;

  // Tag for a single word with no sentence context.
  PosTag tag_word(std::string_view word, bool sentence_initial = true) const;

  std::size_t lexicon_size() const { return lexicon_.size(); }

 private:
  std::optional<PosTag> lookup(std::string_view word) const;
  PosTag suffix_rules(const std::string& lower) const;
  bool adjectival_stem(const std::string& stem) const;

  std::unordered_map<std::string, PosTag> lexicon_;
};

}  // namespace moodpipe::text
