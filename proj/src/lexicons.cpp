#include "moodpipe/lexicons.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "moodpipe/error.hpp"

namespace moodpipe::lexicons {

namespace {

std::optional<PosClass> parse_pos_class(std::string_view s) {
  if (s == "adj") return PosClass::Adjective;
  if (s == "noun") return PosClass::Noun;
  if (s == "verb") return PosClass::Verb;
  if (s == "adverb") return PosClass::Adverb;
  if (s == "anypos") return PosClass::Any;
  return std::nullopt;
}

std::optional<Polarity> parse_polarity(std::string_view s) {
  if (s == "positive") return Polarity::Positive;
  if (s == "negative") return Polarity::Negative;
  if (s == "neutral") return Polarity::Neutral;
  if (s == "both") return Polarity::Both;
  return std::nullopt;
}

// Parses "k=v k=v ..." into a map; returns false on a token without '='.
bool parse_fields(std::string_view line, std::map<std::string, std::string, std::less<>>& out) {
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    std::string_view field = line.substr(i, j - i);
    auto eq = field.find('=');
    if (eq == std::string_view::npos || eq == 0) return false;
    out.emplace(std::string(field.substr(0, eq)), std::string(field.substr(eq + 1)));
    i = j;
  }
  return true;
}

const std::vector<std::string> kBuiltinPositive = {
    ":)", ":-)", ":D", ":-D", "=)", "=D", ";)", ";-)", ";D", ":P", ":-P",  ":p",  ":-p", ";P", ":]", "=]",
    ":}", ":o)", ":3", "<3", "xD", "XD", "8-)", "^_^", "^^", "(:", "(-:", ":')", ":*", ":-*", "\\o/", "B)"};

const std::vector<std::string> kBuiltinNegative = {
    ":(", ":-(", ":'(", ":'-(", "D:", "D=", ":[", ":-[", "=(", "=[", ":/", ":-/", ":\\", ":-\\", ":S", ":-S",
    ":s", ">:(", ">:-(", ":|", ":-|", ":@", "):", ")-:", ":c", ":-c", "</3", "T_T", ";(", ":o(", ">_<", "-_-"};

}  // namespace

double weight(const MpqaEntry& e) {
  double magnitude = e.strength == Strength::Strong ? 1.0 : 0.5;
  switch (e.polarity) {
    case Polarity::Positive: return magnitude;
    case Polarity::Negative: return -magnitude;
    default: return 0.0;
  }
}

bool pos_matches(PosClass c, text::PosTag tag) {
  switch (c) {
    case PosClass::Any: return true;
    case PosClass::Adjective: return text::is_adjective(tag);
    case PosClass::Noun: return text::is_noun(tag);
    case PosClass::Verb: return text::is_verb(tag);
    case PosClass::Adverb: return text::is_adverb(tag);
  }
  return false;
}

MpqaLexicon::MpqaLexicon(std::vector<MpqaEntry> entries) {
  std::set<std::pair<std::string, PosClass>> seen;
  for (auto& e : entries) {
    e.word = text::ascii_lower(e.word);
    if (!seen.emplace(e.word, e.pos).second) continue;
    std::size_t idx = entries_.size();
    exact_[e.word].push_back(idx);
    if (e.stemmed) by_stem_[text::porter_stem(e.word)].push_back(idx);
    entries_.push_back(std::move(e));
  }
}

MpqaLexicon MpqaLexicon::load(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open MPQA lexicon " + path.string());
  std::vector<MpqaEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  auto skip = [&](const std::string& why) {
    if (warnings) warnings->push_back(path.filename().string() + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::map<std::string, std::string, std::less<>> f;
    if (!parse_fields(line, f)) {
      skip("field without '='");
      continue;
    }
    auto type = f.find("type");
    auto word = f.find("word1");
    auto pol = f.find("priorpolarity");
    if (type == f.end() || word == f.end() || pol == f.end() || word->second.empty()) {
      skip("missing type, word1 or priorpolarity");
      continue;
    }
    MpqaEntry e;
    e.word = word->second;
    if (type->second == "strongsubj") {
      e.strength = Strength::Strong;
    } else if (type->second == "weaksubj") {
      e.strength = Strength::Weak;
    } else {
      skip("unknown type '" + type->second + "'");
      continue;
    }
    auto p = parse_polarity(pol->second);
    if (!p) {
      skip("unknown priorpolarity '" + pol->second + "'");
      continue;
    }
    e.polarity = *p;
    if (auto it = f.find("pos1"); it != f.end()) {
      auto c = parse_pos_class(it->second);
      if (!c) {
        skip("unknown pos1 '" + it->second + "'");
        continue;
      }
      e.pos = *c;
    }
    if (auto it = f.find("stemmed1"); it != f.end()) e.stemmed = it->second == "y";
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw DataError("MPQA lexicon " + path.string() + " has no entries");
  return MpqaLexicon(std::move(entries));
}

const MpqaEntry* MpqaLexicon::pick(const std::vector<std::size_t>& candidates, text::PosTag tag,
                                   bool enforce_pos) const {
  for (auto idx : candidates) {
    if (!enforce_pos || pos_matches(entries_[idx].pos, tag)) return &entries_[idx];
  }
  return nullptr;
}

const MpqaEntry* MpqaLexicon::find(std::string_view lower_word, text::PosTag tag, bool enforce_pos) const {
  std::string w(lower_word);
  if (auto it = exact_.find(w); it != exact_.end()) {
    if (const auto* e = pick(it->second, tag, enforce_pos)) return e;
  }
  if (by_stem_.empty()) return nullptr;
  if (auto it = by_stem_.find(text::porter_stem(w)); it != by_stem_.end()) {
    return pick(it->second, tag, enforce_pos);
  }
  return nullptr;
}

MpqaTally mpqa_tally(std::span<const text::TaggedToken> tokens, const MpqaLexicon& lexicon, bool enforce_pos) {
  MpqaTally t;
  for (const auto& tt : tokens) {
    if (tt.token.kind != text::TokenKind::Word) continue;
    const auto* e = lexicon.find(text::ascii_lower(tt.token.surface), tt.tag, enforce_pos);
    if (!e) continue;
    t.score += weight(*e);
    if (e->polarity == Polarity::Positive) ++t.positive_words;
    if (e->polarity == Polarity::Negative) ++t.negative_words;
  }
  return t;
}

double mpqa_score(std::span<const text::Token> tokens, const MpqaLexicon& lexicon) {
  std::vector<text::TaggedToken> tagged;
  tagged.reserve(tokens.size());
  for (const auto& t : tokens) tagged.push_back({t, text::PosTag::None});
  return mpqa_tally(tagged, lexicon).score;
}

EmoticonLexicon::EmoticonLexicon(std::vector<std::string> positive, std::vector<std::string> negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {
  if (positive_.empty() || negative_.empty()) {
    throw std::invalid_argument("emoticon lexicon needs positive and negative entries");
  }
  pos_set_.insert(positive_.begin(), positive_.end());
  for (const auto& e : negative_) {
    if (pos_set_.contains(e)) throw std::invalid_argument("emoticon '" + e + "' is both positive and negative");
    neg_set_.insert(e);
  }
}

EmoticonLexicon EmoticonLexicon::builtin() { return EmoticonLexicon(kBuiltinPositive, kBuiltinNegative); }

EmoticonLexicon EmoticonLexicon::load(const std::filesystem::path& positive, const std::filesystem::path& negative) {
  auto pos = text::read_lines(positive);
  auto neg = text::read_lines(negative);
  try {
    return EmoticonLexicon(std::move(pos), std::move(neg));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

int EmoticonLexicon::polarity(std::string_view surface) const {
  std::string s(surface);
  if (pos_set_.contains(s)) return 1;
  if (neg_set_.contains(s)) return -1;
  return 0;
}

std::vector<std::string> EmoticonLexicon::all() const {
  std::vector<std::string> out = positive_;
  out.insert(out.end(), negative_.begin(), negative_.end());
  return out;
}

EmoticonTally emoticon_tally(std::span<const text::Token> tokens, const EmoticonLexicon& lexicon) {
  EmoticonTally t;
  for (const auto& tok : tokens) {
    int p = lexicon.polarity(tok.surface);
    if (p > 0) ++t.positive;
    if (p < 0) ++t.negative;
  }
  return t;
}

long emoticon_score(std::span<const text::Token> tokens, const EmoticonLexicon& lexicon) {
  return emoticon_tally(tokens, lexicon).score();
}

}  // namespace moodpipe::lexicons
