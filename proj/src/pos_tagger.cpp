#include "moodpipe/pos_tagger.hpp"

#include <array>
#include <fstream>
#include <utility>

#include "moodpipe/error.hpp"

namespace moodpipe::text {

namespace {

constexpr std::array<std::pair<PosTag, std::string_view>, 37> kTagNames = {{
    {PosTag::None, "-NONE-"}, {PosTag::CC, "CC"},     {PosTag::CD, "CD"},     {PosTag::DT, "DT"},
    {PosTag::EX, "EX"},       {PosTag::FW, "FW"},     {PosTag::IN, "IN"},     {PosTag::JJ, "JJ"},
    {PosTag::JJR, "JJR"},     {PosTag::JJS, "JJS"},   {PosTag::LS, "LS"},     {PosTag::MD, "MD"},
    {PosTag::NN, "NN"},       {PosTag::NNS, "NNS"},   {PosTag::NNP, "NNP"},   {PosTag::NNPS, "NNPS"},
    {PosTag::PDT, "PDT"},     {PosTag::POS, "POS"},   {PosTag::PRP, "PRP"},   {PosTag::PRP_S, "PRP$"},
    {PosTag::RB, "RB"},       {PosTag::RBR, "RBR"},   {PosTag::RBS, "RBS"},   {PosTag::RP, "RP"},
    {PosTag::SYM, "SYM"},     {PosTag::TO, "TO"},     {PosTag::UH, "UH"},     {PosTag::VB, "VB"},
    {PosTag::VBD, "VBD"},     {PosTag::VBG, "VBG"},   {PosTag::VBN, "VBN"},   {PosTag::VBP, "VBP"},
    {PosTag::VBZ, "VBZ"},     {PosTag::WDT, "WDT"},   {PosTag::WP, "WP"},     {PosTag::WP_S, "WP$"},
    {PosTag::WRB, "WRB"},
}};

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

bool sentence_end(const Token& t) {
  if (t.kind != TokenKind::Punct) return false;
  return t.surface.find_first_of(".!?") != std::string::npos;
}

bool all_upper(std::string_view w) {
  bool any = false;
  for (char c : w) {
    if (c >= 'a' && c <= 'z') return false;
    any = any || is_upper(c);
  }
  return any;
}

}  // namespace

std::string_view to_string(PosTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "-NONE-";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name && t != PosTag::None) return t;
  }
  return std::nullopt;
}

bool is_adjective(PosTag t) { return t == PosTag::JJ || t == PosTag::JJR || t == PosTag::JJS; }

bool is_verb(PosTag t) {
  return t == PosTag::VB || t == PosTag::VBD || t == PosTag::VBG || t == PosTag::VBN || t == PosTag::VBP ||
         t == PosTag::VBZ;
}

bool is_noun(PosTag t) {
  return t == PosTag::NN || t == PosTag::NNS || t == PosTag::NNP || t == PosTag::NNPS;
}

bool is_pronoun(PosTag t) {
  return t == PosTag::PRP || t == PosTag::PRP_S || t == PosTag::WP || t == PosTag::WP_S;
}

bool is_adverb(PosTag t) { return t == PosTag::RB || t == PosTag::RBR || t == PosTag::RBS || t == PosTag::WRB; }

PosTagger::PosTagger(std::unordered_map<std::string, PosTag> lexicon) : lexicon_(std::move(lexicon)) {}

PosTagger PosTagger::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tag lexicon " + path.string());
  std::unordered_map<std::string, PosTag> lexicon;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) continue;
    auto tag = parse_pos_tag(std::string_view(line).substr(tab + 1));
    if (!tag) continue;
    lexicon.emplace(line.substr(0, tab), *tag);
  }
  if (lexicon.empty()) throw DataError("tag lexicon " + path.string() + " has no usable entries");
  return PosTagger(std::move(lexicon));
}

std::optional<PosTag> PosTagger::lookup(std::string_view word) const {
  auto it = lexicon_.find(std::string(word));
  if (it == lexicon_.end()) return std::nullopt;
  return it->second;
}

bool PosTagger::adjectival_stem(const std::string& stem) const {
  if (stem.size() < 2) return false;
  auto t = lookup(stem);
  return t && *t == PosTag::JJ;
}

PosTag PosTagger::suffix_rules(const std::string& w) const {
  auto n = w.size();
  if (n > 3 && w.ends_with("ly")) return PosTag::RB;
  if (n > 4 && w.ends_with("ing")) return PosTag::VBG;
  if (n > 3 && w.ends_with("ed")) return PosTag::VBD;
  if (n > 4 && w.ends_with("est")) return PosTag::JJS;
  if (n > 3 && w.ends_with("er")) {
    std::string base = w.substr(0, n - 2);
    bool adjectival = adjectival_stem(base) || adjectival_stem(w.substr(0, n - 1));
    if (!adjectival && base.size() >= 2 && base[base.size() - 1] == base[base.size() - 2]) {
      adjectival = adjectival_stem(base.substr(0, base.size() - 1));  // bigger -> big
    }
    if (!adjectival && base.ends_with('i')) {
      adjectival = adjectival_stem(base.substr(0, base.size() - 1) + "y");  // happier -> happy
    }
    return adjectival ? PosTag::JJR : PosTag::NN;
  }
  if (n > 3 && w.ends_with('s') && !w.ends_with("ss")) {
    std::vector<std::string> stems = {w.substr(0, n - 1)};
    if (w.ends_with("ies")) stems.push_back(w.substr(0, n - 3) + "y");
    if (w.ends_with("es")) stems.push_back(w.substr(0, n - 2));
    for (const auto& s : stems) {
      if (auto t = lookup(s)) {
        if (*t == PosTag::VB || *t == PosTag::VBP) return PosTag::VBZ;
        return PosTag::NNS;
      }
    }
    return PosTag::NNS;
  }
  return PosTag::NN;
}

PosTag PosTagger::tag_word(std::string_view word, bool sentence_initial) const {
  if (auto t = lookup(word)) return *t;
  bool capitalised = !word.empty() && is_upper(word.front());
  if (capitalised && !sentence_initial && !all_upper(word)) return PosTag::NNP;
  std::string lower = ascii_lower(word);
  if (auto t = lookup(lower)) return *t;
  return suffix_rules(lower);
}

std::vector<TaggedToken> PosTagger::tag(std::span<const Token> tokens) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  bool sentence_initial = true;
  for (const auto& t : tokens) {
    PosTag tag = PosTag::None;
    if (t.kind == TokenKind::Word) {
      tag = tag_word(t.surface, sentence_initial);
      sentence_initial = false;
    } else if (t.kind == TokenKind::Number) {
      tag = PosTag::CD;
      sentence_initial = false;
    } else if (sentence_end(t)) {
      sentence_initial = true;
    }
    out.push_back({t, tag});
  }
  return out;
}

}  // namespace moodpipe::text
