#include "moodpipe/features.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace moodpipe::features {

namespace {

using text::PosTag;
using text::TokenKind;

constexpr FeatureSpec kObjectivity[] = {
    {"exclamation_count", FeatureKind::Count, "exclamation marks"},
    {"question_count", FeatureKind::Count, "question marks"},
    {"has_exclamation", FeatureKind::Presence, "any exclamation mark"},
    {"has_question", FeatureKind::Presence, "any question mark"},
    {"has_url", FeatureKind::Presence, "any URL"},
    {"has_emoticon", FeatureKind::Presence, "any emoticon"},
    {"unigram_posterior", FeatureKind::Posterior, "P(objective | words)"},
    {"mpqa_score", FeatureKind::Continuous, "MPQA prior polarity score"},
    {"digit_count", FeatureKind::Count, "digits outside URLs and mentions"},
    {"capitalized_words", FeatureKind::Count, "words of two or more letters starting uppercase"},
    {"capitalized_chars", FeatureKind::Count, "uppercase letters outside URLs, mentions and emoticons"},
    {"punct_symbol_count", FeatureKind::Count, "punctuation and symbol characters"},
    {"non_dictionary_ratio", FeatureKind::Continuous, "share of words missing from the English list"},
    {"length", FeatureKind::Count, "characters"},
    {"adjectives", FeatureKind::Count, "JJ"},
    {"comparative_adjectives", FeatureKind::Count, "JJR"},
    {"superlative_adjectives", FeatureKind::Count, "JJS"},
    {"base_verbs", FeatureKind::Count, "VB"},
    {"past_verbs", FeatureKind::Count, "VBD"},
    {"present_participles", FeatureKind::Count, "VBG"},
    {"past_participles", FeatureKind::Count, "VBN"},
    {"third_person_verbs", FeatureKind::Count, "VBZ"},
    {"non_third_person_verbs", FeatureKind::Count, "VBP"},
    {"adverbs", FeatureKind::Count, "RB"},
    {"personal_pronouns", FeatureKind::Count, "PRP"},
    {"possessive_pronouns", FeatureKind::Count, "PRP$"},
    {"proper_nouns", FeatureKind::Count, "NNP"},
    {"plural_proper_nouns", FeatureKind::Count, "NNPS"},
    {"cardinal_numbers", FeatureKind::Count, "CD"},
    {"possessive_endings", FeatureKind::Count, "POS"},
    {"wh_pronouns", FeatureKind::Count, "WP"},
    {"all_adjectives", FeatureKind::Count, "JJ, JJR, JJS"},
    {"all_verbs", FeatureKind::Count, "VB, VBD, VBG, VBN, VBP, VBZ"},
    {"all_nouns", FeatureKind::Count, "NN, NNS, NNP, NNPS"},
    {"all_pronouns", FeatureKind::Count, "PRP, PRP$, WP, WP$"},
};

constexpr FeatureSpec kPolarity[] = {
    {"emoticon_score", FeatureKind::Continuous, "positive minus negative emoticons"},
    {"mpqa_score", FeatureKind::Continuous, "MPQA prior polarity score"},
    {"unigram_posterior", FeatureKind::Posterior, "P(positive | words)"},
    {"emoticon_count", FeatureKind::Count, "emoticons"},
    {"positive_emoticons", FeatureKind::Count, "positive emoticons"},
    {"negative_emoticons", FeatureKind::Count, "negative emoticons"},
    {"mpqa_positive_words", FeatureKind::Count, "MPQA positive words"},
    {"mpqa_negative_words", FeatureKind::Count, "MPQA negative words"},
    {"base_verbs", FeatureKind::Count, "VB"},
    {"past_verbs", FeatureKind::Count, "VBD"},
    {"present_participles", FeatureKind::Count, "VBG"},
    {"past_participles", FeatureKind::Count, "VBN"},
    {"third_person_verbs", FeatureKind::Count, "VBZ"},
    {"non_third_person_verbs", FeatureKind::Count, "VBP"},
    {"plural_nouns", FeatureKind::Count, "NNS"},
    {"proper_nouns", FeatureKind::Count, "NNP"},
    {"cardinal_numbers", FeatureKind::Count, "CD"},
    {"prepositions_conjunctions", FeatureKind::Count, "IN, CC"},
    {"adverbs", FeatureKind::Count, "RB"},
    {"wh_adverbs", FeatureKind::Count, "WRB"},
    {"all_verbs", FeatureKind::Count, "VB, VBD, VBG, VBN, VBP, VBZ"},
};

bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

struct TagCounts {
  std::array<double, 64> by_tag{};
  double operator[](PosTag t) const { return by_tag[static_cast<std::size_t>(t)]; }
  double sum(std::initializer_list<PosTag> tags) const {
    double s = 0;
    for (auto t : tags) s += (*this)[t];
    return s;
  }
};

TagCounts count_tags(std::span<const text::TaggedToken> tagged) {
  TagCounts c;
  for (const auto& t : tagged) {
    if (t.tag != PosTag::None) c.by_tag[static_cast<std::size_t>(t.tag)] += 1;
  }
  return c;
}

double posterior_or_half(const AnalyzedTweet& tweet, const UnigramModel* model) {
  return model ? model->posterior(tweet.terms) : 0.5;
}

void set(FeatureVector& v, std::string_view name, double value) {
  auto idx = feature_index(v.catalog, name);
  v.values[*idx] = value;
}

double entropy_of_counts(const std::vector<std::size_t>& counts, std::size_t n) {
  if (n == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h;
}

std::size_t label_span(std::span<const int> labels) {
  int max_label = 0;
  for (int l : labels) {
    if (l < 0) throw std::invalid_argument("class labels must be non-negative");
    max_label = std::max(max_label, l);
  }
  return static_cast<std::size_t>(max_label) + 1;
}

void check_lengths(std::span<const double> values, std::span<const int> labels) {
  if (values.size() != labels.size()) throw std::invalid_argument("values and labels differ in length");
  if (values.size() < 2) throw std::invalid_argument("information gain needs at least two samples");
}

}  // namespace

// ---------------------------------------------------------------------------
// UnigramModel

UnigramModel UnigramModel::train(std::string name_a, std::string name_b,
                                 std::span<const std::vector<std::string>> docs_a,
                                 std::span<const std::vector<std::string>> docs_b, const UnigramOptions& options) {
  if (docs_a.empty() && docs_b.empty()) throw std::invalid_argument("unigram model needs training documents");
  std::unordered_map<std::string, Counts> raw;
  for (const auto& doc : docs_a) {
    for (const auto& w : doc) ++raw[w][A];
  }
  for (const auto& doc : docs_b) {
    for (const auto& w : doc) ++raw[w][B];
  }
  return from_counts(std::move(name_a), std::move(name_b), raw, options, {docs_a.size(), docs_b.size()});
}

UnigramModel UnigramModel::from_counts(std::string name_a, std::string name_b,
                                       const std::unordered_map<std::string, Counts>& counts,
                                       const UnigramOptions& options, Counts docs) {
  if (options.min_count < 1) throw std::invalid_argument("min_count must be at least 1");
  if (!(options.smoothing_x >= 0.0) || !std::isfinite(options.smoothing_x)) {
    throw std::invalid_argument("smoothing_x must be a finite non-negative number");
  }
  UnigramModel m;
  m.names_ = {std::move(name_a), std::move(name_b)};
  m.options_ = options;
  m.docs_ = docs;
  for (const auto& [w, c] : counts) {
    if (c[A] + c[B] >= static_cast<std::uint64_t>(options.min_count)) m.counts_.emplace(w, c);
  }
  m.finalize();
  return m;
}

void UnigramModel::finalize() {
  totals_ = {0, 0};
  nonzero_ = {0, 0};
  for (const auto& [w, c] : counts_) {
    for (int s : {A, B}) {
      totals_[s] += c[s];
      nonzero_[s] += c[s] > 0 ? 1 : 0;
    }
  }
}

bool UnigramModel::in_vocab(std::string_view word) const { return counts_.contains(std::string(word)); }

std::uint64_t UnigramModel::count(std::string_view word, Side side) const {
  auto it = counts_.find(std::string(word));
  return it == counts_.end() ? 0 : it->second[side];
}

std::size_t UnigramModel::smoothing_vocab(Side side) const {
  return options_.per_class_vocab ? nonzero_[side] : counts_.size();
}

double UnigramModel::word_prob(std::string_view word, Side side) const {
  auto it = counts_.find(std::string(word));
  if (it == counts_.end()) throw std::out_of_range("'" + std::string(word) + "' is not in the unigram vocabulary");
  double x = options_.smoothing_x;
  double num = static_cast<double>(it->second[side]) + x;
  double den = static_cast<double>(totals_[side]) + x * static_cast<double>(smoothing_vocab(side));
  return num / den;
}

double UnigramModel::log_likelihood(std::span<const std::string> tokens, Side side) const {
  double x = options_.smoothing_x;
  double den = std::log(static_cast<double>(totals_[side]) + x * static_cast<double>(smoothing_vocab(side)));
  double sum = 0.0;
  for (const auto& w : tokens) {
    auto it = counts_.find(w);
    if (it == counts_.end()) continue;
    sum += std::log(static_cast<double>(it->second[side]) + x) - den;
  }
  return sum;
}

double UnigramModel::log_odds(std::span<const std::string> tokens) const {
  double z = log_likelihood(tokens, A) - log_likelihood(tokens, B);
  if (options_.empirical_priors && docs_[A] > 0 && docs_[B] > 0) {
    z += std::log(static_cast<double>(docs_[A])) - std::log(static_cast<double>(docs_[B]));
  }
  return z;
}

double UnigramModel::logistic(double z) {
  // Evaluate on the side where the result is >= 0.5 so that 1 - p is exact.
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  return 1.0 - 1.0 / (1.0 + std::exp(z));
}

double UnigramModel::posterior(std::span<const std::string> tokens) const {
  bool any = std::any_of(tokens.begin(), tokens.end(), [this](const std::string& w) { return counts_.contains(w); });
  if (!any && !(options_.empirical_priors && docs_[A] != docs_[B])) return 0.5;
  return logistic(log_odds(tokens));
}

UnigramModel UnigramModel::swapped() const {
  UnigramModel m = *this;
  std::swap(m.names_[A], m.names_[B]);
  std::swap(m.docs_[A], m.docs_[B]);
  for (auto& [w, c] : m.counts_) std::swap(c[A], c[B]);
  m.finalize();
  return m;
}

std::vector<std::string> UnigramModel::vocab() const {
  std::vector<std::string> v;
  v.reserve(counts_.size());
  for (const auto& [w, c] : counts_) v.push_back(w);
  std::sort(v.begin(), v.end());
  return v;
}

nlohmann::json UnigramModel::to_json() const {
  nlohmann::json count_a = nlohmann::json::object();
  nlohmann::json count_b = nlohmann::json::object();
  for (const auto& w : vocab()) {
    const auto& c = counts_.at(w);
    count_a[w] = c[A];
    count_b[w] = c[B];
  }
  return {{"class_a", names_[A]},
          {"class_b", names_[B]},
          {"count_a", std::move(count_a)},
          {"count_b", std::move(count_b)},
          {"total_a", totals_[A]},
          {"total_b", totals_[B]},
          {"docs_a", docs_[A]},
          {"docs_b", docs_[B]},
          {"vocab", vocab()},
          {"smoothing_x", options_.smoothing_x},
          {"min_count", options_.min_count},
          {"per_class_vocab", options_.per_class_vocab},
          {"empirical_priors", options_.empirical_priors}};
}

UnigramModel UnigramModel::from_json(const nlohmann::json& j) {
  UnigramModel m;
  m.names_ = {j.at("class_a").get<std::string>(), j.at("class_b").get<std::string>()};
  m.options_.smoothing_x = j.at("smoothing_x").get<double>();
  m.options_.min_count = j.at("min_count").get<int>();
  m.options_.per_class_vocab = j.value("per_class_vocab", false);
  m.options_.empirical_priors = j.value("empirical_priors", false);
  m.docs_ = {j.value("docs_a", std::uint64_t{1}), j.value("docs_b", std::uint64_t{1})};
  const auto& ca = j.at("count_a");
  const auto& cb = j.at("count_b");
  for (const auto& w : j.at("vocab")) {
    auto word = w.get<std::string>();
    m.counts_[word] = {ca.value(word, std::uint64_t{0}), cb.value(word, std::uint64_t{0})};
  }
  m.finalize();
  if (m.totals_[A] != j.at("total_a").get<std::uint64_t>() || m.totals_[B] != j.at("total_b").get<std::uint64_t>()) {
    throw std::invalid_argument("unigram model totals do not match its counts");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Catalogs and extraction

std::string_view to_string(Catalog c) { return c == Catalog::Objectivity ? "objectivity" : "polarity"; }

std::span<const FeatureSpec> catalog(Catalog c) {
  if (c == Catalog::Objectivity) return kObjectivity;
  return kPolarity;
}

std::optional<std::size_t> feature_index(Catalog c, std::string_view name) {
  auto specs = catalog(c);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].name == name) return i;
  }
  return std::nullopt;
}

double FeatureVector::at(std::string_view name) const {
  auto idx = feature_index(catalog, name);
  if (!idx) throw std::invalid_argument("no feature '" + std::string(name) + "' in the " +
                                        std::string(to_string(catalog)) + " catalog");
  return values.at(*idx);
}

nlohmann::json FeatureVector::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  auto specs = features::catalog(catalog);
  for (std::size_t i = 0; i < specs.size() && i < values.size(); ++i) j[std::string(specs[i].name)] = values[i];
  return j;
}

std::vector<std::string> unigram_terms(std::span<const text::Token> tokens, const text::StopList& stopwords,
                                       const TermOptions& options) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    std::string w;
    if (t.kind == TokenKind::Word) {
      w = text::ascii_lower(t.surface);
    } else if (t.kind == TokenKind::Hashtag && options.include_hashtags) {
      w = text::ascii_lower(std::string_view(t.surface).substr(1));
    } else {
      continue;
    }
    if (options.drop_stopwords && stopwords.contains(w)) continue;
    out.push_back(std::move(w));
  }
  return out;
}

AnalyzedTweet analyze(std::string_view text, const Resources& resources, const TermOptions& options) {
  AnalyzedTweet a;
  a.text = std::string(text);
  auto tokens = resources.tokenizer.tokenize(text);
  a.tagged = resources.tagger.tag(tokens);
  a.terms = unigram_terms(tokens, resources.stopwords, options);
  a.objectivity = extract_objsubj(a, resources);
  a.polarity = extract_polarity(a, resources);
  return a;
}

FeatureVector extract_objsubj(const AnalyzedTweet& tweet, const Resources& resources, const UnigramModel* model) {
  FeatureVector v{Catalog::Objectivity, std::vector<double>(std::size(kObjectivity), 0.0)};
  double exclamations = 0, questions = 0, punct_chars = 0, digits = 0, cap_words = 0, cap_chars = 0;
  double words = 0, unknown_words = 0;
  bool url = false, emoticon = false;
  for (const auto& tt : tweet.tagged) {
    const auto& tok = tt.token;
    switch (tok.kind) {
      case TokenKind::Url: url = true; continue;
      case TokenKind::Mention: continue;
      case TokenKind::Emoticon: emoticon = true; continue;
      case TokenKind::Punct:
        exclamations += static_cast<double>(std::count(tok.surface.begin(), tok.surface.end(), '!'));
        questions += static_cast<double>(std::count(tok.surface.begin(), tok.surface.end(), '?'));
        punct_chars += static_cast<double>(text::utf8_length(tok.surface));
        break;
      case TokenKind::Word:
        if (!text::is_clitic(tok.surface)) {
          if (is_upper(static_cast<unsigned char>(tok.surface.front())) && text::utf8_length(tok.surface) >= 2) {
            cap_words += 1;
          }
          std::string w = text::ascii_lower(tok.surface);
          std::erase(w, '\'');
          words += 1;
          if (!resources.english->contains(w)) unknown_words += 1;
        }
        break;
      default:
        break;
    }
    for (char ch : tok.surface) {
      auto c = static_cast<unsigned char>(ch);
      digits += is_digit(c) ? 1 : 0;
      cap_chars += is_upper(c) ? 1 : 0;
    }
  }
  auto tags = count_tags(tweet.tagged);
  auto mpqa = lexicons::mpqa_tally(tweet.tagged, resources.mpqa, resources.enforce_mpqa_pos);

  set(v, "exclamation_count", exclamations);
  set(v, "question_count", questions);
  set(v, "has_exclamation", exclamations > 0 ? 1 : 0);
  set(v, "has_question", questions > 0 ? 1 : 0);
  set(v, "has_url", url ? 1 : 0);
  set(v, "has_emoticon", emoticon ? 1 : 0);
  set(v, "unigram_posterior", posterior_or_half(tweet, model));
  set(v, "mpqa_score", mpqa.score);
  set(v, "digit_count", digits);
  set(v, "capitalized_words", cap_words);
  set(v, "capitalized_chars", cap_chars);
  set(v, "punct_symbol_count", punct_chars);
  set(v, "non_dictionary_ratio", words > 0 ? unknown_words / words : 0.0);
  set(v, "length", static_cast<double>(text::utf8_length(tweet.text)));
  set(v, "adjectives", tags[PosTag::JJ]);
  set(v, "comparative_adjectives", tags[PosTag::JJR]);
  set(v, "superlative_adjectives", tags[PosTag::JJS]);
  set(v, "base_verbs", tags[PosTag::VB]);
  set(v, "past_verbs", tags[PosTag::VBD]);
  set(v, "present_participles", tags[PosTag::VBG]);
  set(v, "past_participles", tags[PosTag::VBN]);
  set(v, "third_person_verbs", tags[PosTag::VBZ]);
  set(v, "non_third_person_verbs", tags[PosTag::VBP]);
  set(v, "adverbs", tags[PosTag::RB]);
  set(v, "personal_pronouns", tags[PosTag::PRP]);
  set(v, "possessive_pronouns", tags[PosTag::PRP_S]);
  set(v, "proper_nouns", tags[PosTag::NNP]);
  set(v, "plural_proper_nouns", tags[PosTag::NNPS]);
  set(v, "cardinal_numbers", tags[PosTag::CD]);
  set(v, "possessive_endings", tags[PosTag::POS]);
  set(v, "wh_pronouns", tags[PosTag::WP]);
  set(v, "all_adjectives", tags.sum({PosTag::JJ, PosTag::JJR, PosTag::JJS}));
  set(v, "all_verbs", tags.sum({PosTag::VB, PosTag::VBD, PosTag::VBG, PosTag::VBN, PosTag::VBP, PosTag::VBZ}));
  set(v, "all_nouns", tags.sum({PosTag::NN, PosTag::NNS, PosTag::NNP, PosTag::NNPS}));
  set(v, "all_pronouns", tags.sum({PosTag::PRP, PosTag::PRP_S, PosTag::WP, PosTag::WP_S}));
  return v;
}

FeatureVector extract_polarity(const AnalyzedTweet& tweet, const Resources& resources, const UnigramModel* model) {
  FeatureVector v{Catalog::Polarity, std::vector<double>(std::size(kPolarity), 0.0)};
  std::vector<text::Token> emoticons;
  for (const auto& tt : tweet.tagged) {
    if (tt.token.kind == TokenKind::Emoticon) emoticons.push_back(tt.token);
  }
  auto emo = lexicons::emoticon_tally(emoticons, resources.emoticons);
  auto mpqa = lexicons::mpqa_tally(tweet.tagged, resources.mpqa, resources.enforce_mpqa_pos);
  auto tags = count_tags(tweet.tagged);

  set(v, "emoticon_score", static_cast<double>(emo.score()));
  set(v, "mpqa_score", mpqa.score);
  set(v, "unigram_posterior", posterior_or_half(tweet, model));
  set(v, "emoticon_count", static_cast<double>(emo.total()));
  set(v, "positive_emoticons", static_cast<double>(emo.positive));
  set(v, "negative_emoticons", static_cast<double>(emo.negative));
  set(v, "mpqa_positive_words", static_cast<double>(mpqa.positive_words));
  set(v, "mpqa_negative_words", static_cast<double>(mpqa.negative_words));
  set(v, "base_verbs", tags[PosTag::VB]);
  set(v, "past_verbs", tags[PosTag::VBD]);
  set(v, "present_participles", tags[PosTag::VBG]);
  set(v, "past_participles", tags[PosTag::VBN]);
  set(v, "third_person_verbs", tags[PosTag::VBZ]);
  set(v, "non_third_person_verbs", tags[PosTag::VBP]);
  set(v, "plural_nouns", tags[PosTag::NNS]);
  set(v, "proper_nouns", tags[PosTag::NNP]);
  set(v, "cardinal_numbers", tags[PosTag::CD]);
  set(v, "prepositions_conjunctions", tags.sum({PosTag::IN, PosTag::CC}));
  set(v, "adverbs", tags[PosTag::RB]);
  set(v, "wh_adverbs", tags[PosTag::WRB]);
  set(v, "all_verbs", tags.sum({PosTag::VB, PosTag::VBD, PosTag::VBG, PosTag::VBN, PosTag::VBP, PosTag::VBZ}));
  return v;
}

FeatureVector with_posterior(FeatureVector v, double posterior) {
  set(v, kPosteriorFeature, posterior);
  return v;
}

// ---------------------------------------------------------------------------
// Information gain

double entropy_bits(std::span<const int> labels) {
  std::vector<std::size_t> counts(label_span(labels), 0);
  for (int l : labels) ++counts[static_cast<std::size_t>(l)];
  return entropy_of_counts(counts, labels.size());
}

std::optional<Cut> best_binary_cut(std::span<const double> values, std::span<const int> labels) {
  check_lengths(values, labels);
  const std::size_t n = values.size();
  const std::size_t classes = label_span(labels);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<std::size_t> right(classes, 0);
  for (int l : labels) ++right[static_cast<std::size_t>(l)];
  std::vector<std::size_t> left(classes, 0);
  const double h = entropy_of_counts(right, n);

  std::optional<Cut> best;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto idx = order[i];
    ++left[static_cast<std::size_t>(labels[idx])];
    --right[static_cast<std::size_t>(labels[idx])];
    double v = values[idx];
    double next = values[order[i + 1]];
    if (v == next) continue;
    double nl = static_cast<double>(i + 1);
    double nr = static_cast<double>(n - i - 1);
    double cond = (nl * entropy_of_counts(left, i + 1) + nr * entropy_of_counts(right, n - i - 1)) /
                  static_cast<double>(n);
    double gain = std::max(0.0, h - cond);
    if (!best || gain > best->gain) best = Cut{v + (next - v) / 2, gain};
  }
  return best;
}

double information_gain(std::span<const double> values, std::span<const int> labels, Binning binning) {
  check_lengths(values, labels);
  if (binning == Binning::BinaryCut) {
    auto cut = best_binary_cut(values, labels);
    return cut ? cut->gain : 0.0;
  }
  const std::size_t classes = label_span(labels);
  std::map<double, std::vector<std::size_t>> bins;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto& b = bins[values[i]];
    if (b.empty()) b.assign(classes, 0);
    ++b[static_cast<std::size_t>(labels[i])];
  }
  const double n = static_cast<double>(values.size());
  double cond = 0.0;
  for (const auto& [v, counts] : bins) {
    std::size_t m = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    cond += static_cast<double>(m) / n * entropy_of_counts(counts, m);
  }
  return std::max(0.0, entropy_bits(labels) - cond);
}

std::vector<double> feature_gains(std::span<const FeatureVector> rows, std::span<const int> labels, Binning binning) {
  if (rows.empty()) throw std::invalid_argument("feature_gains needs at least one row");
  const std::size_t d = rows.front().values.size();
  std::vector<double> gains(d, 0.0);
  std::vector<double> column(rows.size());
  for (std::size_t f = 0; f < d; ++f) {
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = rows[i].values[f];
    gains[f] = information_gain(column, labels, binning);
  }
  return gains;
}

std::vector<double> FeatureGainReport::mean() const {
  const std::size_t d = catalog_size();
  std::vector<double> m(d, 0.0);
  if (per_fold.empty()) return m;
  for (const auto& fold : per_fold) {
    for (std::size_t f = 0; f < d; ++f) m[f] += fold.at(f);
  }
  for (auto& x : m) x /= static_cast<double>(per_fold.size());
  return m;
}

std::size_t FeatureGainReport::catalog_size() const { return features::catalog(catalog).size(); }

nlohmann::json FeatureGainReport::to_json() const {
  auto specs = features::catalog(catalog);
  auto avg = mean();
  nlohmann::json feats = nlohmann::json::array();
  for (std::size_t f = 0; f < specs.size(); ++f) {
    nlohmann::json folds = nlohmann::json::array();
    for (const auto& fold : per_fold) folds.push_back(fold.at(f));
    feats.push_back({{"feature", specs[f].name}, {"mean_gain", avg[f]}, {"per_fold", std::move(folds)}});
  }
  return {{"catalog", to_string(catalog)}, {"folds", per_fold.size()}, {"features", std::move(feats)}};
}

nlohmann::json Selection::to_json() const {
  nlohmann::json red = nlohmann::json::array();
  for (const auto& r : redundant) {
    red.push_back({{"feature", r.feature}, {"explained_by", r.explained_by}, {"r_squared", r.r_squared}});
  }
  return {{"ranking", ranking}, {"selected", selected}, {"redundant", std::move(red)}};
}

namespace {

// R^2 of an ordinary least squares fit of `y` on the columns of `x` plus an
// intercept. A constant target counts as fully explained.
double r_squared(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const auto n = y.size();
  double mean = y.mean();
  double ss_tot = (y.array() - mean).square().sum();
  if (ss_tot <= 0.0) return 1.0;
  Eigen::MatrixXd design(n, x.cols() + 1);
  design.col(0).setOnes();
  design.rightCols(x.cols()) = x;
  Eigen::VectorXd beta = design.colPivHouseholderQr().solve(y);
  double ss_res = (y - design * beta).squaredNorm();
  return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

}  // namespace

Selection select_top_k(const FeatureGainReport& report, std::size_t k, std::span<const FeatureVector> rows,
                       double r2_threshold) {
  auto specs = catalog(report.catalog);
  if (k == 0 || k > specs.size()) {
    throw std::invalid_argument("k must be between 1 and " + std::to_string(specs.size()));
  }
  auto avg = report.mean();
  std::vector<std::size_t> order(specs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return avg[a] > avg[b]; });

  Selection s;
  for (auto i : order) s.ranking.emplace_back(specs[i].name);

  std::vector<std::size_t> kept;
  for (std::size_t r = 0; r < k; ++r) {
    auto f = order[r];
    if (!rows.empty() && !kept.empty()) {
      Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(kept.size()));
      Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        y(static_cast<Eigen::Index>(i)) = rows[i].values.at(f);
        for (std::size_t c = 0; c < kept.size(); ++c) {
          x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i].values.at(kept[c]);
        }
      }
      double r2 = r_squared(x, y);
      if (r2 >= r2_threshold) {
        Redundancy red{std::string(specs[f].name), {}, r2};
        for (auto c : kept) red.explained_by.emplace_back(specs[c].name);
        s.redundant.push_back(std::move(red));
        continue;
      }
    }
    kept.push_back(f);
    s.selected.emplace_back(specs[f].name);
  }
  return s;
}

std::vector<std::string> default_selection(Catalog c) {
  if (c == Catalog::Objectivity) {
    return {"unigram_posterior", "has_url", "has_emoticon", "personal_pronouns", "exclamation_count"};
  }
  return {"unigram_posterior", "positive_emoticons", "negative_emoticons"};
}

}  // namespace moodpipe::features
