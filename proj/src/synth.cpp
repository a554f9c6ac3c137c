#include "moodpipe/synth.hpp"

#include <ostream>
#include <stdexcept>

#include "moodpipe/labeling.hpp"
#include "moodpipe/lexicons.hpp"
#include "moodpipe/rng.hpp"

namespace moodpipe::synth {

using classify::Sentiment;

namespace {

const std::vector<std::string> kObjectiveWords = {
    "report",  "meeting",  "announced", "update",   "schedule", "official", "data",    "market",
    "released", "statement", "council", "forecast", "traffic",  "news",     "plan",    "price",
    "percent", "budget",   "election",  "results",  "conference", "policy", "airport", "session",
    "company", "quarter",  "launch",    "available", "event",   "program",  "details", "according"};

const std::vector<std::string> kPositiveWords = {
    "love",   "great",   "happy",   "awesome", "amazing", "wonderful", "best",   "fun",
    "excited", "beautiful", "enjoy", "glad",    "perfect", "nice",      "brilliant", "fantastic",
    "lovely", "proud",   "smile",   "win",     "cool",    "thankful",  "delighted", "favorite"};

const std::vector<std::string> kNegativeWords = {
    "hate",    "terrible", "awful",   "sad",    "angry",    "worst",  "bad",     "annoying",
    "horrible", "broken",  "disappointed", "boring", "sick", "tired", "ugly",   "upset",
    "miserable", "fail",   "stupid",  "worse",  "crying",   "painful", "disgusting", "ruined"};

const std::vector<std::string> kFiller = {"the",   "this",  "is",    "so",    "really", "just", "with",
                                          "for",   "about", "new",   "people", "time",  "day",  "today",
                                          "again", "now",   "after", "at",    "on",     "and",  "all"};

const std::vector<std::string> kTopics = {"obama",  "iphone", "football", "coffee",
                                          "weather", "netflix", "election", "starbucks"};

const std::vector<std::string>& words_for(Sentiment s) {
  switch (s) {
    case Sentiment::Objective: return kObjectiveWords;
    case Sentiment::Positive: return kPositiveWords;
    case Sentiment::Negative: return kNegativeWords;
  }
  return kObjectiveWords;
}

std::string random_slug(Rng& rng, std::size_t n) {
  static constexpr char kAlnum[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += kAlnum[rng.below(sizeof(kAlnum) - 1)];
  return s;
}

std::string make_text(Sentiment s, Rng& rng, const SynthOptions& o, const lexicons::EmoticonLexicon& emoticons) {
  std::vector<std::string> parts;
  const auto& topic = rng.pick(kTopics);
  parts.push_back(rng.chance(0.3) ? "#" + topic : topic);

  std::size_t content = 3 + static_cast<std::size_t>(rng.below(4));
  for (std::size_t i = 0; i < content; ++i) {
    Sentiment from = s;
    if (rng.chance(o.leak)) from = classify::kAllSentiments[rng.below(3)];
    parts.push_back(rng.pick(words_for(from)));
  }
  std::size_t filler = 2 + static_cast<std::size_t>(rng.below(3));
  for (std::size_t i = 0; i < filler; ++i) parts.push_back(rng.pick(kFiller));
  rng.shuffle(parts);

  bool subjective = s != Sentiment::Objective;
  if (subjective && rng.chance(0.6)) parts.insert(parts.begin(), rng.chance(0.5) ? "I" : "my");
  if (!subjective && rng.chance(0.4)) parts.push_back(std::to_string(1 + rng.below(99)));

  std::string text;
  for (const auto& p : parts) {
    if (!text.empty()) text += ' ';
    text += p;
  }
  if (rng.chance(subjective ? 0.4 : 0.05)) text += "!";

  const auto& pos = emoticons.positive();
  const auto& neg = emoticons.negative();
  if (s == Sentiment::Positive && rng.chance(o.class_emoticon)) text += " " + rng.pick(pos);
  if (s == Sentiment::Negative && rng.chance(o.class_emoticon)) text += " " + rng.pick(neg);
  if (rng.chance(o.stray_emoticon)) text += " " + rng.pick(rng.chance(0.5) ? pos : neg);
  if (rng.chance(subjective ? o.subjective_url : o.objective_url)) text += " http://t.co/" + random_slug(rng, 8);
  return text;
}

labeling::SentimentLabel true_label(Sentiment s) {
  switch (s) {
    case Sentiment::Objective: return labeling::SentimentLabel::Neutral;
    case Sentiment::Positive: return labeling::SentimentLabel::Positive;
    case Sentiment::Negative: return labeling::SentimentLabel::Negative;
  }
  return labeling::SentimentLabel::Neutral;
}

}  // namespace

const std::vector<std::string>& topics() { return kTopics; }

SynthCorpus generate(const SynthOptions& o) {
  if (o.span_days < 1) throw std::invalid_argument("span_days must be positive");
  Rng rng(o.seed);
  auto emoticons = lexicons::EmoticonLexicon::builtin();
  SynthCorpus c;
  const auto span = static_cast<std::uint64_t>(o.span_days) * 86400;
  for (std::size_t i = 0; i < o.per_class; ++i) {
    for (auto s : classify::kAllSentiments) {
      corpus::Tweet t;
      t.id = std::to_string(c.tweets.size() + 1);
      t.text = make_text(s, rng, o, emoticons);
      t.lang = "en";
      t.created_at = o.start + static_cast<corpus::Timestamp>(rng.below(span));
      c.tweets.push_back(std::move(t));
      c.labels.push_back(s);
    }
  }
  return c;
}

void write_label_tsv(std::ostream& out, const SynthCorpus& corpus, const SynthOptions& o) {
  if (o.annotators < 2) throw std::invalid_argument("at least two annotators are required");
  Rng rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  out << "tweet_id";
  for (std::size_t a = 1; a <= o.annotators; ++a) out << "\tlabel_" << a;
  out << '\n';
  for (std::size_t i = 0; i < corpus.tweets.size(); ++i) {
    auto truth = true_label(corpus.labels[i]);
    out << corpus.tweets[i].id;
    for (std::size_t a = 0; a < o.annotators; ++a) {
      auto l = truth;
      if (!rng.chance(o.annotator_accuracy)) {
        do {
          l = labeling::kAllSentimentLabels[rng.below(labeling::kAllSentimentLabels.size())];
        } while (l == truth);
      }
      out << '\t' << (l == labeling::SentimentLabel::Unlabeled ? "" : labeling::to_token(l));
    }
    out << '\n';
  }
}

}  // namespace moodpipe::synth
