#include "moodpipe/classify.hpp"

#include "moodpipe/text.hpp"

namespace moodpipe::classify {

namespace {

double ratio(std::uint64_t num, std::uint64_t den, bool& degenerate) {
  if (den == 0) {
    degenerate = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view to_string(Sentiment s) {
  switch (s) {
    case Sentiment::Objective: return "objective";
    case Sentiment::Positive: return "positive";
    case Sentiment::Negative: return "negative";
  }
  return "objective";
}

std::optional<Sentiment> parse_sentiment(std::string_view s) {
  std::string l = text::ascii_lower(s);
  if (l == "objective" || l == "neutral" || l == "neu" || l == "obj") return Sentiment::Objective;
  if (l == "positive" || l == "pos") return Sentiment::Positive;
  if (l == "negative" || l == "neg") return Sentiment::Negative;
  return std::nullopt;
}

std::optional<Sentiment> from_merged(labeling::MergedLabel m) {
  switch (m) {
    case labeling::MergedLabel::Positive: return Sentiment::Positive;
    case labeling::MergedLabel::Negative: return Sentiment::Negative;
    case labeling::MergedLabel::Neutral: return Sentiment::Objective;
    default: return std::nullopt;
  }
}

Metrics compute_metrics(const ConfusionMatrix& m) {
  Metrics r;
  r.precision = ratio(m.tp, m.tp + m.fp, r.precision_degenerate);
  r.recall = ratio(m.tp, m.tp + m.fn, r.recall_degenerate);
  r.true_rate = r.recall;
  r.accuracy = ratio(m.tp + m.tn, m.tp + m.tn + m.fp + m.fn, r.accuracy_degenerate);
  // 2PR/(P+R) reduces to 2tp/(2tp+fp+fn) whenever P+R > 0, i.e. tp > 0.
  if (m.tp == 0) {
    r.f1 = 0.0;
    r.f1_degenerate = true;
  } else {
    r.f1 = ratio(2 * m.tp, 2 * m.tp + m.fp + m.fn, r.f1_degenerate);
  }
  r.false_alarm_rate = ratio(m.fp, m.tp + m.fn, r.false_alarm_degenerate);
  r.false_positive_rate = ratio(m.fp, m.fp + m.tn, r.false_positive_degenerate);
  return r;
}

nlohmann::json to_json(const Metrics& m) {
  nlohmann::json degenerate = nlohmann::json::array();
  auto flag = [&](bool f, const char* name) {
    if (f) degenerate.push_back(name);
  };
  flag(m.precision_degenerate, "precision");
  flag(m.recall_degenerate, "recall");
  flag(m.accuracy_degenerate, "accuracy");
  flag(m.f1_degenerate, "f1");
  flag(m.false_alarm_degenerate, "false_alarm_rate");
  flag(m.false_positive_degenerate, "false_positive_rate");
  return {{"precision", m.precision},
          {"recall", m.recall},
          {"accuracy", m.accuracy},
          {"f1", m.f1},
          {"true_rate", m.true_rate},
          {"false_alarm_rate", m.false_alarm_rate},
          {"false_positive_rate", m.false_positive_rate},
          {"degenerate", std::move(degenerate)}};
}

}  // namespace moodpipe::classify
