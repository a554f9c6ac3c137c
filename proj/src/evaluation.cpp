#include "moodpipe/evaluation.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "moodpipe/rng.hpp"

namespace moodpipe::classify {

namespace {

// Confusion counts of one fold over `n` classes, [actual][predicted].
using Table = std::vector<std::vector<std::uint64_t>>;

Table empty_table(std::size_t n) { return Table(n, std::vector<std::uint64_t>(n, 0)); }

struct FoldResult {
  Table final_ = empty_table(3);
  Table objectivity = empty_table(2);
  Table polarity = empty_table(2);
  std::vector<double> obj_gains;
  std::vector<double> pol_gains;
};

ConfusionMatrix one_vs_rest(const Table& t, std::size_t c) {
  ConfusionMatrix m;
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t p = 0; p < t.size(); ++p) {
      auto v = t[a][p];
      if (a == c && p == c) m.tp += v;
      else if (a == c) m.fn += v;
      else if (p == c) m.fp += v;
      else m.tn += v;
    }
  }
  return m;
}

SectionReport summarize(const std::vector<const Table*>& tables, const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  SectionReport r;
  r.confusion = empty_table(n);
  r.rows.resize(n);
  for (std::size_t c = 0; c < n; ++c) r.rows[c].name = names[c];
  for (const auto* t : tables) {
    std::uint64_t total = 0, correct = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t p = 0; p < n; ++p) {
        r.confusion[a][p] += (*t)[a][p];
        total += (*t)[a][p];
        if (a == p) correct += (*t)[a][p];
      }
    }
    r.evaluated += total;
    r.accuracy += total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      auto m = compute_metrics(one_vs_rest(*t, c));
      auto& row = r.rows[c];
      row.tp_rate += m.true_rate;
      row.fp_rate += m.false_positive_rate;
      row.false_alarm += m.false_alarm_rate;
      row.recall += m.recall;
      row.precision += m.precision;
      row.f_measure += m.f1;
    }
  }
  const double folds = static_cast<double>(std::max<std::size_t>(tables.size(), 1));
  r.accuracy /= folds;
  r.average.name = "average";
  for (auto& row : r.rows) {
    for (double* v : {&row.tp_rate, &row.fp_rate, &row.false_alarm, &row.recall, &row.precision, &row.f_measure}) {
      *v /= folds;
    }
    r.average.tp_rate += row.tp_rate / static_cast<double>(n);
    r.average.fp_rate += row.fp_rate / static_cast<double>(n);
    r.average.false_alarm += row.false_alarm / static_cast<double>(n);
    r.average.recall += row.recall / static_cast<double>(n);
    r.average.precision += row.precision / static_cast<double>(n);
    r.average.f_measure += row.f_measure / static_cast<double>(n);
  }
  return r;
}

nlohmann::json row_json(const ClassRow& r) {
  return {{"class", r.name},           {"true_positive_rate", r.tp_rate}, {"false_positive_rate", r.fp_rate},
          {"false_alarm_rate", r.false_alarm}, {"recall", r.recall},      {"precision", r.precision},
          {"f_measure", r.f_measure}};
}

FoldResult run_fold(std::span<const features::AnalyzedTweet> tweets, std::span<const Sentiment> labels,
                    const std::vector<std::size_t>& held_out, const PipelineSpec& spec, bool gains) {
  std::vector<std::uint8_t> is_held(tweets.size(), 0);
  for (auto i : held_out) is_held[i] = 1;
  std::vector<const features::AnalyzedTweet*> train_tweets;
  std::vector<Sentiment> train_labels;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    if (is_held[i]) continue;
    train_tweets.push_back(&tweets[i]);
    train_labels.push_back(labels[i]);
  }
  auto pipeline = Pipeline::train(train_tweets, train_labels, spec);

  FoldResult r;
  std::vector<features::FeatureVector> obj_rows, pol_rows;
  std::vector<int> obj_labels, pol_labels;
  for (auto i : held_out) {
    const auto& tweet = tweets[i];
    auto actual = labels[i];
    auto point = pipeline.point(tweet);
    auto predicted = pipeline.stage2().predict(point);
    ++r.final_[static_cast<std::size_t>(actual)][static_cast<std::size_t>(predicted)];

    // Two-class tables use index 0 for objective / positive.
    std::size_t obj_actual = actual == Sentiment::Objective ? 0 : 1;
    ++r.objectivity[obj_actual][point.p_obj >= 0.5 ? 0 : 1];
    if (actual != Sentiment::Objective) {
      std::size_t pol_actual = actual == Sentiment::Positive ? 0 : 1;
      ++r.polarity[pol_actual][point.p_pos >= 0.5 ? 0 : 1];
    }

    if (gains) {
      const auto& s1 = pipeline.stage1();
      obj_rows.push_back(features::with_posterior(tweet.objectivity, s1.objectivity_unigram().posterior(tweet.terms)));
      obj_labels.push_back(static_cast<int>(obj_actual));
      if (actual != Sentiment::Objective) {
        pol_rows.push_back(features::with_posterior(tweet.polarity, s1.polarity_unigram().posterior(tweet.terms)));
        pol_labels.push_back(actual == Sentiment::Positive ? 0 : 1);
      }
    }
  }
  if (gains) {
    r.obj_gains = obj_rows.size() >= 2 ? features::feature_gains(obj_rows, obj_labels)
                                       : std::vector<double>(features::catalog(features::Catalog::Objectivity).size());
    r.pol_gains = pol_rows.size() >= 2 ? features::feature_gains(pol_rows, pol_labels)
                                       : std::vector<double>(features::catalog(features::Catalog::Polarity).size());
  }
  return r;
}

}  // namespace

FoldPlan stratified_folds(std::span<const Sentiment> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("at least two folds are required");
  if (k > labels.size()) throw std::invalid_argument("more folds than items");
  FoldPlan plan;
  plan.folds.resize(k);
  Rng rng(seed);
  std::size_t next = 0;
  for (auto s : kAllSentiments) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == s) members.push_back(i);
    }
    if (!members.empty() && members.size() < k) {
      plan.warnings.push_back("class " + std::string(to_string(s)) + " has " + std::to_string(members.size()) +
                              " members for " + std::to_string(k) + " folds");
    }
    rng.shuffle(members);
    for (auto i : members) {
      plan.folds[next].push_back(i);
      next = (next + 1) % k;
    }
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

nlohmann::json SectionReport::to_json() const {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& r : rows) classes.push_back(row_json(r));
  return {{"classes", std::move(classes)},
          {"average", row_json(average)},
          {"accuracy", accuracy},
          {"confusion", confusion},
          {"evaluated", evaluated}};
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json j = {{"folds", folds},
                      {"spec", spec.to_json()},
                      {"final", final_.to_json()},
                      {"objectivity", objectivity.to_json()},
                      {"polarity", polarity.to_json()},
                      {"warnings", warnings}};
  if (objectivity_gains) j["objectivity_gains"] = objectivity_gains->to_json();
  if (polarity_gains) j["polarity_gains"] = polarity_gains->to_json();
  return j;
}

EvalReport kfold_cv(std::span<const features::AnalyzedTweet> tweets, std::span<const Sentiment> labels,
                    const PipelineSpec& spec, const EvalOptions& options) {
  if (tweets.size() != labels.size()) throw std::invalid_argument("tweets and labels differ in length");
  auto plan = stratified_folds(labels, options.folds, spec.seed);

  std::vector<FoldResult> results(plan.folds.size());
  if (options.parallel) {
    std::vector<std::future<FoldResult>> jobs;
    for (const auto& fold : plan.folds) {
      jobs.push_back(std::async(std::launch::async, run_fold, tweets, labels, std::cref(fold), std::cref(spec),
                                options.gains));
    }
    for (std::size_t f = 0; f < jobs.size(); ++f) results[f] = jobs[f].get();
  } else {
    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
      results[f] = run_fold(tweets, labels, plan.folds[f], spec, options.gains);
    }
  }

  EvalReport report;
  report.folds = plan.folds.size();
  report.spec = spec;
  report.warnings = plan.warnings;
  std::vector<const Table*> fin, obj, pol;
  for (const auto& r : results) {
    fin.push_back(&r.final_);
    obj.push_back(&r.objectivity);
    pol.push_back(&r.polarity);
  }
  report.final_ = summarize(fin, {"objective", "positive", "negative"});
  report.objectivity = summarize(obj, {"objective", "subjective"});
  report.polarity = summarize(pol, {"positive", "negative"});
  if (options.gains) {
    features::FeatureGainReport og{features::Catalog::Objectivity, {}};
    features::FeatureGainReport pg{features::Catalog::Polarity, {}};
    for (const auto& r : results) {
      og.per_fold.push_back(r.obj_gains);
      pg.per_fold.push_back(r.pol_gains);
    }
    report.objectivity_gains = std::move(og);
    report.polarity_gains = std::move(pg);
  }
  return report;
}

}  // namespace moodpipe::classify
