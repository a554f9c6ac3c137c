#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "moodpipe/classify.hpp"
#include "moodpipe/evaluation.hpp"
#include "moodpipe/rng.hpp"
#include "support.hpp"

using namespace moodpipe;
using namespace moodpipe::classify;

namespace {

const Resources& res() { return *moodpipe::testing::resources(); }

struct Points {
  std::vector<StageOnePoint> points;
  std::vector<Sentiment> labels;
};

// Three tight clusters, one per class.
Points clusters(std::size_t per_class = 30, std::uint64_t seed = 1) {
  Rng rng(seed);
  const std::array<StageOnePoint, 3> centres = {{{0.9, 0.5}, {0.2, 0.9}, {0.2, 0.1}}};
  Points p;
  for (std::size_t i = 0; i < per_class; ++i) {
    for (auto s : kAllSentiments) {
      auto c = centres[static_cast<std::size_t>(s)];
      p.points.push_back({c.p_obj + (rng.unit() - 0.5) * 0.1, c.p_pos + (rng.unit() - 0.5) * 0.1});
      p.labels.push_back(s);
    }
  }
  return p;
}

double training_accuracy(const Stage2Model& m, const Points& p) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < p.points.size(); ++i) ok += m.predict(p.points[i]) == p.labels[i] ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(p.points.size());
}

std::vector<Sentiment> balanced_labels(std::size_t n) {
  std::vector<Sentiment> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(kAllSentiments[i % 3]);
  return l;
}

}  // namespace

TEST(Metrics, Examples) {
  auto m = compute_metrics({.tp = 50, .fp = 10, .fn = 10, .tn = 30});
  EXPECT_DOUBLE_EQ(m.precision, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(m.recall, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.8);
  EXPECT_DOUBLE_EQ(m.f1, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(m.false_alarm_rate, 10.0 / 60.0);
  EXPECT_DOUBLE_EQ(m.false_positive_rate, 0.25);

  auto zero = compute_metrics({.tp = 0, .fp = 0, .fn = 3, .tn = 1});
  EXPECT_EQ(zero.precision, 0.0);
  EXPECT_TRUE(zero.precision_degenerate);
  EXPECT_EQ(zero.f1, 0.0);

  auto perfect = compute_metrics({.tp = 1, .fp = 0, .fn = 0, .tn = 1});
  for (double v : {perfect.precision, perfect.recall, perfect.accuracy, perfect.f1}) EXPECT_EQ(v, 1.0);
  EXPECT_FALSE(perfect.precision_degenerate);

  auto empty = compute_metrics({});
  EXPECT_TRUE(empty.accuracy_degenerate);
  EXPECT_TRUE(empty.f1_degenerate);
}

TEST(Metrics, Properties) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    ConfusionMatrix c{rng.below(50), rng.below(50), rng.below(50), rng.below(50)};
    auto m = compute_metrics(c);
    EXPECT_EQ(m.true_rate, m.recall);
    EXPECT_GE(m.accuracy, 0.0);
    EXPECT_LE(m.accuracy, 1.0);
    EXPECT_GE(m.f1, 0.0);
    EXPECT_LE(m.f1, std::max(m.precision, m.recall) + 1e-15);
    EXPECT_GE(m.f1, std::min(m.precision, m.recall) - 1e-15);
  }
  auto j = to_json(compute_metrics({.tp = 1, .fp = 2, .fn = 3, .tn = 4}));
  EXPECT_TRUE(j.contains("precision"));
}

TEST(Sentiments, Names) {
  for (auto s : kAllSentiments) EXPECT_EQ(parse_sentiment(to_string(s)), s);
  EXPECT_EQ(parse_sentiment("neu"), Sentiment::Objective);
  EXPECT_EQ(from_merged(labeling::MergedLabel::Neutral), Sentiment::Objective);
  EXPECT_FALSE(from_merged(labeling::MergedLabel::Ambiguous));
  for (auto k : kAllStage2Kinds) EXPECT_EQ(parse_stage2(to_string(k)), k);
  EXPECT_FALSE(parse_stage2("tree"));
}

TEST(Stage2, SeparableClustersEveryKind) {
  auto p = clusters();
  for (auto kind : kAllStage2Kinds) {
    auto m = Stage2Model::train(kind, p.points, p.labels);
    EXPECT_EQ(training_accuracy(m, p), 1.0) << to_string(kind);
    EXPECT_EQ(m.predict({0.95, 0.5}), Sentiment::Objective) << to_string(kind);
    EXPECT_EQ(m.predict({0.05, 0.95}), Sentiment::Positive) << to_string(kind);
    EXPECT_EQ(m.predict({0.05, 0.05}), Sentiment::Negative) << to_string(kind);
  }
}

TEST(Stage2, KnnSelfAccuracyWithOneNeighbour) {
  Rng rng(9);
  Points p;
  for (int i = 0; i < 90; ++i) {
    p.points.push_back({rng.unit(), rng.unit()});
    p.labels.push_back(kAllSentiments[rng.below(3)]);
  }
  auto m = Stage2Model::train(Stage2Kind::KNN, p.points, p.labels, {.knn_k = 1});
  EXPECT_EQ(training_accuracy(m, p), 1.0);
}

TEST(Stage2, DecisionTotalOverSquare) {
  auto p = clusters(10);
  for (auto kind : kAllStage2Kinds) {
    auto m = Stage2Model::train(kind, p.points, p.labels);
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        auto s = static_cast<int>(m.predict({i / 20.0, j / 20.0}));
        EXPECT_TRUE(s >= 0 && s <= 2);
      }
    }
  }
}

TEST(Stage2, Errors) {
  std::vector<StageOnePoint> same(3, {0.5, 0.5});
  std::vector<Sentiment> l = balanced_labels(3);
  EXPECT_THROW(Stage2Model::train(Stage2Kind::SVM, same, l), std::invalid_argument);
  auto p = clusters(5);
  std::vector<Sentiment> two(p.labels.size(), Sentiment::Positive);
  two[0] = Sentiment::Negative;
  EXPECT_THROW(Stage2Model::train(Stage2Kind::SVM, p.points, two), std::invalid_argument);
  EXPECT_THROW(Stage2Model::train(Stage2Kind::SVM, p.points, std::span(p.labels).first(3)), std::invalid_argument);
  p.points[0].p_obj = 1.5;
  EXPECT_THROW(Stage2Model::train(Stage2Kind::KNN, p.points, p.labels), std::invalid_argument);
}

TEST(Stage2, JsonRoundTripAndDeterminism) {
  auto p = clusters(20, 4);
  for (auto kind : kAllStage2Kinds) {
    auto m = Stage2Model::train(kind, p.points, p.labels);
    auto again = Stage2Model::train(kind, p.points, p.labels);
    EXPECT_EQ(m.to_json(), again.to_json()) << to_string(kind);
    auto back = Stage2Model::from_json(nlohmann::json::parse(m.to_json().dump()));
    EXPECT_EQ(back.kind(), kind);
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
      StageOnePoint q{rng.unit(), rng.unit()};
      EXPECT_EQ(back.predict(q), m.predict(q)) << to_string(kind);
    }
  }
}

TEST(Stage2, RuleThresholds) {
  auto p = clusters();
  auto m = Stage2Model::train(Stage2Kind::RuleBased, p.points, p.labels);
  auto [t_obj, t_pos] = m.rule_thresholds();
  EXPECT_GT(t_obj, 0.25);
  EXPECT_LE(t_obj, 0.85);
  EXPECT_GT(t_pos, 0.15);
  EXPECT_LE(t_pos, 0.85);
}

TEST(Stage1, SyntheticAccuracies) {
  const auto& m = moodpipe::testing::small_model();
  const auto& s1 = m.pipeline->stage1();
  std::size_t obj_ok = 0, pol_ok = 0, subj = 0;
  for (std::size_t i = 0; i < m.analyzed.size(); ++i) {
    auto pt = s1.apply(m.analyzed[i]);
    EXPECT_GE(pt.p_obj, 0.0);
    EXPECT_LE(pt.p_obj, 1.0);
    bool is_obj = m.corpus.labels[i] == Sentiment::Objective;
    obj_ok += (pt.p_obj >= 0.5) == is_obj ? 1 : 0;
    if (!is_obj) {
      ++subj;
      pol_ok += (pt.p_pos >= 0.5) == (m.corpus.labels[i] == Sentiment::Positive) ? 1 : 0;
    }
  }
  EXPECT_GE(static_cast<double>(obj_ok) / static_cast<double>(m.analyzed.size()), 0.95);
  EXPECT_GE(static_cast<double>(pol_ok) / static_cast<double>(subj), 0.95);
}

TEST(Stage1, EmptyTweetIsCentre) {
  const auto& p = *moodpipe::testing::small_model().pipeline;
  EXPECT_EQ(p.point(features::analyze("", res())), (StageOnePoint{0.5, 0.5}));
}

TEST(Stage1, SmallHandBuiltCorpus) {
  std::vector<std::string> texts = {"stocks report market http://a.co", "market report today http://b.co",
                                    "report stocks news http://c.co",   "i love this great day :)",
                                    "love great fun :)",                "great love wonderful :D",
                                    "i hate this awful day :(",         "awful hate terrible :(",
                                    "hate awful mess :'("};
  std::vector<Sentiment> labels = {Sentiment::Objective, Sentiment::Objective, Sentiment::Objective,
                                   Sentiment::Positive,  Sentiment::Positive,  Sentiment::Positive,
                                   Sentiment::Negative,  Sentiment::Negative,  Sentiment::Negative};
  std::vector<features::AnalyzedTweet> tweets;
  for (const auto& t : texts) tweets.push_back(features::analyze(t, res()));
  Stage1Options o;
  o.unigram.min_count = 1;
  auto s1 = Stage1Model::train(tweets, labels, o);
  EXPECT_GT(s1.apply(features::analyze("market report http://d.co", res())).p_obj, 0.5);
  EXPECT_GT(s1.apply(features::analyze("great love wonderful", res())).p_pos, 0.9);
  EXPECT_LT(s1.apply(features::analyze("awful hate terrible", res())).p_pos, 0.1);

  std::vector<Sentiment> no_neg(labels.begin(), labels.end());
  std::replace(no_neg.begin(), no_neg.end(), Sentiment::Negative, Sentiment::Positive);
  try {
    Stage1Model::train(tweets, no_neg, o);
    FAIL() << "expected a missing-class error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("negative"), std::string::npos) << e.what();
  }
}

TEST(Pipeline, ClassifyDeterministicAndRoundTrip) {
  const auto& m = moodpipe::testing::small_model();
  const auto& p = *m.pipeline;
  auto back = Pipeline::from_json(nlohmann::json::parse(p.to_json().dump()));
  EXPECT_EQ(back.to_json(), p.to_json());
  for (std::size_t i = 0; i < 60; ++i) {
    const auto& t = m.analyzed[i];
    EXPECT_EQ(p.classify(t), p.classify(t));
    EXPECT_EQ(back.point(t), p.point(t));
    EXPECT_EQ(back.classify(t), p.classify(t));
  }
  EXPECT_EQ(p.classify("", res()), p.stage2().predict({0.5, 0.5}));
  EXPECT_THROW(Pipeline::from_json(nlohmann::json{{"format", "other"}}), std::exception);
}

TEST(Folds, PartitionLaws) {
  for (std::size_t n : {37u, 100u, 1000u}) {
    std::vector<Sentiment> labels;
    Rng rng(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(kAllSentiments[rng.below(3)]);
    auto plan = stratified_folds(labels, 10, 42);
    ASSERT_EQ(plan.folds.size(), 10u);
    std::vector<int> seen(n, 0);
    std::size_t lo = n, hi = 0;
    for (const auto& f : plan.folds) {
      EXPECT_TRUE(std::is_sorted(f.begin(), f.end()));
      for (auto i : f) ++seen[i];
      lo = std::min(lo, f.size());
      hi = std::max(hi, f.size());
    }
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    EXPECT_LE(hi - lo, 1u);
    for (auto s : kAllSentiments) {
      std::size_t clo = n, chi = 0;
      for (const auto& f : plan.folds) {
        auto c = static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [&](auto i) { return labels[i] == s; }));
        clo = std::min(clo, c);
        chi = std::max(chi, c);
      }
      EXPECT_LE(chi - clo, 1u);
    }
  }
}

TEST(Folds, HundredIntoTens) {
  auto plan = stratified_folds(balanced_labels(100), 10, 1);
  for (const auto& f : plan.folds) EXPECT_EQ(f.size(), 10u);
  EXPECT_EQ(stratified_folds(balanced_labels(100), 10, 1).folds, plan.folds);
}

TEST(Folds, SmallClassWarnsAndBadKThrows) {
  auto l = balanced_labels(60);
  l[0] = Sentiment::Negative;
  std::vector<Sentiment> few(l.begin(), l.end());
  std::replace(few.begin() + 4, few.end(), Sentiment::Objective, Sentiment::Positive);
  auto plan = stratified_folds(few, 10, 3);
  EXPECT_FALSE(plan.warnings.empty());
  EXPECT_THROW(stratified_folds(l, 1, 0), std::invalid_argument);
  EXPECT_THROW(stratified_folds(l, 61, 0), std::invalid_argument);
}

TEST(KFold, DeterministicAcrossParallelism) {
  const auto& m = moodpipe::testing::small_model();
  PipelineSpec spec;
  auto a = kfold_cv(m.analyzed, m.corpus.labels, spec, {.folds = 5, .parallel = true});
  auto b = kfold_cv(m.analyzed, m.corpus.labels, spec, {.folds = 5, .parallel = false});
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  EXPECT_EQ(a.final_.evaluated, m.analyzed.size());
  EXPECT_EQ(a.objectivity.evaluated, m.analyzed.size());
  EXPECT_EQ(a.polarity.evaluated, 300u);
  EXPECT_GE(a.final_.average.f_measure, 0.85);
  ASSERT_EQ(a.final_.rows.size(), 3u);
  for (const auto& r : a.final_.rows) {
    for (double v : {r.tp_rate, r.fp_rate, r.recall, r.precision, r.f_measure}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_EQ(r.tp_rate, r.recall);
  }
  std::uint64_t total = 0;
  for (const auto& row : a.final_.confusion) {
    for (auto c : row) total += c;
  }
  EXPECT_EQ(total, m.analyzed.size());
}

TEST(KFold, GainsPerFold) {
  const auto& m = moodpipe::testing::small_model();
  auto r = kfold_cv(m.analyzed, m.corpus.labels, {}, {.folds = 3, .gains = true});
  ASSERT_TRUE(r.objectivity_gains);
  ASSERT_TRUE(r.polarity_gains);
  EXPECT_EQ(r.objectivity_gains->per_fold.size(), 3u);
  for (const auto& fold : r.polarity_gains->per_fold) {
    ASSERT_EQ(fold.size(), features::catalog(features::Catalog::Polarity).size());
    for (double g : fold) EXPECT_GE(g, 0.0);
  }
  auto pol = features::select_top_k(*r.polarity_gains, 1);
  EXPECT_EQ(pol.selected.size(), 1u);
}
