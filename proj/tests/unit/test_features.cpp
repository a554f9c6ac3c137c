#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "moodpipe/features.hpp"
#include "moodpipe/rng.hpp"
#include "support.hpp"

using namespace moodpipe;
using namespace moodpipe::features;
using Rational = boost::multiprecision::cpp_rational;

namespace {

using Docs = std::vector<std::vector<std::string>>;

UnigramModel model(const Docs& a, const Docs& b, int min_count = 1, double x = 1.0) {
  return UnigramModel::train("a", "b", a, b, {.min_count = min_count, .smoothing_x = x});
}

// P(A | tokens) from the raw products of smoothed probabilities.
Rational rational_posterior(const UnigramModel& m, const std::vector<std::string>& tokens) {
  const auto x = Rational(static_cast<long long>(m.options().smoothing_x));
  Rational pa = 1, pb = 1;
  for (const auto& t : tokens) {
    if (!m.in_vocab(t)) continue;
    auto p = [&](UnigramModel::Side s) {
      return (Rational(m.count(t, s)) + x) / (Rational(m.total(s)) + x * Rational(m.smoothing_vocab(s)));
    };
    pa *= p(UnigramModel::A);
    pb *= p(UnigramModel::B);
  }
  return pa / (pa + pb);
}

const Resources& res() { return *moodpipe::testing::resources(); }

}  // namespace

TEST(Unigram, PruningAtThreshold) {
  auto m = model({{"good", "good", "good", "good", "good"}}, {{"bad", "bad", "bad", "bad", "bad", "meh", "meh"}}, 5);
  EXPECT_EQ(m.vocab(), (std::vector<std::string>{"bad", "good"}));
  EXPECT_FALSE(m.in_vocab("meh"));
  EXPECT_EQ(m.total(UnigramModel::B), 5u);
}

TEST(Unigram, WordProbExamples) {
  std::unordered_map<std::string, UnigramModel::Counts> c;
  c["w0"] = {0, 1};
  c["w1"] = {100, 1};
  for (int i = 2; i < 50; ++i) c["w" + std::to_string(i)] = {0, 1};
  auto m = UnigramModel::from_counts("a", "b", c, {.min_count = 1});
  EXPECT_DOUBLE_EQ(m.word_prob("w0", UnigramModel::A), 1.0 / 150.0);

  std::unordered_map<std::string, UnigramModel::Counts> d;
  d["w0"] = {9, 1};
  d["w1"] = {82, 1};
  for (int i = 2; i < 9; ++i) d["w" + std::to_string(i)] = {0, 1};
  EXPECT_DOUBLE_EQ(UnigramModel::from_counts("a", "b", d, {.min_count = 1}).word_prob("w0", UnigramModel::A), 0.1);

  auto raw = UnigramModel::from_counts("a", "b", d, {.min_count = 1, .smoothing_x = 0.0});
  EXPECT_DOUBLE_EQ(raw.word_prob("w0", UnigramModel::A), 9.0 / 91.0);
  EXPECT_THROW(m.word_prob("unknown", UnigramModel::A), std::out_of_range);
}

TEST(Unigram, PerClassVocabFlag) {
  std::unordered_map<std::string, UnigramModel::Counts> c = {{"x", {3, 0}}, {"y", {1, 4}}, {"z", {0, 2}}};
  auto m = UnigramModel::from_counts("a", "b", c, {.min_count = 1, .per_class_vocab = true});
  EXPECT_EQ(m.smoothing_vocab(UnigramModel::A), 2u);
  EXPECT_DOUBLE_EQ(m.word_prob("x", UnigramModel::A), 4.0 / 6.0);
}

TEST(Unigram, Errors) {
  EXPECT_THROW(model({}, {}), std::invalid_argument);
  EXPECT_THROW(model({{"a"}}, {{"b"}}, 0), std::invalid_argument);
  EXPECT_THROW(model({{"a"}}, {{"b"}}, 1, -1.0), std::invalid_argument);
}

TEST(Unigram, NormalizesOverVocabulary) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Docs a(5), b(5);
    for (auto* docs : {&a, &b}) {
      for (auto& d : *docs) {
        for (int i = 0; i < 8; ++i) d.push_back("w" + std::to_string(rng.below(30)));
      }
    }
    auto m = model(a, b, 1 + static_cast<int>(rng.below(3)), 0.5 + static_cast<double>(rng.below(3)));
    for (auto side : {UnigramModel::A, UnigramModel::B}) {
      double sum = 0;
      for (const auto& w : m.vocab()) sum += m.word_prob(w, side);
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(Unigram, PosteriorExamples) {
  auto m = model({{"good", "good"}}, {{"bad"}});
  EXPECT_EQ(m.posterior(std::vector<std::string>{"unknown"}), 0.5);
  EXPECT_EQ(m.posterior(std::vector<std::string>{}), 0.5);
  // (3/4) / (3/4 + 1/3)
  EXPECT_NEAR(m.posterior(std::vector<std::string>{"good"}), 9.0 / 13.0, 1e-15);
  auto sym = model({{"x", "y"}}, {{"y", "x"}});
  EXPECT_EQ(sym.posterior(std::vector<std::string>{"x", "x", "y"}), 0.5);
}

TEST(Unigram, PosteriorMatchesRationalOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Docs a(3), b(3);
    for (auto* docs : {&a, &b}) {
      for (auto& d : *docs) {
        for (int i = 0; i < 4; ++i) d.push_back("w" + std::to_string(rng.below(8)));
      }
    }
    auto m = model(a, b);
    std::vector<std::string> tweet;
    for (std::size_t i = 0, n = 1 + rng.below(5); i < n; ++i) tweet.push_back("w" + std::to_string(rng.below(10)));
    double expected = static_cast<double>(rational_posterior(m, tweet));
    EXPECT_NEAR(m.posterior(tweet), expected, 1e-12);
  }
}

TEST(Unigram, ComplementPermutationAndNeutralTokens) {
  auto m = model({{"sun", "fun", "sun"}, {"beach"}}, {{"rain", "cold"}, {"fun", "rain"}});
  std::vector<std::string> t = {"sun", "rain", "rain", "beach"};
  EXPECT_EQ(m.posterior(t) + m.swapped().posterior(t), 1.0);
  auto p = t;
  std::reverse(p.begin(), p.end());
  EXPECT_NEAR(m.posterior(p), m.posterior(t), 1e-15);
  auto balanced = model({{"sun", "fun"}}, {{"rain", "fun"}});
  std::vector<std::string> s = {"sun", "rain", "sun"};
  auto with = s;
  with.push_back("fun");
  EXPECT_NEAR(balanced.posterior(with), balanced.posterior(s), 1e-15);
}

TEST(Unigram, LogisticSymmetry) {
  for (double z : {-800.0, -30.0, -1.5, 0.0, 0.3, 12.0, 700.0}) {
    EXPECT_EQ(UnigramModel::logistic(-z), 1.0 - UnigramModel::logistic(z)) << z;
  }
}

TEST(Unigram, JsonRoundTrip) {
  auto m = model({{"a", "b", "a"}}, {{"b", "c"}});
  auto back = UnigramModel::from_json(nlohmann::json::parse(m.to_json().dump()));
  EXPECT_EQ(back.vocab(), m.vocab());
  for (const auto& w : m.vocab()) {
    EXPECT_EQ(back.count(w, UnigramModel::A), m.count(w, UnigramModel::A));
    EXPECT_EQ(back.word_prob(w, UnigramModel::B), m.word_prob(w, UnigramModel::B));
  }
  EXPECT_EQ(back.to_json(), m.to_json());
}

TEST(Catalog, Sizes) {
  EXPECT_EQ(catalog(Catalog::Objectivity).size(), 35u);
  EXPECT_EQ(catalog(Catalog::Polarity).size(), 21u);
  EXPECT_TRUE(feature_index(Catalog::Objectivity, kPosteriorFeature));
  EXPECT_TRUE(feature_index(Catalog::Polarity, kPosteriorFeature));
  EXPECT_FALSE(feature_index(Catalog::Polarity, "has_url"));
}

TEST(Extract, ObjectivityExamples) {
  auto v = extract_objsubj(analyze("Wow!! :) http://x", res()), res());
  EXPECT_EQ(v.at("exclamation_count"), 2);
  EXPECT_EQ(v.at("has_url"), 1);
  EXPECT_EQ(v.at("has_emoticon"), 1);
  EXPECT_THROW(v.at("nonsense"), std::invalid_argument);

  auto h = extract_objsubj(analyze("He runs fast", res()), res());
  EXPECT_EQ(h.at("personal_pronouns"), 1);
  EXPECT_EQ(h.at("third_person_verbs"), 1);
}

TEST(Extract, EmptyTweet) {
  auto t = analyze("", res());
  EXPECT_TRUE(t.empty());
  for (auto c : {Catalog::Objectivity, Catalog::Polarity}) {
    auto v = c == Catalog::Objectivity ? extract_objsubj(t, res()) : extract_polarity(t, res());
    auto specs = catalog(c);
    ASSERT_EQ(v.values.size(), specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
      EXPECT_EQ(v.values[i], specs[i].name == kPosteriorFeature ? 0.5 : 0.0) << specs[i].name;
    }
  }
}

TEST(Extract, PolarityExamples) {
  auto v = extract_polarity(analyze(":) :(", res()), res());
  EXPECT_EQ(v.at("emoticon_count"), 2);
  EXPECT_EQ(v.at("positive_emoticons"), 1);
  EXPECT_EQ(v.at("negative_emoticons"), 1);
  EXPECT_EQ(v.at("emoticon_score"), 0);

  Resources r;
  r.mpqa = lexicons::MpqaLexicon({{"superb", lexicons::Strength::Strong, lexicons::Polarity::Positive}});
  r.english = res().english;
  auto s = extract_polarity(analyze("superb", r), r);
  EXPECT_EQ(s.at("mpqa_score"), 1.0);
  EXPECT_EQ(s.at("mpqa_positive_words"), 1);
}

TEST(Extract, PosteriorSlotUsesModel) {
  auto m = model({{"news", "report"}}, {{"love", "hate"}});
  auto t = analyze("news report", res());
  EXPECT_EQ(t.objectivity.at(kPosteriorFeature), 0.5);
  auto v = extract_objsubj(t, res(), &m);
  EXPECT_DOUBLE_EQ(v.at(kPosteriorFeature), m.posterior(t.terms));
  EXPECT_GT(v.at(kPosteriorFeature), 0.5);
  EXPECT_EQ(with_posterior(v, 0.25).at(kPosteriorFeature), 0.25);
}

TEST(Terms, HashtagsAndStopwords) {
  auto t = analyze("The #Happy cat is HERE", res());
  EXPECT_EQ(t.terms, (std::vector<std::string>{"happy", "cat"}));
  auto no_tags = analyze("The #Happy cat", res(), {.include_hashtags = false});
  EXPECT_EQ(no_tags.terms, (std::vector<std::string>{"cat"}));
}

TEST(InfoGain, Examples) {
  std::vector<int> labels = {0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(information_gain(std::vector<double>{0, 0, 1, 1}, labels), 1.0);
  EXPECT_DOUBLE_EQ(information_gain(std::vector<double>{0, 0, 1, 1}, labels, Binning::Discrete), 1.0);
  EXPECT_EQ(information_gain(std::vector<double>{3, 3, 3, 3}, labels), 0.0);
  std::vector<int> three = {0, 1, 2, 0, 1, 2};
  std::vector<double> same(three.begin(), three.end());
  EXPECT_NEAR(information_gain(same, three, Binning::Discrete), entropy_bits(three), 1e-12);
  EXPECT_THROW(information_gain(std::vector<double>{1, 2}, std::vector<int>{0}), std::invalid_argument);
  EXPECT_THROW(information_gain(std::vector<double>{1}, std::vector<int>{0}), std::invalid_argument);
}

TEST(InfoGain, BoundedByLabelEntropy) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng.below(30);
    std::vector<double> v(n);
    std::vector<int> l(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<double>(rng.below(5));
      l[i] = static_cast<int>(rng.below(3));
    }
    for (auto b : {Binning::Discrete, Binning::BinaryCut}) {
      double g = information_gain(v, l, b);
      EXPECT_GE(g, 0.0);
      EXPECT_LE(g, entropy_bits(l) + 1e-12);
    }
    EXPECT_LE(information_gain(v, l, Binning::BinaryCut), information_gain(v, l, Binning::Discrete) + 1e-12);
  }
}

TEST(InfoGain, BestCut) {
  std::vector<double> v = {0.1, 0.2, 0.8, 0.9};
  std::vector<int> l = {0, 0, 1, 1};
  auto cut = best_binary_cut(v, l);
  ASSERT_TRUE(cut);
  EXPECT_GE(cut->threshold, 0.2);
  EXPECT_LT(cut->threshold, 0.8);
  EXPECT_DOUBLE_EQ(cut->gain, 1.0);
  EXPECT_FALSE(best_binary_cut(std::vector<double>{1, 1}, std::vector<int>{0, 1}));
}

namespace {

FeatureGainReport report(Catalog c, std::vector<double> gains) {
  FeatureGainReport r;
  r.catalog = c;
  gains.resize(catalog(c).size(), 0.0);
  r.per_fold = {gains, gains};
  return r;
}

}  // namespace

TEST(Select, TopKByMeanGainWithCatalogTies) {
  auto r = report(Catalog::Polarity, {0.1, 0.3, 0.3, 0.05});
  auto s = select_top_k(r, 1);
  EXPECT_EQ(s.selected, (std::vector<std::string>{"mpqa_score"}));
  s = select_top_k(r, 3);
  EXPECT_EQ(s.selected, (std::vector<std::string>{"mpqa_score", "unigram_posterior", "emoticon_score"}));
  EXPECT_EQ(s.ranking.size(), 21u);
  EXPECT_THROW(select_top_k(r, 0), std::invalid_argument);
  EXPECT_THROW(select_top_k(r, 22), std::invalid_argument);
}

TEST(Select, RedundantFeatureDropped) {
  auto r = report(Catalog::Polarity, {0.5, 0.1, 0.2, 0.45});  // emoticon_score, emoticon_count lead
  std::vector<FeatureVector> rows;
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    FeatureVector v{Catalog::Polarity, std::vector<double>(21, 0.0)};
    double pos = static_cast<double>(rng.below(4));
    double neg = static_cast<double>(rng.below(4));
    v.values[0] = pos - neg;
    v.values[3] = 2 * (pos - neg) + 1;  // a linear function of emoticon_score
    v.values[1] = static_cast<double>(rng.below(100)) / 10;
    v.values[2] = static_cast<double>(rng.below(100)) / 100;
    rows.push_back(v);
  }
  auto s = select_top_k(r, 3, rows);
  EXPECT_EQ(s.selected, (std::vector<std::string>{"emoticon_score", "unigram_posterior"}));
  ASSERT_EQ(s.redundant.size(), 1u);
  EXPECT_EQ(s.redundant[0].feature, "emoticon_count");
  EXPECT_NEAR(s.redundant[0].r_squared, 1.0, 1e-9);
}

TEST(Select, ShippedDefaults) {
  EXPECT_EQ(default_selection(Catalog::Objectivity),
            (std::vector<std::string>{"unigram_posterior", "has_url", "has_emoticon", "personal_pronouns",
                                      "exclamation_count"}));
  EXPECT_EQ(default_selection(Catalog::Polarity),
            (std::vector<std::string>{"unigram_posterior", "positive_emoticons", "negative_emoticons"}));
  for (auto c : {Catalog::Objectivity, Catalog::Polarity}) {
    for (const auto& n : default_selection(c)) EXPECT_TRUE(feature_index(c, n)) << n;
  }
}

TEST(GainReport, MeanAndJson) {
  FeatureGainReport r;
  r.catalog = Catalog::Polarity;
  r.per_fold = {std::vector<double>(21, 0.2), std::vector<double>(21, 0.4)};
  auto m = r.mean();
  ASSERT_EQ(m.size(), 21u);
  EXPECT_NEAR(m[5], 0.3, 1e-15);
  EXPECT_EQ(r.catalog_size(), 21u);
  EXPECT_TRUE(r.to_json().is_object() || r.to_json().is_array());
}
