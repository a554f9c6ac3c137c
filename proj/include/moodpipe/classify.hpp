#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "moodpipe/features.hpp"
#include "moodpipe/labeling.hpp"
#include "moodpipe/resources.hpp"

namespace moodpipe::classify {

// Class indices double as stage-2 output order and tie-break order.
enum class Sentiment : int { Objective = 0, Positive = 1, Negative = 2 };

inline constexpr std::array<Sentiment, 3> kAllSentiments = {Sentiment::Objective, Sentiment::Positive,
                                                            Sentiment::Negative};

std::string_view to_string(Sentiment s);
// Accepts objective/neutral/neu, positive/pos, negative/neg.
std::optional<Sentiment> parse_sentiment(std::string_view s);
// Positive, Negative and Neutral map to a class; other outcomes do not train.
std::optional<Sentiment> from_merged(labeling::MergedLabel m);

// ---------------------------------------------------------------------------
// Metrics

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
};

struct Metrics {
  double precision = 0;           // tp / (tp + fp)
  double recall = 0;              // tp / (tp + fn)
  double accuracy = 0;            // (tp + tn) / (tp + tn + fp + fn)
  double f1 = 0;                  // 2PR / (P + R)
  double true_rate = 0;           // tp / (tp + fn), identical to recall
  double false_alarm_rate = 0;    // fp / (tp + fn)
  double false_positive_rate = 0; // fp / (fp + tn)

  // Set when the metric's denominator was zero and 0 was reported.
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  bool accuracy_degenerate = false;
  bool f1_degenerate = false;
  bool false_alarm_degenerate = false;
  bool false_positive_degenerate = false;
};

// Every ratio is formed by a single division of exact integer sums, so each
// value is the correctly rounded rational result.
Metrics compute_metrics(const ConfusionMatrix& m);
nlohmann::json to_json(const Metrics& m);

// ---------------------------------------------------------------------------
// Stage 1: objectivity and polarity Naive Bayes

struct StageOnePoint {
  double p_obj = 0.5;
  double p_pos = 0.5;

  friend bool operator==(const StageOnePoint&, const StageOnePoint&) = default;
};

struct Stage1Options {
  features::UnigramOptions unigram;
  std::vector<std::string> objectivity_features = features::default_selection(features::Catalog::Objectivity);
  std::vector<std::string> polarity_features = features::default_selection(features::Catalog::Polarity);
  int count_cap = 5;        // counts above the cap share one bin
  double laplace = 1.0;     // additive smoothing for count and presence features
  double min_variance = 1e-4;
  bool empirical_priors = false;
};

/// Two-class Naive Bayes over a selection of catalog features. The unigram
/// posterior enters as its log odds; counts use smoothed categorical bins
/// 0..cap plus an overflow bin, presence flags a Bernoulli and continuous
/// features a Gaussian per class.
class FeatureNaiveBayes {
 public:
  FeatureNaiveBayes() = default;

  // `is_a[i]` marks rows of the first class. Throws std::invalid_argument
  // for unknown feature names or when a class has no rows.
  static FeatureNaiveBayes train(features::Catalog catalog, const std::vector<std::string>& selected,
                                 std::span<const features::FeatureVector> rows, std::span<const std::uint8_t> is_a,
                                 const Stage1Options& options);

  // log P(a | x) - log P(b | x) given the unigram model's log odds.
  double log_odds(const features::FeatureVector& v, double unigram_log_odds) const;

  const std::vector<std::string>& selected() const { return selected_; }

  nlohmann::json to_json() const;
  static FeatureNaiveBayes from_json(const nlohmann::json& j);

 private:
  struct Term {
    std::size_t index = 0;
    features::FeatureKind kind = features::FeatureKind::Count;
    std::array<std::vector<double>, 2> log_bins;  // Count / Presence
    std::array<double, 2> mean{};                 // Continuous
    std::array<double, 2> variance{};
  };

  features::Catalog catalog_ = features::Catalog::Objectivity;
  std::vector<std::string> selected_;
  std::vector<Term> terms_;
  bool uses_unigram_ = false;
  int count_cap_ = 5;
  double prior_log_odds_ = 0.0;
};

class Stage1Model {
 public:
  Stage1Model() = default;

  /// Trains the objectivity model on Objective vs Positive+Negative and the
  /// polarity model on Positive vs Negative. Throws std::invalid_argument
  /// naming the first class without training tweets.
  static Stage1Model train(std::span<const features::AnalyzedTweet* const> tweets,
                           std::span<const Sentiment> labels, const Stage1Options& options = {});
  static Stage1Model train(std::span<const features::AnalyzedTweet> tweets, std::span<const Sentiment> labels,
                           const Stage1Options& options = {});

  // A tweet without any token maps to (0.5, 0.5).
  StageOnePoint apply(const features::AnalyzedTweet& tweet) const;

  const features::UnigramModel& objectivity_unigram() const { return obj_unigram_; }
  const features::UnigramModel& polarity_unigram() const { return pol_unigram_; }
  const FeatureNaiveBayes& objectivity_nb() const { return obj_nb_; }
  const FeatureNaiveBayes& polarity_nb() const { return pol_nb_; }

  nlohmann::json to_json() const;
  static Stage1Model from_json(const nlohmann::json& j);

 private:
  features::UnigramModel obj_unigram_;
  features::UnigramModel pol_unigram_;
  FeatureNaiveBayes obj_nb_;
  FeatureNaiveBayes pol_nb_;
};

// ---------------------------------------------------------------------------
// Stage 2: three-class decision over the unit square

enum class Stage2Kind { SVM, LogisticRegression, KNN, NaiveBayes2D, KMeans, RuleBased };

inline constexpr std::array<Stage2Kind, 6> kAllStage2Kinds = {
    Stage2Kind::SVM,          Stage2Kind::LogisticRegression, Stage2Kind::KNN,
    Stage2Kind::NaiveBayes2D, Stage2Kind::KMeans,             Stage2Kind::RuleBased};

// svm, logreg, knn, nb, kmeans, rules
std::string_view to_string(Stage2Kind k);
std::optional<Stage2Kind> parse_stage2(std::string_view s);

struct Stage2Options {
  std::uint64_t seed = 42;
  double svm_lambda = 0.01;
  int svm_iterations = 10000;
  double logreg_l2 = 1e-3;
  double logreg_tolerance = 1e-8;
  int logreg_max_iterations = 200000;
  int knn_k = 5;
  int kmeans_max_iterations = 300;
  int rule_steps = 100;  // grid resolution 1 / rule_steps
};

class Stage2Model {
 public:
  Stage2Model() = default;

  /// Throws std::invalid_argument when a class has no points, the inputs
  /// differ in length, a point lies outside [0,1]^2 or all points coincide.
  static Stage2Model train(Stage2Kind kind, std::span<const StageOnePoint> points, std::span<const Sentiment> labels,
                           const Stage2Options& options = {});

  Sentiment predict(const StageOnePoint& p) const;
  Stage2Kind kind() const { return kind_; }

  // Rule thresholds (RuleBased only): objective when p_obj >= first,
  // otherwise positive when p_pos >= second.
  std::pair<double, double> rule_thresholds() const { return {t_obj_, t_pos_}; }

  nlohmann::json to_json() const;
  static Stage2Model from_json(const nlohmann::json& j);

 private:
  using Weights = std::array<std::array<double, 3>, 3>;  // [class][u, v, bias]

  Stage2Kind kind_ = Stage2Kind::SVM;
  Weights weights_{};
  std::vector<StageOnePoint> points_;
  std::vector<Sentiment> labels_;
  int k_ = 5;
  std::array<std::array<double, 2>, 3> mean_{};
  std::array<std::array<double, 2>, 3> variance_{};
  std::array<double, 3> log_prior_{};
  std::vector<std::array<double, 2>> centroids_;
  std::vector<Sentiment> cluster_class_;
  double t_obj_ = 0.5;
  double t_pos_ = 0.5;
};

// ---------------------------------------------------------------------------
// Full pipeline

struct PipelineSpec {
  Stage2Kind stage2 = Stage2Kind::SVM;
  Stage1Options stage1;
  Stage2Options stage2_options;
  features::TermOptions terms;
  // Stage-2 training points come from stage-1 models fitted on the other
  // inner folds, so that they look like points of unseen tweets.
  int inner_folds = 5;
  std::uint64_t seed = 42;

  nlohmann::json to_json() const;
};

class Pipeline {
 public:
  Pipeline() = default;

  static Pipeline train(std::span<const features::AnalyzedTweet* const> tweets, std::span<const Sentiment> labels,
                        const PipelineSpec& spec = {});
  static Pipeline train(std::span<const features::AnalyzedTweet> tweets, std::span<const Sentiment> labels,
                        const PipelineSpec& spec = {});

  StageOnePoint point(const features::AnalyzedTweet& tweet) const { return stage1_.apply(tweet); }
  Sentiment classify(const features::AnalyzedTweet& tweet) const { return stage2_.predict(point(tweet)); }
  Sentiment classify(std::string_view text, const Resources& resources) const;

  const Stage1Model& stage1() const { return stage1_; }
  const Stage2Model& stage2() const { return stage2_; }
  const features::TermOptions& terms() const { return terms_; }

  nlohmann::json to_json() const;
  static Pipeline from_json(const nlohmann::json& j);

 private:
  Stage1Model stage1_;
  Stage2Model stage2_;
  features::TermOptions terms_;
};

}  // namespace moodpipe::classify
