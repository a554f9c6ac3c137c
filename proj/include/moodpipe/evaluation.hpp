#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "moodpipe/classify.hpp"

namespace moodpipe::classify {

struct FoldPlan {
  std::vector<std::vector<std::size_t>> folds;  // sorted indices per fold
  std::vector<std::string> warnings;
};

/// Stratified partition of indices 0..n-1 into k folds. Each class is
/// shuffled with a generator seeded by `seed` and dealt round-robin,
/// continuing where the previous class stopped, so per-class and total fold
/// sizes differ by at most one. A class with fewer than k members is spread
/// as far as it goes and noted in the warnings.
/// Throws std::invalid_argument unless 2 <= k <= n.
FoldPlan stratified_folds(std::span<const Sentiment> labels, std::size_t k, std::uint64_t seed);

struct ClassRow {
  std::string name;
  double tp_rate = 0;
  double fp_rate = 0;      // fp / (fp + tn)
  double false_alarm = 0;  // fp / (tp + fn)
  double recall = 0;
  double precision = 0;
  double f_measure = 0;
};

// Per-class one-vs-rest metrics averaged over folds, in the column layout
// true positive rate, false positive rate, recall, precision, F-measure.
struct SectionReport {
  std::vector<ClassRow> rows;
  ClassRow average;                                  // unweighted mean of rows
  double accuracy = 0;                               // mean over folds
  std::vector<std::vector<std::uint64_t>> confusion; // [actual][predicted], summed
  std::size_t evaluated = 0;                         // held-out predictions

  nlohmann::json to_json() const;
};

struct EvalOptions {
  std::size_t folds = 10;
  bool parallel = true;
  bool gains = false;  // per-fold information gain of every catalog feature
};

struct EvalReport {
  std::size_t folds = 0;
  PipelineSpec spec;
  SectionReport final_;       // three-class pipeline decision
  SectionReport objectivity;  // p_obj >= 0.5 on every held-out tweet
  SectionReport polarity;     // p_pos >= 0.5 on held-out subjective tweets
  std::optional<features::FeatureGainReport> objectivity_gains;
  std::optional<features::FeatureGainReport> polarity_gains;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

/// k-fold cross-validation of the whole two-stage pipeline: for every fold
/// both stages are trained on the remaining folds and scored on the held-out
/// one. The result depends only on the inputs and spec.seed, whether or not
/// folds run concurrently. Gains, when requested, are measured on each
/// held-out fold with the posterior slot filled by that fold's models.
EvalReport kfold_cv(std::span<const features::AnalyzedTweet> tweets, std::span<const Sentiment> labels,
                    const PipelineSpec& spec, const EvalOptions& options = {});

}  // namespace moodpipe::classify
