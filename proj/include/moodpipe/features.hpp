#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "moodpipe/pos_tagger.hpp"
#include "moodpipe/resources.hpp"
#include "moodpipe/text.hpp"

namespace moodpipe::features {

// ---------------------------------------------------------------------------
// Unigram class model

struct UnigramOptions {
  int min_count = 5;
  double smoothing_x = 1.0;
  // Use each class's own count of distinct words as V instead of the shared
  // pruned vocabulary size.
  bool per_class_vocab = false;
  // Add log(docs_a / docs_b) to the log odds instead of assuming equal priors.
  bool empirical_priors = false;
};

/// Two-class bag-of-words model with additive smoothing:
///   P(w | c) = (count_c(w) + x) / (total_c + x * V)
/// where V is the size of the pruned vocabulary (words seen at least
/// min_count times over both classes) and total_c sums count_c over it.
class UnigramModel {
 public:
  enum Side : std::uint8_t { A = 0, B = 1 };
  using Counts = std::array<std::uint64_t, 2>;

  UnigramModel() = default;

  // Throws std::invalid_argument when both document sets are empty or the
  // options are out of range (min_count < 1, smoothing_x < 0).
  static UnigramModel train(std::string name_a, std::string name_b, std::span<const std::vector<std::string>> docs_a,
                            std::span<const std::vector<std::string>> docs_b, const UnigramOptions& options = {});

  // Builds a model from raw per-word counts, pruning as train() does.
  static UnigramModel from_counts(std::string name_a, std::string name_b,
                                  const std::unordered_map<std::string, Counts>& counts,
                                  const UnigramOptions& options = {}, Counts docs = {1, 1});

  bool in_vocab(std::string_view word) const;
  // Throws std::out_of_range for a word outside the vocabulary.
  double word_prob(std::string_view word, Side side) const;
  // Sum of log P(w | side) over in-vocabulary tokens.
  double log_likelihood(std::span<const std::string> tokens, Side side) const;
  // log P(tokens | A) - log P(tokens | B), plus the prior term when enabled.
  double log_odds(std::span<const std::string> tokens) const;
  // P(A | tokens); 0.5 when no token is in the vocabulary.
  double posterior(std::span<const std::string> tokens) const;

  // Logistic of a log odds value. p(-z) = 1 - p(z) holds exactly.
  static double logistic(double z);

  UnigramModel swapped() const;

  const std::string& class_name(Side s) const { return names_[s]; }
  std::uint64_t count(std::string_view word, Side side) const;
  std::uint64_t total(Side s) const { return totals_[s]; }
  std::size_t vocab_size() const { return counts_.size(); }
  // V used in the denominator for `side`.
  std::size_t smoothing_vocab(Side side) const;
  std::vector<std::string> vocab() const;  // sorted
  const UnigramOptions& options() const { return options_; }
  Counts documents() const { return docs_; }

  nlohmann::json to_json() const;
  static UnigramModel from_json(const nlohmann::json& j);

 private:
  void finalize();

  std::array<std::string, 2> names_;
  std::unordered_map<std::string, Counts> counts_;  // pruned vocabulary only
  Counts totals_{};
  Counts nonzero_{};
  Counts docs_{};
  UnigramOptions options_;
};

// ---------------------------------------------------------------------------
// Feature catalogs

enum class Catalog { Objectivity, Polarity };

std::string_view to_string(Catalog c);

enum class FeatureKind {
  Count,       // non-negative integer
  Presence,    // 0 or 1
  Continuous,  // any real
  Posterior,   // the unigram model's class probability
};

struct FeatureSpec {
  std::string_view name;
  FeatureKind kind;
  std::string_view description;
};

std::span<const FeatureSpec> catalog(Catalog c);
std::optional<std::size_t> feature_index(Catalog c, std::string_view name);

inline constexpr std::string_view kPosteriorFeature = "unigram_posterior";

struct FeatureVector {
  Catalog catalog = Catalog::Objectivity;
  std::vector<double> values;

  // Throws std::invalid_argument for a name outside the catalog.
  double at(std::string_view name) const;
  nlohmann::json to_json() const;
};

struct TermOptions {
  bool include_hashtags = true;  // "#happy" contributes "happy"
  bool drop_stopwords = true;
};

// Lowercased Word tokens (and hashtag words) used by the unigram models.
std::vector<std::string> unigram_terms(std::span<const text::Token> tokens, const text::StopList& stopwords,
                                       const TermOptions& options = {});

/// A tweet tokenized, tagged and measured once. The stored feature vectors
/// hold 0.5 in the unigram posterior slot; models fill it in later.
struct AnalyzedTweet {
  std::string text;
  std::vector<text::TaggedToken> tagged;
  std::vector<std::string> terms;
  FeatureVector objectivity;
  FeatureVector polarity;

  bool empty() const { return tagged.empty(); }
};

AnalyzedTweet analyze(std::string_view text, const Resources& resources, const TermOptions& options = {});

// Catalog features of an analyzed tweet. With a model, the posterior slot
// holds P(class_a | terms); without one it holds 0.5.
FeatureVector extract_objsubj(const AnalyzedTweet& tweet, const Resources& resources,
                              const UnigramModel* model = nullptr);
FeatureVector extract_polarity(const AnalyzedTweet& tweet, const Resources& resources,
                               const UnigramModel* model = nullptr);

FeatureVector with_posterior(FeatureVector v, double posterior);

// ---------------------------------------------------------------------------
// Information gain and selection

enum class Binning {
  Discrete,   // every distinct value is its own bin
  BinaryCut,  // the single threshold that maximises gain
};

// Shannon entropy in bits of a label sequence.
double entropy_bits(std::span<const int> labels);

struct Cut {
  double threshold = 0.0;  // values <= threshold fall on the left
  double gain = 0.0;
};

// Best binary split of `values`, or nullopt for a constant feature.
std::optional<Cut> best_binary_cut(std::span<const double> values, std::span<const int> labels);

/// H(labels) - sum_v p(v) H(labels | bin v), never negative. Throws
/// std::invalid_argument on unequal lengths or fewer than two samples.
double information_gain(std::span<const double> values, std::span<const int> labels,
                        Binning binning = Binning::BinaryCut);

// Gain of every catalog feature over the given rows.
std::vector<double> feature_gains(std::span<const FeatureVector> rows, std::span<const int> labels,
                                  Binning binning = Binning::BinaryCut);

struct FeatureGainReport {
  Catalog catalog = Catalog::Objectivity;
  std::vector<std::vector<double>> per_fold;  // [fold][feature]

  std::size_t catalog_size() const;
  std::vector<double> mean() const;
  nlohmann::json to_json() const;
};

struct Redundancy {
  std::string feature;
  std::vector<std::string> explained_by;
  double r_squared = 0.0;
};

struct Selection {
  std::vector<std::string> ranking;  // all features by mean gain
  std::vector<std::string> selected;
  std::vector<Redundancy> redundant;

  nlohmann::json to_json() const;
};

/// Takes the k best features by mean gain (ties in catalog order). When
/// feature rows are supplied, a candidate whose values a least-squares fit
/// on the already selected features explains with R^2 >= r2_threshold is
/// dropped as redundant, so fewer than k names may come back.
/// Throws std::invalid_argument when k is 0 or exceeds the catalog size.
Selection select_top_k(const FeatureGainReport& report, std::size_t k, std::span<const FeatureVector> rows = {},
                       double r2_threshold = 0.95);

// Shipped defaults: five objectivity features and three polarity features.
std::vector<std::string> default_selection(Catalog c);

}  // namespace moodpipe::features
