#include <algorithm>
#include <stdexcept>

#include "moodpipe/classify.hpp"
#include "moodpipe/evaluation.hpp"

namespace moodpipe::classify {

namespace {

nlohmann::json unigram_options_json(const features::UnigramOptions& o) {
  return {{"min_count", o.min_count},
          {"smoothing_x", o.smoothing_x},
          {"per_class_vocab", o.per_class_vocab},
          {"empirical_priors", o.empirical_priors}};
}

nlohmann::json terms_json(const features::TermOptions& t) {
  return {{"include_hashtags", t.include_hashtags}, {"drop_stopwords", t.drop_stopwords}};
}

features::TermOptions terms_from_json(const nlohmann::json& j) {
  features::TermOptions t;
  t.include_hashtags = j.at("include_hashtags").get<bool>();
  t.drop_stopwords = j.at("drop_stopwords").get<bool>();
  return t;
}

}  // namespace

nlohmann::json PipelineSpec::to_json() const {
  return {{"stage2", classify::to_string(stage2)},
          {"stage1",
           {{"unigram", unigram_options_json(stage1.unigram)},
            {"objectivity_features", stage1.objectivity_features},
            {"polarity_features", stage1.polarity_features},
            {"count_cap", stage1.count_cap},
            {"laplace", stage1.laplace},
            {"min_variance", stage1.min_variance},
            {"empirical_priors", stage1.empirical_priors}}},
          {"stage2_options",
           {{"seed", stage2_options.seed},
            {"svm_lambda", stage2_options.svm_lambda},
            {"svm_iterations", stage2_options.svm_iterations},
            {"logreg_l2", stage2_options.logreg_l2},
            {"logreg_tolerance", stage2_options.logreg_tolerance},
            {"logreg_max_iterations", stage2_options.logreg_max_iterations},
            {"knn_k", stage2_options.knn_k},
            {"kmeans_max_iterations", stage2_options.kmeans_max_iterations},
            {"rule_steps", stage2_options.rule_steps}}},
          {"terms", terms_json(terms)},
          {"inner_folds", inner_folds},
          {"seed", seed}};
}

Pipeline Pipeline::train(std::span<const features::AnalyzedTweet* const> tweets, std::span<const Sentiment> labels,
                         const PipelineSpec& spec) {
  Pipeline p;
  p.terms_ = spec.terms;
  p.stage1_ = Stage1Model::train(tweets, labels, spec.stage1);

  // Stage-1 points for stage-2 training. Points of tweets the stage-1
  // models were fitted on sit too close to the corners, so each point comes
  // from models trained on the other inner folds.
  std::array<std::size_t, 3> per_class{};
  for (auto s : labels) ++per_class[static_cast<std::size_t>(s)];
  std::size_t smallest = *std::min_element(per_class.begin(), per_class.end());
  std::size_t inner = std::min(static_cast<std::size_t>(std::max(spec.inner_folds, 0)), smallest);

  std::vector<StageOnePoint> points(tweets.size());
  if (inner < 2) {
    for (std::size_t i = 0; i < tweets.size(); ++i) points[i] = p.stage1_.apply(*tweets[i]);
  } else {
    auto plan = stratified_folds(labels, inner, spec.seed);
    std::vector<std::uint8_t> held(tweets.size());
    for (const auto& fold : plan.folds) {
      std::fill(held.begin(), held.end(), 0);
      for (auto i : fold) held[i] = 1;
      std::vector<const features::AnalyzedTweet*> train_tweets;
      std::vector<Sentiment> train_labels;
      for (std::size_t i = 0; i < tweets.size(); ++i) {
        if (held[i]) continue;
        train_tweets.push_back(tweets[i]);
        train_labels.push_back(labels[i]);
      }
      auto model = Stage1Model::train(train_tweets, train_labels, spec.stage1);
      for (auto i : fold) points[i] = model.apply(*tweets[i]);
    }
  }
  p.stage2_ = Stage2Model::train(spec.stage2, points, labels, spec.stage2_options);
  return p;
}

Pipeline Pipeline::train(std::span<const features::AnalyzedTweet> tweets, std::span<const Sentiment> labels,
                         const PipelineSpec& spec) {
  std::vector<const features::AnalyzedTweet*> refs;
  refs.reserve(tweets.size());
  for (const auto& t : tweets) refs.push_back(&t);
  return train(refs, labels, spec);
}

Sentiment Pipeline::classify(std::string_view text, const Resources& resources) const {
  return classify(features::analyze(text, resources, terms_));
}

nlohmann::json Pipeline::to_json() const {
  return {{"format", "moodpipe-pipeline"},
          {"version", 1},
          {"terms", terms_json(terms_)},
          {"stage1", stage1_.to_json()},
          {"stage2", stage2_.to_json()}};
}

Pipeline Pipeline::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "moodpipe-pipeline") throw std::invalid_argument("not a pipeline document");
  if (j.value("version", 0) != 1) throw std::invalid_argument("unsupported pipeline version");
  Pipeline p;
  p.terms_ = terms_from_json(j.at("terms"));
  p.stage1_ = Stage1Model::from_json(j.at("stage1"));
  p.stage2_ = Stage2Model::from_json(j.at("stage2"));
  return p;
}

}  // namespace moodpipe::classify
