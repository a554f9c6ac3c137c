#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "moodpipe/classify.hpp"

namespace moodpipe::classify {

using features::Catalog;
using features::FeatureKind;
using features::FeatureVector;

namespace {

std::size_t count_bin(double value, int cap) {
  if (!(value > 0)) return 0;
  auto v = static_cast<long long>(std::floor(value));
  return v > cap ? static_cast<std::size_t>(cap) + 1 : static_cast<std::size_t>(v);
}

double gaussian_log_pdf(double x, double mean, double variance) {
  double d = x - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * variance) + d * d / variance);
}

std::string_view kind_name(FeatureKind k) {
  switch (k) {
    case FeatureKind::Count: return "count";
    case FeatureKind::Presence: return "presence";
    case FeatureKind::Continuous: return "continuous";
    case FeatureKind::Posterior: return "posterior";
  }
  return "count";
}

FeatureKind parse_kind(std::string_view s) {
  if (s == "presence") return FeatureKind::Presence;
  if (s == "continuous") return FeatureKind::Continuous;
  if (s == "posterior") return FeatureKind::Posterior;
  if (s == "count") return FeatureKind::Count;
  throw std::invalid_argument("unknown feature kind '" + std::string(s) + "'");
}

Catalog parse_catalog(std::string_view s) {
  if (s == "objectivity") return Catalog::Objectivity;
  if (s == "polarity") return Catalog::Polarity;
  throw std::invalid_argument("unknown catalog '" + std::string(s) + "'");
}

}  // namespace

FeatureNaiveBayes FeatureNaiveBayes::train(Catalog catalog, const std::vector<std::string>& selected,
                                           std::span<const FeatureVector> rows, std::span<const std::uint8_t> is_a,
                                           const Stage1Options& options) {
  if (rows.size() != is_a.size()) throw std::invalid_argument("feature rows and labels differ in length");
  if (options.count_cap < 0) throw std::invalid_argument("count_cap must be non-negative");
  std::array<std::size_t, 2> n{};
  for (auto a : is_a) ++n[a ? 0 : 1];
  if (n[0] == 0 || n[1] == 0) throw std::invalid_argument("Naive Bayes needs rows of both classes");

  FeatureNaiveBayes nb;
  nb.catalog_ = catalog;
  nb.selected_ = selected;
  nb.count_cap_ = options.count_cap;
  if (options.empirical_priors) {
    nb.prior_log_odds_ = std::log(static_cast<double>(n[0])) - std::log(static_cast<double>(n[1]));
  }
  auto specs = features::catalog(catalog);
  for (const auto& name : selected) {
    auto idx = features::feature_index(catalog, name);
    if (!idx) {
      throw std::invalid_argument("no feature '" + name + "' in the " + std::string(features::to_string(catalog)) +
                                  " catalog");
    }
    Term t;
    t.index = *idx;
    t.kind = specs[*idx].kind;
    switch (t.kind) {
      case FeatureKind::Posterior:
        nb.uses_unigram_ = true;
        continue;
      case FeatureKind::Count:
      case FeatureKind::Presence: {
        std::size_t bins = t.kind == FeatureKind::Count ? static_cast<std::size_t>(options.count_cap) + 2 : 2;
        std::array<std::vector<double>, 2> counts{std::vector<double>(bins, 0.0), std::vector<double>(bins, 0.0)};
        for (std::size_t i = 0; i < rows.size(); ++i) {
          double v = rows[i].values.at(t.index);
          std::size_t b = t.kind == FeatureKind::Count ? count_bin(v, options.count_cap) : (v != 0 ? 1 : 0);
          counts[is_a[i] ? 0 : 1][b] += 1;
        }
        for (int c = 0; c < 2; ++c) {
          double den = static_cast<double>(n[c]) + options.laplace * static_cast<double>(bins);
          t.log_bins[c].resize(bins);
          for (std::size_t b = 0; b < bins; ++b) t.log_bins[c][b] = std::log((counts[c][b] + options.laplace) / den);
        }
        break;
      }
      case FeatureKind::Continuous: {
        std::array<double, 2> sum{}, sq{};
        for (std::size_t i = 0; i < rows.size(); ++i) sum[is_a[i] ? 0 : 1] += rows[i].values.at(t.index);
        for (int c = 0; c < 2; ++c) t.mean[c] = sum[c] / static_cast<double>(n[c]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          int c = is_a[i] ? 0 : 1;
          double d = rows[i].values.at(t.index) - t.mean[c];
          sq[c] += d * d;
        }
        for (int c = 0; c < 2; ++c) t.variance[c] = std::max(options.min_variance, sq[c] / static_cast<double>(n[c]));
        break;
      }
    }
    nb.terms_.push_back(std::move(t));
  }
  return nb;
}

double FeatureNaiveBayes::log_odds(const FeatureVector& v, double unigram_log_odds) const {
  double z = prior_log_odds_;
  if (uses_unigram_) z += unigram_log_odds;
  for (const auto& t : terms_) {
    double x = v.values.at(t.index);
    switch (t.kind) {
      case FeatureKind::Count: {
        auto b = count_bin(x, count_cap_);
        z += t.log_bins[0][b] - t.log_bins[1][b];
        break;
      }
      case FeatureKind::Presence: {
        std::size_t b = x != 0 ? 1 : 0;
        z += t.log_bins[0][b] - t.log_bins[1][b];
        break;
      }
      case FeatureKind::Continuous:
        z += gaussian_log_pdf(x, t.mean[0], t.variance[0]) - gaussian_log_pdf(x, t.mean[1], t.variance[1]);
        break;
      case FeatureKind::Posterior:
        break;
    }
  }
  return z;
}

nlohmann::json FeatureNaiveBayes::to_json() const {
  auto specs = features::catalog(catalog_);
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) {
    nlohmann::json j = {{"feature", specs[t.index].name}, {"kind", kind_name(t.kind)}};
    if (t.kind == FeatureKind::Continuous) {
      j["mean"] = t.mean;
      j["variance"] = t.variance;
    } else {
      j["log_prob_a"] = t.log_bins[0];
      j["log_prob_b"] = t.log_bins[1];
    }
    terms.push_back(std::move(j));
  }
  return {{"catalog", features::to_string(catalog_)},
          {"selected", selected_},
          {"count_cap", count_cap_},
          {"prior_log_odds", prior_log_odds_},
          {"terms", std::move(terms)}};
}

FeatureNaiveBayes FeatureNaiveBayes::from_json(const nlohmann::json& j) {
  FeatureNaiveBayes nb;
  nb.catalog_ = parse_catalog(j.at("catalog").get<std::string>());
  nb.selected_ = j.at("selected").get<std::vector<std::string>>();
  nb.count_cap_ = j.at("count_cap").get<int>();
  nb.prior_log_odds_ = j.at("prior_log_odds").get<double>();
  for (const auto& name : nb.selected_) {
    auto idx = features::feature_index(nb.catalog_, name);
    if (!idx) throw std::invalid_argument("no feature '" + name + "' in catalog");
    if (features::catalog(nb.catalog_)[*idx].kind == FeatureKind::Posterior) nb.uses_unigram_ = true;
  }
  for (const auto& jt : j.at("terms")) {
    Term t;
    auto idx = features::feature_index(nb.catalog_, jt.at("feature").get<std::string>());
    if (!idx) throw std::invalid_argument("unknown feature in Naive Bayes term");
    t.index = *idx;
    t.kind = parse_kind(jt.at("kind").get<std::string>());
    if (t.kind == FeatureKind::Continuous) {
      t.mean = jt.at("mean").get<std::array<double, 2>>();
      t.variance = jt.at("variance").get<std::array<double, 2>>();
    } else {
      t.log_bins[0] = jt.at("log_prob_a").get<std::vector<double>>();
      t.log_bins[1] = jt.at("log_prob_b").get<std::vector<double>>();
    }
    nb.terms_.push_back(std::move(t));
  }
  return nb;
}

Stage1Model Stage1Model::train(std::span<const features::AnalyzedTweet* const> tweets,
                               std::span<const Sentiment> labels, const Stage1Options& options) {
  if (tweets.size() != labels.size()) throw std::invalid_argument("tweets and labels differ in length");
  for (auto s : kAllSentiments) {
    if (std::find(labels.begin(), labels.end(), s) == labels.end()) {
      throw std::invalid_argument("no training tweets labelled " + std::string(to_string(s)));
    }
  }

  std::vector<std::vector<std::string>> obj_docs, subj_docs, pos_docs, neg_docs;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    const auto& terms = tweets[i]->terms;
    switch (labels[i]) {
      case Sentiment::Objective: obj_docs.push_back(terms); break;
      case Sentiment::Positive:
        subj_docs.push_back(terms);
        pos_docs.push_back(terms);
        break;
      case Sentiment::Negative:
        subj_docs.push_back(terms);
        neg_docs.push_back(terms);
        break;
    }
  }

  Stage1Model m;
  m.obj_unigram_ = features::UnigramModel::train("objective", "subjective", obj_docs, subj_docs, options.unigram);
  m.pol_unigram_ = features::UnigramModel::train("positive", "negative", pos_docs, neg_docs, options.unigram);

  std::vector<FeatureVector> obj_rows, pol_rows;
  std::vector<std::uint8_t> obj_is_a, pol_is_a;
  obj_rows.reserve(tweets.size());
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    obj_rows.push_back(tweets[i]->objectivity);
    obj_is_a.push_back(labels[i] == Sentiment::Objective);
    if (labels[i] != Sentiment::Objective) {
      pol_rows.push_back(tweets[i]->polarity);
      pol_is_a.push_back(labels[i] == Sentiment::Positive);
    }
  }
  m.obj_nb_ = FeatureNaiveBayes::train(Catalog::Objectivity, options.objectivity_features, obj_rows, obj_is_a, options);
  m.pol_nb_ = FeatureNaiveBayes::train(Catalog::Polarity, options.polarity_features, pol_rows, pol_is_a, options);
  return m;
}

Stage1Model Stage1Model::train(std::span<const features::AnalyzedTweet> tweets, std::span<const Sentiment> labels,
                               const Stage1Options& options) {
  std::vector<const features::AnalyzedTweet*> refs;
  refs.reserve(tweets.size());
  for (const auto& t : tweets) refs.push_back(&t);
  return train(refs, labels, options);
}

StageOnePoint Stage1Model::apply(const features::AnalyzedTweet& tweet) const {
  if (tweet.empty()) return {};
  StageOnePoint p;
  double z_obj = obj_nb_.log_odds(tweet.objectivity, obj_unigram_.log_odds(tweet.terms));
  double z_pos = pol_nb_.log_odds(tweet.polarity, pol_unigram_.log_odds(tweet.terms));
  p.p_obj = features::UnigramModel::logistic(z_obj);
  p.p_pos = features::UnigramModel::logistic(z_pos);
  return p;
}

nlohmann::json Stage1Model::to_json() const {
  return {{"objectivity", {{"unigram", obj_unigram_.to_json()}, {"naive_bayes", obj_nb_.to_json()}}},
          {"polarity", {{"unigram", pol_unigram_.to_json()}, {"naive_bayes", pol_nb_.to_json()}}}};
}

Stage1Model Stage1Model::from_json(const nlohmann::json& j) {
  Stage1Model m;
  m.obj_unigram_ = features::UnigramModel::from_json(j.at("objectivity").at("unigram"));
  m.obj_nb_ = FeatureNaiveBayes::from_json(j.at("objectivity").at("naive_bayes"));
  m.pol_unigram_ = features::UnigramModel::from_json(j.at("polarity").at("unigram"));
  m.pol_nb_ = FeatureNaiveBayes::from_json(j.at("polarity").at("naive_bayes"));
  return m;
}

}  // namespace moodpipe::classify
