#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "moodpipe/classify.hpp"
#include "moodpipe/rng.hpp"

namespace moodpipe::classify {

namespace {

constexpr std::size_t kClasses = 3;

std::size_t idx(Sentiment s) { return static_cast<std::size_t>(s); }
Sentiment from_index(std::size_t i) { return static_cast<Sentiment>(static_cast<int>(i)); }

// Inputs are centred to [-1, 1] and augmented with a constant bias term.
std::array<double, 3> augment(const StageOnePoint& p) { return {2.0 * p.p_obj - 1.0, 2.0 * p.p_pos - 1.0, 1.0}; }

double dot(const std::array<double, 3>& w, const std::array<double, 3>& x) {
  return w[0] * x[0] + w[1] * x[1] + w[2] * x[2];
}

double sq_dist(const StageOnePoint& a, double x, double y) {
  double dx = a.p_obj - x;
  double dy = a.p_pos - y;
  return dx * dx + dy * dy;
}

template <typename Scores>
Sentiment argmax(const Scores& s) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kClasses; ++c) {
    if (s[c] > s[best]) best = c;
  }
  return from_index(best);
}

void validate(std::span<const StageOnePoint> points, std::span<const Sentiment> labels) {
  if (points.size() != labels.size()) throw std::invalid_argument("points and labels differ in length");
  for (auto s : kAllSentiments) {
    if (std::find(labels.begin(), labels.end(), s) == labels.end()) {
      throw std::invalid_argument("no stage-2 training points labelled " + std::string(to_string(s)));
    }
  }
  for (const auto& p : points) {
    bool ok = p.p_obj >= 0.0 && p.p_obj <= 1.0 && p.p_pos >= 0.0 && p.p_pos <= 1.0;
    if (!ok) throw std::invalid_argument("stage-2 points must lie in the unit square");
  }
  bool all_same = std::all_of(points.begin(), points.end(), [&](const StageOnePoint& p) { return p == points[0]; });
  if (all_same) throw std::invalid_argument("stage-2 training points are all identical");
}

// Pegasos subgradient descent on the hinge loss, one class against the rest.
std::array<double, 3> pegasos(std::span<const StageOnePoint> points, std::span<const Sentiment> labels,
                              Sentiment positive, const Stage2Options& o) {
  const std::size_t n = points.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(o.seed);
  std::array<double, 3> w{};
  std::size_t pos = n;
  for (int t = 1; t <= o.svm_iterations; ++t) {
    if (pos == n) {
      rng.shuffle(order);
      pos = 0;
    }
    std::size_t i = order[pos++];
    auto x = augment(points[i]);
    double y = labels[i] == positive ? 1.0 : -1.0;
    double eta = 1.0 / (o.svm_lambda * t);
    double margin = y * dot(w, x);
    for (auto& wi : w) wi *= 1.0 - eta * o.svm_lambda;
    if (margin < 1.0) {
      for (std::size_t d = 0; d < 3; ++d) w[d] += eta * y * x[d];
    }
  }
  return w;
}

}  // namespace

std::string_view to_string(Stage2Kind k) {
  switch (k) {
    case Stage2Kind::SVM: return "svm";
    case Stage2Kind::LogisticRegression: return "logreg";
    case Stage2Kind::KNN: return "knn";
    case Stage2Kind::NaiveBayes2D: return "nb";
    case Stage2Kind::KMeans: return "kmeans";
    case Stage2Kind::RuleBased: return "rules";
  }
  return "svm";
}

std::optional<Stage2Kind> parse_stage2(std::string_view s) {
  for (auto k : kAllStage2Kinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

Stage2Model Stage2Model::train(Stage2Kind kind, std::span<const StageOnePoint> points,
                               std::span<const Sentiment> labels, const Stage2Options& o) {
  validate(points, labels);
  const std::size_t n = points.size();
  Stage2Model m;
  m.kind_ = kind;

  switch (kind) {
    case Stage2Kind::SVM: {
      if (o.svm_lambda <= 0 || o.svm_iterations < 1) throw std::invalid_argument("invalid SVM options");
      for (auto c : kAllSentiments) m.weights_[idx(c)] = pegasos(points, labels, c, o);
      break;
    }

    case Stage2Kind::LogisticRegression: {
      Weights w{};
      const double lr = 1.0;
      for (int it = 0; it < o.logreg_max_iterations; ++it) {
        Weights g{};
        for (std::size_t i = 0; i < n; ++i) {
          auto x = augment(points[i]);
          std::array<double, kClasses> z{};
          for (std::size_t c = 0; c < kClasses; ++c) z[c] = dot(w[c], x);
          double zmax = *std::max_element(z.begin(), z.end());
          double sum = 0;
          for (auto& v : z) sum += (v = std::exp(v - zmax));
          for (std::size_t c = 0; c < kClasses; ++c) {
            double err = z[c] / sum - (idx(labels[i]) == c ? 1.0 : 0.0);
            for (std::size_t d = 0; d < 3; ++d) g[c][d] += err * x[d];
          }
        }
        double gmax = 0;
        for (std::size_t c = 0; c < kClasses; ++c) {
          for (std::size_t d = 0; d < 3; ++d) {
            g[c][d] /= static_cast<double>(n);
            if (d < 2) g[c][d] += o.logreg_l2 * w[c][d];
            gmax = std::max(gmax, std::abs(g[c][d]));
          }
        }
        if (gmax < o.logreg_tolerance) break;
        for (std::size_t c = 0; c < kClasses; ++c) {
          for (std::size_t d = 0; d < 3; ++d) w[c][d] -= lr * g[c][d];
        }
      }
      m.weights_ = w;
      break;
    }

    case Stage2Kind::KNN: {
      if (o.knn_k < 1) throw std::invalid_argument("knn_k must be positive");
      m.points_.assign(points.begin(), points.end());
      m.labels_.assign(labels.begin(), labels.end());
      m.k_ = o.knn_k;
      break;
    }

    case Stage2Kind::NaiveBayes2D: {
      std::array<double, kClasses> count{};
      for (std::size_t i = 0; i < n; ++i) {
        auto c = idx(labels[i]);
        count[c] += 1;
        m.mean_[c][0] += points[i].p_obj;
        m.mean_[c][1] += points[i].p_pos;
      }
      for (std::size_t c = 0; c < kClasses; ++c) {
        m.mean_[c][0] /= count[c];
        m.mean_[c][1] /= count[c];
        m.log_prior_[c] = std::log(count[c] / static_cast<double>(n));
      }
      for (std::size_t i = 0; i < n; ++i) {
        auto c = idx(labels[i]);
        double d0 = points[i].p_obj - m.mean_[c][0];
        double d1 = points[i].p_pos - m.mean_[c][1];
        m.variance_[c][0] += d0 * d0;
        m.variance_[c][1] += d1 * d1;
      }
      for (std::size_t c = 0; c < kClasses; ++c) {
        for (int d = 0; d < 2; ++d) m.variance_[c][d] = std::max(1e-6, m.variance_[c][d] / count[c]);
      }
      break;
    }

    case Stage2Kind::KMeans: {
      // k-means++ seeding.
      Rng rng(o.seed);
      std::vector<std::array<double, 2>> centroids;
      const auto& first = points[static_cast<std::size_t>(rng.below(n))];
      centroids.push_back({first.p_obj, first.p_pos});
      std::vector<double> d2(n);
      while (centroids.size() < kClasses) {
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
          double best = std::numeric_limits<double>::max();
          for (const auto& c : centroids) best = std::min(best, sq_dist(points[i], c[0], c[1]));
          d2[i] = best;
          total += best;
        }
        std::size_t chosen = 0;
        if (total > 0) {
          double r = rng.unit() * total;
          double acc = 0;
          chosen = n - 1;
          for (std::size_t i = 0; i < n; ++i) {
            acc += d2[i];
            if (r < acc && d2[i] > 0) {
              chosen = i;
              break;
            }
          }
        }
        centroids.push_back({points[chosen].p_obj, points[chosen].p_pos});
      }
      std::vector<std::size_t> assign(n, kClasses);
      for (int it = 0; it < o.kmeans_max_iterations; ++it) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
          std::size_t best = 0;
          for (std::size_t c = 1; c < centroids.size(); ++c) {
            if (sq_dist(points[i], centroids[c][0], centroids[c][1]) <
                sq_dist(points[i], centroids[best][0], centroids[best][1])) {
              best = c;
            }
          }
          changed = changed || assign[i] != best;
          assign[i] = best;
        }
        if (!changed) break;
        std::vector<std::array<double, 3>> acc(centroids.size(), {0, 0, 0});
        for (std::size_t i = 0; i < n; ++i) {
          acc[assign[i]][0] += points[i].p_obj;
          acc[assign[i]][1] += points[i].p_pos;
          acc[assign[i]][2] += 1;
        }
        for (std::size_t c = 0; c < centroids.size(); ++c) {
          if (acc[c][2] > 0) centroids[c] = {acc[c][0] / acc[c][2], acc[c][1] / acc[c][2]};
        }
      }
      // Each cluster predicts the majority label of its members; an empty
      // cluster takes the label of the training point nearest its centre.
      m.centroids_ = centroids;
      m.cluster_class_.assign(centroids.size(), Sentiment::Objective);
      for (std::size_t c = 0; c < centroids.size(); ++c) {
        std::array<std::size_t, kClasses> votes{};
        for (std::size_t i = 0; i < n; ++i) {
          if (assign[i] == c) ++votes[idx(labels[i])];
        }
        if (votes[0] + votes[1] + votes[2] == 0) {
          std::size_t nearest = 0;
          for (std::size_t i = 1; i < n; ++i) {
            if (sq_dist(points[i], centroids[c][0], centroids[c][1]) <
                sq_dist(points[nearest], centroids[c][0], centroids[c][1])) {
              nearest = i;
            }
          }
          m.cluster_class_[c] = labels[nearest];
        } else {
          m.cluster_class_[c] = argmax(votes);
        }
      }
      break;
    }

    case Stage2Kind::RuleBased: {
      if (o.rule_steps < 1) throw std::invalid_argument("rule_steps must be positive");
      const int steps = o.rule_steps;
      std::size_t best_correct = 0;
      double best_dist = std::numeric_limits<double>::max();
      for (int i = 0; i <= steps; ++i) {
        double t1 = static_cast<double>(i) / steps;
        for (int j = 0; j <= steps; ++j) {
          double t2 = static_cast<double>(j) / steps;
          std::size_t correct = 0;
          for (std::size_t k = 0; k < n; ++k) {
            Sentiment s = points[k].p_obj >= t1   ? Sentiment::Objective
                          : points[k].p_pos >= t2 ? Sentiment::Positive
                                                  : Sentiment::Negative;
            correct += s == labels[k] ? 1 : 0;
          }
          // Among equally accurate grids prefer thresholds nearest the centre.
          double dist = std::abs(t1 - 0.5) + std::abs(t2 - 0.5);
          if (correct > best_correct || (correct == best_correct && dist < best_dist)) {
            best_correct = correct;
            best_dist = dist;
            m.t_obj_ = t1;
            m.t_pos_ = t2;
          }
        }
      }
      break;
    }
  }
  return m;
}

Sentiment Stage2Model::predict(const StageOnePoint& p) const {
  switch (kind_) {
    case Stage2Kind::SVM:
    case Stage2Kind::LogisticRegression: {
      auto x = augment(p);
      std::array<double, kClasses> s{};
      for (std::size_t c = 0; c < kClasses; ++c) s[c] = dot(weights_[c], x);
      return argmax(s);
    }
    case Stage2Kind::KNN: {
      const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_), points_.size());
      std::vector<std::pair<double, std::size_t>> d;
      d.reserve(points_.size());
      for (std::size_t i = 0; i < points_.size(); ++i) d.emplace_back(sq_dist(points_[i], p.p_obj, p.p_pos), i);
      std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
      std::array<std::size_t, kClasses> votes{};
      for (std::size_t i = 0; i < k; ++i) ++votes[idx(labels_[d[i].second])];
      return argmax(votes);
    }
    case Stage2Kind::NaiveBayes2D: {
      std::array<double, kClasses> s{};
      for (std::size_t c = 0; c < kClasses; ++c) {
        s[c] = log_prior_[c];
        const double x[2] = {p.p_obj, p.p_pos};
        for (int d = 0; d < 2; ++d) {
          double diff = x[d] - mean_[c][d];
          s[c] -= 0.5 * (std::log(2.0 * std::numbers::pi * variance_[c][d]) + diff * diff / variance_[c][d]);
        }
      }
      return argmax(s);
    }
    case Stage2Kind::KMeans: {
      std::size_t best = 0;
      for (std::size_t c = 1; c < centroids_.size(); ++c) {
        if (sq_dist(p, centroids_[c][0], centroids_[c][1]) < sq_dist(p, centroids_[best][0], centroids_[best][1])) {
          best = c;
        }
      }
      return cluster_class_.at(best);
    }
    case Stage2Kind::RuleBased:
      if (p.p_obj >= t_obj_) return Sentiment::Objective;
      return p.p_pos >= t_pos_ ? Sentiment::Positive : Sentiment::Negative;
  }
  return Sentiment::Objective;
}

nlohmann::json Stage2Model::to_json() const {
  nlohmann::json j = {{"kind", to_string(kind_)}};
  switch (kind_) {
    case Stage2Kind::SVM:
    case Stage2Kind::LogisticRegression:
      j["weights"] = weights_;
      break;
    case Stage2Kind::KNN: {
      nlohmann::json pts = nlohmann::json::array();
      for (std::size_t i = 0; i < points_.size(); ++i) {
        pts.push_back({points_[i].p_obj, points_[i].p_pos, static_cast<int>(labels_[i])});
      }
      j["k"] = k_;
      j["points"] = std::move(pts);
      break;
    }
    case Stage2Kind::NaiveBayes2D:
      j["mean"] = mean_;
      j["variance"] = variance_;
      j["log_prior"] = log_prior_;
      break;
    case Stage2Kind::KMeans: {
      nlohmann::json classes = nlohmann::json::array();
      for (auto s : cluster_class_) classes.push_back(to_string(s));
      j["centroids"] = centroids_;
      j["cluster_class"] = std::move(classes);
      break;
    }
    case Stage2Kind::RuleBased:
      j["objective_threshold"] = t_obj_;
      j["positive_threshold"] = t_pos_;
      break;
  }
  return j;
}

Stage2Model Stage2Model::from_json(const nlohmann::json& j) {
  Stage2Model m;
  auto kind = parse_stage2(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown stage-2 kind");
  m.kind_ = *kind;
  switch (m.kind_) {
    case Stage2Kind::SVM:
    case Stage2Kind::LogisticRegression:
      m.weights_ = j.at("weights").get<Weights>();
      break;
    case Stage2Kind::KNN:
      m.k_ = j.at("k").get<int>();
      for (const auto& p : j.at("points")) {
        m.points_.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        int c = p.at(2).get<int>();
        if (c < 0 || c > 2) throw std::invalid_argument("bad class index in KNN model");
        m.labels_.push_back(from_index(static_cast<std::size_t>(c)));
      }
      break;
    case Stage2Kind::NaiveBayes2D:
      m.mean_ = j.at("mean").get<decltype(m.mean_)>();
      m.variance_ = j.at("variance").get<decltype(m.variance_)>();
      m.log_prior_ = j.at("log_prior").get<decltype(m.log_prior_)>();
      break;
    case Stage2Kind::KMeans:
      m.centroids_ = j.at("centroids").get<decltype(m.centroids_)>();
      for (const auto& s : j.at("cluster_class")) {
        auto c = parse_sentiment(s.get<std::string>());
        if (!c) throw std::invalid_argument("bad class in k-means model");
        m.cluster_class_.push_back(*c);
      }
      if (m.cluster_class_.size() != m.centroids_.size() || m.centroids_.empty()) {
        throw std::invalid_argument("k-means model has mismatched clusters");
      }
      break;
    case Stage2Kind::RuleBased:
      m.t_obj_ = j.at("objective_threshold").get<double>();
      m.t_pos_ = j.at("positive_threshold").get<double>();
      break;
  }
  return m;
}

}  // namespace moodpipe::classify
