#include "moodpipe/cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "moodpipe/classify.hpp"
#include "moodpipe/corpus.hpp"
#include "moodpipe/error.hpp"
#include "moodpipe/evaluation.hpp"
#include "moodpipe/labeling.hpp"
#include "moodpipe/resources.hpp"
#include "moodpipe/scoring.hpp"
#include "moodpipe/server.hpp"

namespace moodpipe::cli {

namespace {

using classify::Sentiment;
namespace fs = std::filesystem;

// Usage mistakes detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string in, out, labels, corpus, model, store, data_dir;
  std::uint64_t seed = 42;
  std::size_t folds = 10;
  int inner_folds = 5;
  std::string stage2 = "svm";
  std::vector<std::string> keywords;
  std::string text;
  bool has_text = false;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<corpus::Timestamp> now, hour, from, to;
  double smoothing_x = 1.0;
  int min_count = 5;
  bool per_class_vocab = false;
  bool empirical_priors = false;
  std::vector<std::string> obj_features, pol_features;
  bool gains = false;
  bool sequential = false;
  int min_length = 20;
  double english_threshold = 0.15;
  double similarity = 0.90;
  bool all_languages = false;
  double velocity_ref = 200.0;
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << data;
  if (!out.flush()) throw DataError("cannot write " + path.string());
}

// JSON results go to --out when given, otherwise to stdout.
void emit(const Settings& s, std::ostream& out, const nlohmann::json& j) {
  auto text = j.dump(2) + "\n";
  if (s.out.empty()) {
    out << text;
  } else {
    write_file(s.out, text);
  }
}

std::shared_ptr<const Resources> load_resources(const Settings& s) {
  return Resources::load(s.data_dir.empty() ? default_data_dir() : fs::path(s.data_dir));
}

std::vector<corpus::Tweet> load_tweets(const std::string& path, std::ostream& err) {
  auto r = corpus::ingest(path);
  if (r.missing_text + r.malformed + r.duplicate_ids > 0) {
    err << path << ": skipped " << r.missing_text << " without text, " << r.malformed << " malformed, "
        << r.duplicate_ids << " duplicate ids\n";
  }
  return std::move(r.tweets);
}

// Accepts either an annotator TSV (merged on the fly) or a merged TSV.
std::vector<labeling::MergedRow> load_labels(const std::string& path) {
  auto content = read_file(path);
  std::istringstream header_in(content);
  std::string header;
  std::getline(header_in, header);
  std::istringstream in(content);
  if (header.find("\toutcome") != std::string::npos) return labeling::read_merged_tsv(in);
  auto sets = labeling::read_label_tsv(in);
  return labeling::merge_all(sets);
}

struct TrainingSet {
  std::vector<features::AnalyzedTweet> tweets;
  std::vector<Sentiment> labels;
};

TrainingSet training_set(const Settings& s, const Resources& resources, const features::TermOptions& terms,
                         std::ostream& err) {
  require(s.in, "--in");
  require(s.labels, "--labels");
  auto tweets = load_tweets(s.in, err);
  std::map<std::string, Sentiment> by_id;
  std::size_t untrainable = 0;
  for (const auto& row : load_labels(s.labels)) {
    if (auto c = classify::from_merged(row.outcome)) {
      by_id[row.tweet_id] = *c;
    } else {
      ++untrainable;
    }
  }
  TrainingSet set;
  std::size_t unlabeled = 0;
  for (const auto& t : tweets) {
    auto it = by_id.find(t.id);
    if (it == by_id.end()) {
      ++unlabeled;
      continue;
    }
    set.tweets.push_back(features::analyze(t.text, resources, terms));
    set.labels.push_back(it->second);
  }
  err << "training tweets: " << set.tweets.size() << " (" << unlabeled << " without a usable label, " << untrainable
      << " labels outside the three classes)\n";
  if (set.tweets.empty()) throw DataError("no labelled tweets to train on");
  return set;
}

classify::PipelineSpec pipeline_spec(const Settings& s) {
  classify::PipelineSpec spec;
  auto kind = classify::parse_stage2(s.stage2);
  if (!kind) throw UsageError("unknown stage-2 classifier '" + s.stage2 + "'");
  spec.stage2 = *kind;
  spec.seed = s.seed;
  spec.stage2_options.seed = s.seed;
  spec.inner_folds = s.inner_folds;
  spec.stage1.unigram.smoothing_x = s.smoothing_x;
  spec.stage1.unigram.min_count = s.min_count;
  spec.stage1.unigram.per_class_vocab = s.per_class_vocab;
  spec.stage1.unigram.empirical_priors = s.empirical_priors;
  spec.stage1.empirical_priors = s.empirical_priors;
  if (!s.obj_features.empty()) spec.stage1.objectivity_features = s.obj_features;
  if (!s.pol_features.empty()) spec.stage1.polarity_features = s.pol_features;
  return spec;
}

std::shared_ptr<const classify::Pipeline> load_model(const Settings& s) {
  require(s.model, "--model");
  auto doc = nlohmann::json::parse(read_file(s.model));
  return std::make_shared<const classify::Pipeline>(classify::Pipeline::from_json(doc));
}

std::shared_ptr<const scoring::Scorer> make_scorer(const Settings& s, std::ostream& err) {
  require(s.corpus, "--corpus");
  auto resources = load_resources(s);
  auto model = load_model(s);
  auto corp = std::make_shared<const corpus::Corpus>(load_tweets(s.corpus, err));
  scoring::ScoreConfig config;
  config.velocity_ref = s.velocity_ref;
  return std::make_shared<const scoring::Scorer>(corp, model, resources, config);
}

// Argument checks inside the library throw std::invalid_argument; for flag
// values and keywords that is a usage error rather than bad data.
template <typename F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split_keywords(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    std::string k;
    while (std::getline(ss, k, ',')) {
      auto b = k.find_first_not_of(" \t");
      auto e = k.find_last_not_of(" \t");
      out.push_back(b == std::string::npos ? std::string() : k.substr(b, e - b + 1));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_ingest(const Settings& s, std::ostream& out, std::ostream& err) {
  require(s.in, "--in");
  auto r = corpus::ingest(s.in);
  if (!s.out.empty()) {
    std::ostringstream ss;
    corpus::write_jsonl(ss, r.tweets);
    write_file(s.out, ss.str());
  }
  err << "ingested " << r.tweets.size() << " tweets from " << s.in << "\n";
  out << nlohmann::json{{"tweets", r.tweets.size()},
                        {"missing_text", r.missing_text},
                        {"malformed", r.malformed},
                        {"duplicate_ids", r.duplicate_ids},
                        {"warnings", r.warnings}}
                .dump(2)
      << "\n";
}

void cmd_filter(const Settings& s, std::ostream& out, std::ostream& err) {
  require(s.in, "--in");
  auto resources = load_resources(s);
  auto tweets = load_tweets(s.in, err);
  std::size_t account_removed = 0;
  if (!s.all_languages) {
    auto english = corpus::keep_english_accounts(tweets);
    account_removed = tweets.size() - english.size();
    tweets = std::move(english);
  }
  corpus::FilterConfig config;
  config.min_length_chars = s.min_length;
  config.english_words = resources->english;
  config.english_match_threshold = s.english_threshold;
  config.similarity_threshold = s.similarity;
  as_usage([&] { config.validate(); });
  auto result = corpus::filter_pipeline(tweets, config, resources->tokenizer);
  if (!s.out.empty()) {
    std::ostringstream ss;
    corpus::write_jsonl(ss, result.kept);
    write_file(s.out, ss.str());
  }
  auto j = corpus::to_json(result.report);
  j["non_english_accounts_removed"] = account_removed;
  err << "kept " << result.report.kept << " of " << result.report.input << " tweets\n";
  out << j.dump(2) << "\n";
}

void cmd_merge_labels(const Settings& s, std::ostream& out, std::ostream& err) {
  require(s.labels, "--labels");
  auto sets = labeling::read_label_tsv(s.labels);
  auto merged = labeling::merge_all(sets);
  if (!s.out.empty()) {
    std::ostringstream ss;
    labeling::write_merged_tsv(ss, merged);
    write_file(s.out, ss.str());
  }
  std::vector<labeling::MergedLabel> outcomes;
  for (const auto& m : merged) outcomes.push_back(m.outcome);
  auto counts = labeling::class_counts(outcomes);
  nlohmann::json j = {{"annotators", sets.empty() ? 0 : sets.front().labels.size()},
                      {"tweets", sets.size()},
                      {"class_counts", labeling::to_json(counts)}};
  if (!sets.empty()) {
    j["agreement"] = {{"strict", labeling::agreement_matrix(sets, labeling::AgreementMode::Strict)},
                      {"lenient", labeling::agreement_matrix(sets, labeling::AgreementMode::Lenient)}};
  }
  err << "merged " << sets.size() << " label rows; " << counts.training_total() << " usable for training\n";
  out << j.dump(2) << "\n";
}

void cmd_train(const Settings& s, std::ostream& out, std::ostream& err) {
  require(s.out, "--out");
  auto resources = load_resources(s);
  auto spec = pipeline_spec(s);
  auto set = training_set(s, *resources, spec.terms, err);
  auto pipeline = classify::Pipeline::train(std::span<const features::AnalyzedTweet>(set.tweets), set.labels, spec);
  write_file(s.out, pipeline.to_json().dump() + "\n");
  std::array<std::size_t, 3> per_class{};
  for (auto l : set.labels) ++per_class[static_cast<std::size_t>(l)];
  out << nlohmann::json{{"model", s.out},
                        {"trained", set.labels.size()},
                        {"objective", per_class[0]},
                        {"positive", per_class[1]},
                        {"negative", per_class[2]},
                        {"spec", spec.to_json()}}
                .dump(2)
      << "\n";
}

void cmd_evaluate(const Settings& s, std::ostream& out, std::ostream& err) {
  auto resources = load_resources(s);
  auto spec = pipeline_spec(s);
  auto set = training_set(s, *resources, spec.terms, err);
  classify::EvalOptions options;
  options.folds = s.folds;
  options.gains = s.gains;
  options.parallel = !s.sequential;
  auto report = classify::kfold_cv(set.tweets, set.labels, spec, options);
  auto j = report.to_json();
  if (report.objectivity_gains) {
    // Redundancy is judged on every tweet, with posteriors from stage-1
    // models fitted on all of them.
    auto stage1 = classify::Stage1Model::train(std::span<const features::AnalyzedTweet>(set.tweets), set.labels,
                                               spec.stage1);
    std::vector<features::FeatureVector> obj_rows, pol_rows;
    for (std::size_t i = 0; i < set.tweets.size(); ++i) {
      const auto& t = set.tweets[i];
      obj_rows.push_back(features::with_posterior(t.objectivity, stage1.objectivity_unigram().posterior(t.terms)));
      if (set.labels[i] != Sentiment::Objective) {
        pol_rows.push_back(features::with_posterior(t.polarity, stage1.polarity_unigram().posterior(t.terms)));
      }
    }
    j["objectivity_selection"] = features::select_top_k(*report.objectivity_gains, 5, obj_rows).to_json();
    j["polarity_selection"] = features::select_top_k(*report.polarity_gains, 3, pol_rows).to_json();
  }
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  err << "macro F-measure " << report.final_.average.f_measure << " over " << report.folds << " folds\n";
  emit(s, out, j);
}

nlohmann::json point_json(const classify::Pipeline& p, const features::AnalyzedTweet& a) {
  auto point = p.point(a);
  return {{"class", classify::to_string(p.stage2().predict(point))}, {"p_obj", point.p_obj}, {"p_pos", point.p_pos}};
}

void cmd_classify(const Settings& s, std::ostream& out, std::ostream& err) {
  auto resources = load_resources(s);
  auto model = load_model(s);
  if (s.has_text) {
    emit(s, out, point_json(*model, features::analyze(s.text, *resources, model->terms())));
    return;
  }
  require(s.in, "--in or --text");
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& t : load_tweets(s.in, err)) {
    auto j = point_json(*model, features::analyze(t.text, *resources, model->terms()));
    j["id"] = t.id;
    rows.push_back(std::move(j));
  }
  emit(s, out, rows);
}

void cmd_score(const Settings& s, std::ostream& out, std::ostream& err) {
  auto keywords = split_keywords(s.keywords);
  if (keywords.size() != 1) throw UsageError("score takes exactly one --keyword");
  auto scorer = make_scorer(s, err);
  auto now = s.now.value_or(scorer->corpus().newest());
  emit(s, out, as_usage([&] { return scorer->score(keywords.front(), now); }).to_json());
}

void cmd_compare(const Settings& s, std::ostream& out, std::ostream& err) {
  auto keywords = split_keywords(s.keywords);
  auto scorer = make_scorer(s, err);
  auto now = s.now.value_or(scorer->corpus().newest());
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : as_usage([&] { return scorer->compare(keywords, now); })) rows.push_back(r.to_json());
  emit(s, out, rows);
}

void cmd_stats_tick(const Settings& s, std::ostream& out, std::ostream& err) {
  require(s.store, "--store");
  auto keywords = split_keywords(s.keywords);
  if (keywords.empty()) throw UsageError("stats-tick needs at least one --keyword");
  auto scorer = make_scorer(s, err);
  auto hour = s.hour.value_or(scorer->corpus().newest() / scoring::kHour * scoring::kHour);
  auto stats = as_usage([&] { return scorer->tick(keywords, hour, scoring::StatsStore(s.store)); });
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& st : stats) rows.push_back(scoring::to_json(st));
  err << "recorded " << stats.size() << " keyword(s) for hour " << hour << "\n";
  emit(s, out, rows);
}

void cmd_stats_series(const Settings& s, std::ostream& out, std::ostream&) {
  require(s.store, "--store");
  auto keywords = split_keywords(s.keywords);
  if (keywords.size() != 1) throw UsageError("stats-series takes exactly one --keyword");
  scoring::StatsStore store(s.store);
  auto from = s.from.value_or(std::numeric_limits<corpus::Timestamp>::min());
  auto to = s.to.value_or(std::numeric_limits<corpus::Timestamp>::max());
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& st : as_usage([&] { return store.series(keywords.front(), from, to); })) {
    rows.push_back(scoring::to_json(st));
  }
  emit(s, out, rows);
}

server::HttpServer* g_server = nullptr;

void cmd_serve(const Settings& s, std::ostream&, std::ostream& err) {
  auto scorer = make_scorer(s, err);
  std::optional<scoring::StatsStore> store;
  if (!s.store.empty()) store.emplace(s.store);
  auto api = std::make_shared<const server::Api>(scorer, store, s.now);
  server::HttpServer http(api);
  int port = http.bind({s.host, s.port});
  err << "serving " << scorer->corpus().size() << " tweets on http://" << s.host << ":" << port << "\n";
  g_server = &http;
  auto on_signal = [](int) {
    if (g_server) g_server->stop();
  };
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  http.listen();
  g_server = nullptr;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Two-stage tweet sentiment pipeline and keyword scoring", "moodpipe"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value settings file; flags override it")->envname("MOODPIPE_CONFIG");

  app.add_option("--in", s.in, "input tweets (JSON lines)");
  app.add_option("--out", s.out, "output file");
  app.add_option("--labels", s.labels, "annotator or merged label TSV");
  app.add_option("--corpus", s.corpus, "searchable tweet corpus (JSON lines)");
  app.add_option("--model", s.model, "trained pipeline JSON");
  app.add_option("--store", s.store, "hourly stats store (JSON lines)");
  app.add_option("--data-dir", s.data_dir, "word lists and lexicons");
  app.add_option("--seed", s.seed, "random seed")->capture_default_str();
  app.add_option("--folds", s.folds, "cross-validation folds")->capture_default_str()->check(CLI::Range(2, 1000000));
  app.add_option("--inner-folds", s.inner_folds, "folds used to produce stage-2 training points")
      ->capture_default_str();
  app.add_option("--stage2", s.stage2, "stage-2 classifier")
      ->capture_default_str()
      ->check(CLI::IsMember({"svm", "logreg", "knn", "nb", "kmeans", "rules"}));
  app.add_option("--keyword", s.keywords, "keyword; repeat or separate with commas");
  app.add_option("--text", s.text, "text to classify");
  app.add_option("--host", s.host, "address to bind")->capture_default_str();
  app.add_option("--port", s.port, "port to serve on")->capture_default_str()->check(CLI::Range(0, 65535));
  app.add_option("--now", s.now, "reference time in epoch seconds (default: newest corpus tweet)");
  app.add_option("--hour", s.hour, "hour start in epoch seconds for stats-tick");
  app.add_option("--from", s.from, "series start, epoch seconds (inclusive)");
  app.add_option("--to", s.to, "series end, epoch seconds (exclusive)");
  app.add_option("--smoothing-x", s.smoothing_x, "additive smoothing constant")->capture_default_str();
  app.add_option("--min-count", s.min_count, "vocabulary pruning threshold")->capture_default_str();
  app.add_flag("--per-class-vocab", s.per_class_vocab, "smooth with each class's own vocabulary size");
  app.add_flag("--empirical-priors", s.empirical_priors, "use training class frequencies as priors");
  app.add_option("--obj-features", s.obj_features, "objectivity features for stage 1")->delimiter(',');
  app.add_option("--pol-features", s.pol_features, "polarity features for stage 1")->delimiter(',');
  app.add_flag("--gains", s.gains, "report per-fold information gain of every feature");
  app.add_flag("--sequential", s.sequential, "run cross-validation folds one at a time");
  app.add_option("--min-length", s.min_length, "shortest tweet kept, in characters")->capture_default_str();
  app.add_option("--english-threshold", s.english_threshold, "least share of English words")->capture_default_str();
  app.add_option("--similarity", s.similarity, "near-duplicate Jaccard threshold")->capture_default_str();
  app.add_flag("--all-languages", s.all_languages, "skip the English account check");
  app.add_option("--velocity-ref", s.velocity_ref, "tweets per hour for full score intensity")
      ->capture_default_str();

  using Command = void (*)(const Settings&, std::ostream&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"ingest", "parse a JSON-lines corpus", cmd_ingest},
      {"filter", "apply the acquisition filters", cmd_filter},
      {"merge-labels", "majority-vote annotator labels", cmd_merge_labels},
      {"train", "train the two-stage pipeline", cmd_train},
      {"evaluate", "k-fold cross-validation", cmd_evaluate},
      {"classify", "classify text or a corpus", cmd_classify},
      {"score", "popularity score of a keyword", cmd_score},
      {"compare", "rank two or three keywords", cmd_compare},
      {"stats-tick", "record hourly scores", cmd_stats_tick},
      {"stats-series", "read recorded hourly scores", cmd_stats_series},
      {"serve", "HTTP API", cmd_serve},
  };
  std::map<const CLI::App*, Command> handlers;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    handlers[sub] = fn;
  }

  std::vector<const char*> argv{"moodpipe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  s.has_text = app.count("--text") > 0;

  try {
    for (auto* sub : app.get_subcommands()) handlers.at(sub)(s, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad JSON: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace moodpipe::cli
