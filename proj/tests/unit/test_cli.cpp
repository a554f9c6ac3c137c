#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "moodpipe/cli.hpp"
#include "moodpipe/corpus.hpp"
#include "moodpipe/synth.hpp"
#include "support.hpp"

using namespace moodpipe;
using moodpipe::testing::read_text;
using moodpipe::testing::TempDir;
using moodpipe::testing::write_text;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// A synthetic corpus, its label file and a trained model on disk.
struct Workspace {
  TempDir dir;
  std::string tweets, labels, model;

  Workspace() {
    synth::SynthOptions o;
    o.per_class = 100;
    auto c = synth::generate(o);
    std::ostringstream t, l;
    corpus::write_jsonl(t, c.tweets);
    synth::write_label_tsv(l, c, o);
    tweets = (dir / "tweets.jsonl").string();
    labels = (dir / "labels.tsv").string();
    model = (dir / "model.json").string();
    write_text(tweets, t.str());
    write_text(labels, l.str());
    auto r = run({"train", "--in", tweets, "--labels", labels, "--out", model});
    if (r.code != 0) throw std::runtime_error("training failed: " + r.err);
  }
};

Workspace& ws() {
  static Workspace w;
  return w;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"filter", "--bogus-flag"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"filter"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"evaluate", "--in", ws().tweets, "--labels", ws().labels, "--stage2", "tree"}).code,
            cli::kExitUsage);
  auto r = run({"compare", "--corpus", ws().tweets, "--model", ws().model, "--keyword", "obama,Obama"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, DataErrors) {
  EXPECT_EQ(run({"filter", "--in", "/nonexistent/tweets.jsonl"}).code, cli::kExitData);
  TempDir d;
  write_text(d / "bad.tsv", "tweet_id\tlabel_1\tlabel_2\n1\tpos\tmaybe\n");
  EXPECT_EQ(run({"merge-labels", "--labels", (d / "bad.tsv").string()}).code, cli::kExitData);
  write_text(d / "model.json", "{\"format\":\"something-else\"}");
  EXPECT_EQ(run({"classify", "--model", (d / "model.json").string(), "--text", "hi"}).code, cli::kExitData);
}

TEST(Cli, FilterFixture) {
  TempDir d;
  auto out = (d / "kept.jsonl").string();
  auto r = run({"filter", "--in", moodpipe::testing::fixture("filter_fixture.jsonl").string(), "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  auto expected = nlohmann::json::parse(read_text(moodpipe::testing::fixture("filter_expected.json")));
  auto j = r.json();
  for (auto key : {"retweets_removed", "short_removed", "non_english_removed", "duplicates_removed"}) {
    EXPECT_EQ(j[key], expected[key]) << key;
  }
  auto kept = corpus::ingest(std::filesystem::path(out)).tweets;
  std::vector<std::string> ids;
  for (const auto& t : kept) ids.push_back(t.id);
  EXPECT_EQ(nlohmann::json(ids), expected["kept"]);
}

TEST(Cli, IngestAndMergeLabels) {
  auto r = run({"ingest", "--in", ws().tweets});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["tweets"], 300);
  TempDir d;
  auto merged = (d / "merged.tsv").string();
  auto m = run({"merge-labels", "--labels", ws().labels, "--out", merged});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(m.json()["tweets"], 300);
  EXPECT_EQ(m.json()["annotators"], 3);
  EXPECT_EQ(m.json()["agreement"]["strict"].size(), 3u);
  // A merged file trains the same model as the raw annotations.
  auto model = (d / "m.json").string();
  ASSERT_EQ(run({"train", "--in", ws().tweets, "--labels", merged, "--out", model}).code, 0);
  EXPECT_EQ(read_text(model), read_text(ws().model));
}

TEST(Cli, EvaluateDeterministicAndShaped) {
  std::vector<std::string> args = {"evaluate", "--in", ws().tweets, "--labels", ws().labels, "--folds", "5"};
  auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  auto seq = args;
  seq.push_back("--sequential");
  auto b = run(seq);
  EXPECT_EQ(a.out, b.out);
  auto j = a.json();
  EXPECT_EQ(j["folds"], 5);
  EXPECT_TRUE(j.contains("final"));
  auto other_seed = args;
  other_seed.insert(other_seed.end(), {"--seed", "7"});
  EXPECT_EQ(run(other_seed).code, 0);
}

TEST(Cli, EvaluateWithGains) {
  auto r = run({"evaluate", "--in", ws().tweets, "--labels", ws().labels, "--folds", "3", "--gains"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_LE(j["objectivity_selection"]["selected"].size(), 5u);
  EXPECT_LE(j["polarity_selection"]["selected"].size(), 3u);
}

TEST(Cli, ClassifyText) {
  auto r = run({"classify", "--model", ws().model, "--text", ""});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["p_obj"], 0.5);
  auto batch = run({"classify", "--model", ws().model, "--in", ws().tweets});
  ASSERT_EQ(batch.code, 0);
  EXPECT_EQ(batch.json().size(), 300u);
}

TEST(Cli, ScoreCompareAndStats) {
  auto score = run({"score", "--corpus", ws().tweets, "--model", ws().model, "--keyword", "obama"});
  ASSERT_EQ(score.code, 0) << score.err;
  EXPECT_EQ(score.json()["keyword"], "obama");
  EXPECT_LE(std::abs(score.json()["score"].get<double>()), 100.0);

  auto cmp = run({"compare", "--corpus", ws().tweets, "--model", ws().model, "--keyword", "obama,coffee",
                  "--keyword", "weather"});
  ASSERT_EQ(cmp.code, 0) << cmp.err;
  EXPECT_EQ(cmp.json().size(), 3u);

  TempDir d;
  auto store = (d / "stats.jsonl").string();
  std::vector<std::string> tick = {"stats-tick", "--corpus", ws().tweets, "--model", ws().model,
                                   "--store",    store,      "--keyword", "obama,coffee", "--hour", "1328054400"};
  ASSERT_EQ(run(tick).code, 0);
  auto bytes = read_text(store);
  ASSERT_EQ(run(tick).code, 0);
  EXPECT_EQ(read_text(store), bytes);
  auto series = run({"stats-series", "--store", store, "--keyword", "OBAMA"});
  ASSERT_EQ(series.code, 0);
  ASSERT_EQ(series.json().size(), 1u);
  EXPECT_EQ(series.json()[0]["hour_start"], 1328054400);
  tick.back() = "1328054401";
  EXPECT_EQ(run(tick).code, cli::kExitUsage);
  EXPECT_EQ(run({"stats-series", "--store", store, "--keyword", "obama", "--from", "9", "--to", "1"}).code,
            cli::kExitUsage);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  TempDir d;
  write_text(d / "run.conf", "folds = 3\nstage2 = rules\n");
  auto conf = (d / "run.conf").string();
  auto r = run({"evaluate", "--config", conf, "--in", ws().tweets, "--labels", ws().labels});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["folds"], 3);
  auto flag = run({"evaluate", "--config", conf, "--in", ws().tweets, "--labels", ws().labels, "--folds", "4"});
  ASSERT_EQ(flag.code, 0) << flag.err;
  EXPECT_EQ(flag.json()["folds"], 4);

  ::setenv("MOODPIPE_CONFIG", conf.c_str(), 1);
  auto env = run({"evaluate", "--in", ws().tweets, "--labels", ws().labels});
  ::unsetenv("MOODPIPE_CONFIG");
  ASSERT_EQ(env.code, 0) << env.err;
  EXPECT_EQ(env.json()["folds"], 3);
}
