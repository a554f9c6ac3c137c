// Writes a synthetic labelled corpus: tweets as JSON lines plus an
// annotator label TSV.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "moodpipe/corpus.hpp"
#include "moodpipe/synth.hpp"

int main(int argc, char** argv) {
  moodpipe::synth::SynthOptions o;
  std::string tweets_path, labels_path;
  CLI::App app{"Synthetic labelled tweet corpus", "moodpipe-synth"};
  app.add_option("--tweets", tweets_path, "output JSON-lines corpus")->required();
  app.add_option("--labels", labels_path, "output annotator label TSV");
  app.add_option("--per-class", o.per_class, "tweets per class")->capture_default_str();
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--start", o.start, "earliest timestamp, epoch seconds")->capture_default_str();
  app.add_option("--days", o.span_days, "days covered")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--annotators", o.annotators, "label columns")->capture_default_str()->check(CLI::Range(2, 50));
  app.add_option("--accuracy", o.annotator_accuracy, "annotator accuracy")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  auto corpus = moodpipe::synth::generate(o);
  std::ofstream tweets(tweets_path);
  if (!tweets) {
    std::cerr << "cannot write " << tweets_path << "\n";
    return 2;
  }
  moodpipe::corpus::write_jsonl(tweets, corpus.tweets);
  if (!labels_path.empty()) {
    std::ofstream labels(labels_path);
    if (!labels) {
      std::cerr << "cannot write " << labels_path << "\n";
      return 2;
    }
    moodpipe::synth::write_label_tsv(labels, corpus, o);
  }
  std::cerr << "wrote " << corpus.tweets.size() << " tweets\n";
  return 0;
}
