#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "moodpipe/classify.hpp"
#include "moodpipe/corpus.hpp"

namespace moodpipe::synth {

// Generator of labelled tweets from class-leaning vocabularies, used for
// demos and end-to-end checks where no hand-labelled corpus exists.
struct SynthOptions {
  std::size_t per_class = 1000;
  std::uint64_t seed = 42;
  corpus::Timestamp start = 1328054400;  // 2012-02-01T00:00:00Z
  int span_days = 10;
  double leak = 0.2;  // chance a content word is drawn from another class
  // Class conventions: objective tweets often link, subjective ones carry
  // an emoticon of their polarity.
  double objective_url = 0.6;
  double subjective_url = 0.1;
  double class_emoticon = 0.6;
  double stray_emoticon = 0.03;
  // Annotation simulation for label files.
  std::size_t annotators = 3;
  double annotator_accuracy = 0.85;
};

struct SynthCorpus {
  std::vector<corpus::Tweet> tweets;  // interleaved by class, ids "1".."n"
  std::vector<classify::Sentiment> labels;
};

SynthCorpus generate(const SynthOptions& options = {});

// Topic keywords embedded in the generated tweets.
const std::vector<std::string>& topics();

/// Writes a label TSV with options.annotators columns in which each
/// annotator reports the true class with probability annotator_accuracy
/// and otherwise another token, including amb and blank.
void write_label_tsv(std::ostream& out, const SynthCorpus& corpus, const SynthOptions& options = {});

}  // namespace moodpipe::synth
