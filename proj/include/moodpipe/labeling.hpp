#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace moodpipe::labeling {

enum class SentimentLabel { Positive, Negative, Neutral, Ambiguous, Unlabeled };

enum class MergedLabel { Positive, Negative, Neutral, Ambiguous, NoMajority, NonEnglish };

inline constexpr std::array<SentimentLabel, 5> kAllSentimentLabels = {
    SentimentLabel::Positive, SentimentLabel::Negative, SentimentLabel::Neutral, SentimentLabel::Ambiguous,
    SentimentLabel::Unlabeled};

inline constexpr std::array<MergedLabel, 6> kAllMergedLabels = {
    MergedLabel::Positive,  MergedLabel::Negative,   MergedLabel::Neutral,
    MergedLabel::Ambiguous, MergedLabel::NoMajority, MergedLabel::NonEnglish};

// File tokens: pos, neg, neu, amb, blank.
std::string_view to_token(SentimentLabel l);
// Case-insensitive; an empty (or all-whitespace) cell is Unlabeled.
std::optional<SentimentLabel> parse_label(std::string_view token);

// Output names: positive, negative, neutral, ambiguous, no_majority, non_english.
std::string_view to_string(MergedLabel m);
std::optional<MergedLabel> parse_merged(std::string_view name);

struct LabelSet {
  std::string tweet_id;
  std::vector<SentimentLabel> labels;
};

/// Resolves k annotations by majority. A label wins when it is held by at
/// least floor(k/2)+1 annotators (two of three when k = 3), which also makes
/// it the unique plurality. A winning Unlabeled means the annotators judged
/// the tweet not to be English. Throws std::invalid_argument on an empty list.
MergedLabel majority_vote(std::span<const SentimentLabel> labels);

struct ClassCounts {
  std::array<std::size_t, kAllMergedLabels.size()> by_outcome{};

  std::size_t operator[](MergedLabel m) const { return by_outcome[static_cast<std::size_t>(m)]; }
  std::size_t total() const;
  // Positive + Negative + Neutral.
  std::size_t training_total() const;
  // Positive + Negative.
  std::size_t subjective_total() const;
};

ClassCounts class_counts(std::span<const MergedLabel> merged);
nlohmann::json to_json(const ClassCounts& c);

enum class AgreementMode { Strict, Lenient };

/// Share of positions where two annotators agree. In lenient mode a pair
/// also agrees whenever either side is Ambiguous; Unlabeled gets no such
/// allowance. Throws std::invalid_argument on empty or unequal inputs.
double agreement(std::span<const SentimentLabel> a, std::span<const SentimentLabel> b, AgreementMode mode);

// Pairwise agreement between annotator columns; entry [i][j] for i != j,
// 1.0 on the diagonal.
std::vector<std::vector<double>> agreement_matrix(std::span<const LabelSet> sets, AgreementMode mode);

/// Reads a label TSV: a header row starting with "tweet_id" followed by
/// label_1..label_k, then one row per tweet. Every row must have the same
/// number of annotator columns (k >= 2); a short row has its missing
/// trailing cells treated as blank. Throws DataError on unknown tokens,
/// rows wider than the header or an unreadable file.
std::vector<LabelSet> read_label_tsv(std::istream& in);
std::vector<LabelSet> read_label_tsv(const std::filesystem::path& path);

struct MergedRow {
  std::string tweet_id;
  MergedLabel outcome;
};

std::vector<MergedRow> merge_all(std::span<const LabelSet> sets);
// Writes "tweet_id<TAB>outcome" with a header row.
void write_merged_tsv(std::ostream& out, std::span<const MergedRow> rows);
std::vector<MergedRow> read_merged_tsv(std::istream& in);
std::vector<MergedRow> read_merged_tsv(const std::filesystem::path& path);

}  // namespace moodpipe::labeling
