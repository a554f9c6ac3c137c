#include <gtest/gtest.h>

#include <sstream>

#include "moodpipe/error.hpp"
#include "moodpipe/labeling.hpp"
#include "support.hpp"

using namespace moodpipe;
using namespace moodpipe::labeling;

namespace {

using L = SentimentLabel;

MergedLabel vote(std::initializer_list<L> l) { return majority_vote(std::vector<L>(l)); }

}  // namespace

TEST(MajorityVote, Examples) {
  EXPECT_EQ(vote({L::Positive, L::Positive, L::Negative}), MergedLabel::Positive);
  EXPECT_EQ(vote({L::Positive, L::Negative, L::Neutral}), MergedLabel::NoMajority);
  EXPECT_EQ(vote({L::Unlabeled, L::Unlabeled, L::Positive}), MergedLabel::NonEnglish);
  EXPECT_EQ(vote({L::Ambiguous, L::Ambiguous, L::Neutral}), MergedLabel::Ambiguous);
  EXPECT_EQ(vote({L::Neutral, L::Neutral, L::Neutral}), MergedLabel::Neutral);
}

TEST(MajorityVote, EvenAnnotatorCounts) {
  EXPECT_EQ(vote({L::Positive, L::Negative}), MergedLabel::NoMajority);
  EXPECT_EQ(vote({L::Positive, L::Positive}), MergedLabel::Positive);
  EXPECT_EQ(vote({L::Negative, L::Negative, L::Positive, L::Positive}), MergedLabel::NoMajority);
  EXPECT_EQ(vote({L::Negative, L::Negative, L::Negative, L::Positive}), MergedLabel::Negative);
  EXPECT_THROW(majority_vote(std::vector<L>{}), std::invalid_argument);
}

TEST(MajorityVote, SingleAnnotatorWins) { EXPECT_EQ(vote({L::Ambiguous}), MergedLabel::Ambiguous); }

TEST(Tokens, RoundTrip) {
  for (auto l : kAllSentimentLabels) EXPECT_EQ(parse_label(to_token(l)), l);
  EXPECT_EQ(parse_label("POS"), L::Positive);
  EXPECT_EQ(parse_label("  "), L::Unlabeled);
  EXPECT_FALSE(parse_label("maybe"));
  for (auto m : kAllMergedLabels) EXPECT_EQ(parse_merged(to_string(m)), m);
}

TEST(Agreement, StrictAndLenient) {
  std::vector<L> a = {L::Positive, L::Ambiguous, L::Neutral, L::Unlabeled};
  std::vector<L> b = {L::Positive, L::Negative, L::Positive, L::Neutral};
  EXPECT_DOUBLE_EQ(agreement(a, b, AgreementMode::Strict), 0.25);
  EXPECT_DOUBLE_EQ(agreement(a, b, AgreementMode::Lenient), 0.5);
  EXPECT_DOUBLE_EQ(agreement(a, a, AgreementMode::Strict), 1.0);
  EXPECT_THROW(agreement(a, std::vector<L>{L::Positive}, AgreementMode::Strict), std::invalid_argument);
  EXPECT_THROW(agreement(std::vector<L>{}, std::vector<L>{}, AgreementMode::Strict), std::invalid_argument);
}

TEST(Agreement, MatrixSymmetricWithUnitDiagonal) {
  std::vector<LabelSet> sets = {{"1", {L::Positive, L::Positive, L::Negative}},
                                {"2", {L::Neutral, L::Ambiguous, L::Neutral}}};
  auto m = agreement_matrix(sets, AgreementMode::Strict);
  ASSERT_EQ(m.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(m[i][i], 1.0);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m[i][j], m[j][i]);
  }
  EXPECT_DOUBLE_EQ(m[0][1], 0.5);
  EXPECT_DOUBLE_EQ(m[0][2], 0.5);
  EXPECT_DOUBLE_EQ(agreement_matrix(sets, AgreementMode::Lenient)[0][1], 1.0);
}

TEST(LabelTsv, ParsesBlankAndShortRows) {
  std::istringstream in("tweet_id\tlabel_1\tlabel_2\tlabel_3\n1\tpos\t\tneg\n2\tneu\tneu\n\n");
  auto sets = read_label_tsv(in);
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].labels, (std::vector<L>{L::Positive, L::Unlabeled, L::Negative}));
  EXPECT_EQ(sets[1].labels, (std::vector<L>{L::Neutral, L::Neutral, L::Unlabeled}));
}

TEST(LabelTsv, Errors) {
  std::istringstream bad_token("tweet_id\tlabel_1\tlabel_2\n1\tpos\tyes\n");
  EXPECT_THROW(read_label_tsv(bad_token), DataError);
  std::istringstream wide("tweet_id\tlabel_1\tlabel_2\n1\tpos\tneg\tneu\n");
  EXPECT_THROW(read_label_tsv(wide), DataError);
  EXPECT_THROW(read_label_tsv(std::filesystem::path("/nonexistent.tsv")), DataError);
}

TEST(MergedTsv, RoundTrip) {
  std::vector<MergedRow> rows = {{"1", MergedLabel::Positive}, {"2", MergedLabel::NonEnglish},
                                 {"3", MergedLabel::NoMajority}};
  std::stringstream s;
  write_merged_tsv(s, rows);
  auto back = read_merged_tsv(s);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].tweet_id, rows[i].tweet_id);
    EXPECT_EQ(back[i].outcome, rows[i].outcome);
  }
}

TEST(ClassCounts, Totals) {
  std::vector<MergedLabel> m = {MergedLabel::Positive, MergedLabel::Negative, MergedLabel::Neutral,
                                MergedLabel::Neutral, MergedLabel::Ambiguous, MergedLabel::NonEnglish};
  auto c = class_counts(m);
  EXPECT_EQ(c.total(), 6u);
  EXPECT_EQ(c.training_total(), 4u);
  EXPECT_EQ(c.subjective_total(), 2u);
  EXPECT_EQ(c[MergedLabel::Neutral], 2u);
  EXPECT_EQ(to_json(c).at("neutral").get<int>(), 2);
}

// Per-class totals of the published annotation study, reproduced from a
// label file with the same outcome counts.
TEST(ClassCounts, PublishedStudyTotals) {
  auto sets = read_label_tsv(moodpipe::testing::fixture("annotation_study_counts.tsv"));
  ASSERT_EQ(sets.size(), 10173u);
  std::vector<MergedLabel> merged;
  for (const auto& r : merge_all(sets)) merged.push_back(r.outcome);
  auto c = class_counts(merged);
  EXPECT_EQ(c[MergedLabel::Positive], 2543u);
  EXPECT_EQ(c[MergedLabel::Negative], 1877u);
  EXPECT_EQ(c[MergedLabel::Neutral], 4543u);
  EXPECT_EQ(c.training_total(), 8963u);
  EXPECT_EQ(c[MergedLabel::Ambiguous] + c[MergedLabel::NoMajority] + c[MergedLabel::NonEnglish], 1210u);
  EXPECT_EQ(c.total(), 10173u);
}
