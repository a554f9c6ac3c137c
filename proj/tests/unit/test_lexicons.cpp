#include <gtest/gtest.h>

#include "moodpipe/error.hpp"
#include "moodpipe/lexicons.hpp"
#include "moodpipe/text.hpp"
#include "support.hpp"

using namespace moodpipe;
using namespace moodpipe::lexicons;

namespace {

std::filesystem::path write_lexicon(const moodpipe::testing::TempDir& dir, const std::string& content) {
  auto p = dir / "lex.tff";
  moodpipe::testing::write_text(p, content);
  return p;
}

std::vector<text::Token> words(std::initializer_list<const char*> w) {
  std::vector<text::Token> out;
  for (const char* s : w) out.push_back({s, text::TokenKind::Word});
  return out;
}

}  // namespace

TEST(Mpqa, ParsesLineFormat) {
  moodpipe::testing::TempDir dir;
  auto lex = MpqaLexicon::load(write_lexicon(
      dir, "type=strongsubj len=1 word1=love pos1=verb stemmed1=y priorpolarity=positive\n"));
  ASSERT_EQ(lex.size(), 1u);
  const auto& e = lex.entries()[0];
  EXPECT_EQ(e.word, "love");
  EXPECT_EQ(e.strength, Strength::Strong);
  EXPECT_EQ(e.polarity, Polarity::Positive);
  EXPECT_EQ(e.pos, PosClass::Verb);
  EXPECT_TRUE(e.stemmed);
  EXPECT_EQ(lex.find("loving"), &lex.entries()[0]);
}

TEST(Mpqa, FirstEntryWinsAndMalformedSkipped) {
  moodpipe::testing::TempDir dir;
  std::vector<std::string> warnings;
  auto lex = MpqaLexicon::load(write_lexicon(dir,
                                             "type=weaksubj len=1 word1=fine pos1=adj stemmed1=n priorpolarity=positive\n"
                                             "garbage line\n"
                                             "type=strongsubj len=1 word1=fine pos1=adj stemmed1=n priorpolarity=negative\n"
                                             "type=oddsubj len=1 word1=odd priorpolarity=positive\n"),
                               &warnings);
  ASSERT_NE(lex.find("fine"), nullptr);
  EXPECT_EQ(lex.find("fine")->polarity, Polarity::Positive);
  EXPECT_EQ(warnings.size(), 2u);
  EXPECT_EQ(lex.find("odd"), nullptr);
}

TEST(Mpqa, EmptyOrMissingFileIsDataError) {
  moodpipe::testing::TempDir dir;
  EXPECT_THROW(MpqaLexicon::load(write_lexicon(dir, "\n\n")), DataError);
  EXPECT_THROW(MpqaLexicon::load(dir / "missing.tff"), DataError);
}

TEST(Mpqa, Weights) {
  EXPECT_EQ(weight({"a", Strength::Strong, Polarity::Positive}), 1.0);
  EXPECT_EQ(weight({"a", Strength::Weak, Polarity::Positive}), 0.5);
  EXPECT_EQ(weight({"a", Strength::Weak, Polarity::Negative}), -0.5);
  EXPECT_EQ(weight({"a", Strength::Strong, Polarity::Negative}), -1.0);
  EXPECT_EQ(weight({"a", Strength::Strong, Polarity::Neutral}), 0.0);
  EXPECT_EQ(weight({"a", Strength::Strong, Polarity::Both}), 0.0);
}

TEST(Mpqa, ScoreSumsWeights) {
  MpqaLexicon lex({{"good", Strength::Weak, Polarity::Positive},
                   {"awful", Strength::Strong, Polarity::Negative},
                   {"great", Strength::Strong, Polarity::Positive}});
  EXPECT_DOUBLE_EQ(mpqa_score(words({"good", "awful"}), lex), -0.5);
  EXPECT_DOUBLE_EQ(mpqa_score(words({"Great", "good", "table"}), lex), 1.5);
  EXPECT_DOUBLE_EQ(mpqa_score({}, lex), 0.0);
}

TEST(Mpqa, ExactBeatsStemmed) {
  MpqaLexicon lex({{"happi", Strength::Strong, Polarity::Negative, PosClass::Any, true},
                   {"happiness", Strength::Weak, Polarity::Positive}});
  ASSERT_NE(lex.find("happiness"), nullptr);
  EXPECT_EQ(lex.find("happiness")->polarity, Polarity::Positive);
}

TEST(Mpqa, PosEnforcement) {
  MpqaLexicon lex({{"like", Strength::Weak, Polarity::Positive, PosClass::Verb}});
  EXPECT_NE(lex.find("like", text::PosTag::IN, false), nullptr);
  EXPECT_EQ(lex.find("like", text::PosTag::IN, true), nullptr);
  EXPECT_NE(lex.find("like", text::PosTag::VBP, true), nullptr);
}

TEST(Mpqa, ShippedSubsetLoads) {
  const auto& lex = moodpipe::testing::resources()->mpqa;
  EXPECT_GT(lex.size(), 100u);
  ASSERT_NE(lex.find("love"), nullptr);
  EXPECT_GT(weight(*lex.find("love")), 0);
}

TEST(Emoticons, ScoreExamples) {
  auto lex = EmoticonLexicon::builtin();
  std::vector<text::Token> two_pos = {{":D", text::TokenKind::Emoticon}, {":)", text::TokenKind::Emoticon}};
  EXPECT_EQ(emoticon_score(two_pos, lex), 2);
  std::vector<text::Token> mixed = {{":)", text::TokenKind::Emoticon}, {":(", text::TokenKind::Emoticon}};
  auto t = emoticon_tally(mixed, lex);
  EXPECT_EQ(t.total(), 2u);
  EXPECT_EQ(t.positive, 1u);
  EXPECT_EQ(t.negative, 1u);
  EXPECT_EQ(t.score(), 0);
  EXPECT_EQ(emoticon_score({}, lex), 0);
}

TEST(Emoticons, BuiltinMatchesDataFiles) {
  auto dir = default_data_dir();
  auto loaded = EmoticonLexicon::load(dir / "emoticons_positive.txt", dir / "emoticons_negative.txt");
  auto builtin = EmoticonLexicon::builtin();
  EXPECT_EQ(loaded.positive(), builtin.positive());
  EXPECT_EQ(loaded.negative(), builtin.negative());
  EXPECT_GE(builtin.positive().size(), 25u);
  EXPECT_GE(builtin.negative().size(), 25u);
}

TEST(Emoticons, RejectsOverlapOrEmpty) {
  EXPECT_THROW(EmoticonLexicon({":)"}, {":)"}), std::invalid_argument);
  EXPECT_THROW(EmoticonLexicon({}, {":("}), std::invalid_argument);
}

TEST(Emoticons, TallyFromTokenizer) {
  const auto& r = *moodpipe::testing::resources();
  auto tokens = r.tokenizer.tokenize("so good :-) :) but :( later");
  auto t = emoticon_tally(tokens, r.emoticons);
  EXPECT_EQ(t.positive, 2u);
  EXPECT_EQ(t.negative, 1u);
}
