#include "moodpipe/resources.hpp"

#include "moodpipe/error.hpp"

#ifndef MOODPIPE_DEFAULT_DATA_DIR
#define MOODPIPE_DEFAULT_DATA_DIR "data"
#endif

namespace moodpipe {

std::filesystem::path default_data_dir() { return MOODPIPE_DEFAULT_DATA_DIR; }

std::shared_ptr<const Resources> Resources::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw DataError("data directory " + dir.string() + " does not exist");
  auto r = std::make_shared<Resources>();
  r->emoticons = lexicons::EmoticonLexicon::load(dir / "emoticons_positive.txt", dir / "emoticons_negative.txt");
  r->tokenizer = text::Tokenizer(r->emoticons.all());
  r->stopwords = text::StopList::load(dir / "stopwords.txt");
  auto english = text::EnglishDictionary::load(dir / "english_words.txt");
  if (english.size() == 0) throw DataError("english_words.txt is empty");
  r->english = std::make_shared<const text::EnglishDictionary>(std::move(english));
  r->tagger = text::PosTagger::load(dir / "tag_lexicon.tsv");
  r->mpqa = lexicons::MpqaLexicon::load(dir / "mpqa_subset.tff", &r->warnings);
  return r;
}

}  // namespace moodpipe
