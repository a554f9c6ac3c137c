#include "moodpipe/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "moodpipe/error.hpp"

namespace moodpipe::text {

namespace {

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_ascii_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_alnum(unsigned char c) { return is_ascii_alpha(c) || is_digit(c); }
bool is_handle_char(unsigned char c) { return is_ascii_alnum(c) || c == '_'; }

// Decodes the code point starting at `pos`; `len` receives its byte length.
char32_t decode(std::string_view s, std::size_t pos, std::size_t& len) {
  auto c = static_cast<unsigned char>(s[pos]);
  std::size_t n = 1;
  char32_t cp = c;
  if (c >= 0xF0) {
    n = 4;
    cp = c & 0x07;
  } else if (c >= 0xE0) {
    n = 3;
    cp = c & 0x0F;
  } else if (c >= 0xC0) {
    n = 2;
    cp = c & 0x1F;
  } else {
    len = 1;
    return cp;
  }
  if (pos + n > s.size()) {
    len = 1;
    return 0xFFFD;
  }
  for (std::size_t i = 1; i < n; ++i) {
    auto cc = static_cast<unsigned char>(s[pos + i]);
    if ((cc & 0xC0) != 0x80) {
      len = 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  len = n;
  return cp;
}

// Non-ASCII code points count as letters except general punctuation,
// arrows/technical symbols and the emoji planes.
bool is_symbol_cp(char32_t cp) {
  return (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x2190 && cp <= 0x2BFF) ||
         (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0x1F000 && cp <= 0x1FAFF) ||
         cp == 0xFFFD || (cp >= 0x80 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7;
}

bool letter_at(std::string_view s, std::size_t pos, std::size_t& len) {
  auto c = static_cast<unsigned char>(s[pos]);
  if (c < 0x80) {
    len = 1;
    return is_ascii_alpha(c);
  }
  char32_t cp = decode(s, pos, len);
  return !is_symbol_cp(cp);
}

bool word_char_at(std::string_view s, std::size_t pos, std::size_t& len) {
  if (is_digit(static_cast<unsigned char>(s[pos]))) {
    len = 1;
    return true;
  }
  return letter_at(s, pos, len);
}

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) return false;
  }
  return true;
}

bool is_apostrophe(std::string_view s, std::size_t pos, std::size_t& len) {
  if (s[pos] == '\'') {
    len = 1;
    return true;
  }
  // U+2019 RIGHT SINGLE QUOTATION MARK
  if (s.compare(pos, 3, "\xE2\x80\x99") == 0) {
    len = 3;
    return true;
  }
  return false;
}

constexpr std::array<std::string_view, 6> kClitics = {"'s", "'re", "'ve", "'ll", "'d", "'m"};

// Splits a word containing apostrophes into base + clitic where the
// suffix is a known English clitic; otherwise keeps the word whole.
void push_word(std::string word, std::vector<Token>& out) {
  std::string norm = word;
  // Normalise curly apostrophes for clitic detection only.
  for (std::size_t p = norm.find("\xE2\x80\x99"); p != std::string::npos; p = norm.find("\xE2\x80\x99", p)) {
    norm.replace(p, 3, "'");
  }
  std::string lower = ascii_lower(norm);
  if (lower.size() > 3 && lower.ends_with("n't")) {
    std::string base = norm.substr(0, norm.size() - 3);
    out.push_back({std::move(base), TokenKind::Word});
    out.push_back({norm.substr(norm.size() - 3), TokenKind::Word});
    return;
  }
  for (auto clitic : kClitics) {
    if (lower.size() > clitic.size() && lower.ends_with(clitic)) {
      std::string base = norm.substr(0, norm.size() - clitic.size());
      if (base.find('\'') != std::string::npos) break;
      out.push_back({std::move(base), TokenKind::Word});
      out.push_back({norm.substr(norm.size() - clitic.size()), TokenKind::Word});
      return;
    }
  }
  out.push_back({std::move(word), TokenKind::Word});
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Word: return "word";
    case TokenKind::Url: return "url";
    case TokenKind::Mention: return "mention";
    case TokenKind::Hashtag: return "hashtag";
    case TokenKind::Emoticon: return "emoticon";
    case TokenKind::Punct: return "punct";
    case TokenKind::Number: return "number";
  }
  return "unknown";
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_clitic(std::string_view surface) {
  std::string lower = ascii_lower(surface);
  if (lower == "n't") return true;
  return std::find(kClitics.begin(), kClitics.end(), lower) != kClitics.end();
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t len = 1;
    decode(s, i, len);
    i += len;
    ++n;
  }
  return n;
}

Tokenizer::Tokenizer(std::vector<std::string> emoticons) : emoticons_(std::move(emoticons)) {
  std::erase_if(emoticons_, [](const std::string& e) { return e.empty(); });
  std::stable_sort(emoticons_.begin(), emoticons_.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
}

std::size_t Tokenizer::match_emoticon(std::string_view text, std::size_t pos) const {
  const bool after_alnum = pos > 0 && is_ascii_alnum(static_cast<unsigned char>(text[pos - 1]));
  for (const auto& e : emoticons_) {
    if (text.compare(pos, e.size(), e) != 0) continue;
    // "xD" inside "boxDrive" is not an emoticon, but ":D" in "great:D" is.
    if (after_alnum && is_ascii_alnum(static_cast<unsigned char>(e.front()))) continue;
    std::size_t end = pos + e.size();
    if (is_ascii_alnum(static_cast<unsigned char>(e.back())) && end < text.size() &&
        is_ascii_alnum(static_cast<unsigned char>(text[end]))) {
      continue;
    }
    return e.size();
  }
  return 0;
}

std::vector<Token> Tokenizer::tokenize(std::string_view text) const {
  std::vector<Token> out;
  std::string punct;
  auto flush_punct = [&] {
    if (!punct.empty()) {
      out.push_back({std::move(punct), TokenKind::Punct});
      punct.clear();
    }
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      flush_punct();
      ++i;
      continue;
    }
    if (starts_with_ci(text, i, "http://") || starts_with_ci(text, i, "https://")) {
      flush_punct();
      std::size_t j = i;
      while (j < n && !is_space(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({std::string(text.substr(i, j - i)), TokenKind::Url});
      i = j;
      continue;
    }
    if ((c == '@' || c == '#') && i + 1 < n) {
      bool prev_ok = i == 0 || !is_handle_char(static_cast<unsigned char>(text[i - 1]));
      std::size_t j = i + 1;
      if (c == '@') {
        while (j < n && is_handle_char(static_cast<unsigned char>(text[j]))) ++j;
      } else {
        while (j < n) {
          std::size_t len = 1;
          if (text[j] != '_' && !word_char_at(text, j, len)) break;
          j += len;
        }
      }
      if (prev_ok && j > i + 1) {
        flush_punct();
        out.push_back({std::string(text.substr(i, j - i)), c == '@' ? TokenKind::Mention : TokenKind::Hashtag});
        i = j;
        continue;
      }
    }
    if (std::size_t len = match_emoticon(text, i); len > 0) {
      flush_punct();
      out.push_back({std::string(text.substr(i, len)), TokenKind::Emoticon});
      i += len;
      continue;
    }
    if (is_digit(c)) {
      flush_punct();
      std::size_t j = i;
      while (j < n) {
        if (is_digit(static_cast<unsigned char>(text[j]))) {
          ++j;
        } else if ((text[j] == '.' || text[j] == ',') && j + 1 < n &&
                   is_digit(static_cast<unsigned char>(text[j + 1]))) {
          ++j;
        } else {
          break;
        }
      }
      out.push_back({std::string(text.substr(i, j - i)), TokenKind::Number});
      i = j;
      continue;
    }
    std::size_t len = 1;
    if (letter_at(text, i, len)) {
      flush_punct();
      std::size_t j = i + len;
      while (j < n) {
        std::size_t l = 1;
        if (word_char_at(text, j, l)) {
          j += l;
          continue;
        }
        std::size_t al = 1;
        if (is_apostrophe(text, j, al) && j + al < n) {
          std::size_t ll = 1;
          if (letter_at(text, j + al, ll)) {
            j += al + ll;
            continue;
          }
        }
        break;
      }
      push_word(std::string(text.substr(i, j - i)), out);
      i = j;
      continue;
    }
    // Anything else is punctuation or a symbol; runs are kept together.
    punct.append(text.substr(i, len));
    i += len;
  }
  flush_punct();
  return out;
}

std::vector<Token> strip_noise(std::span<const Token> tokens, KindSet drop) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!drop.contains(t.kind)) out.push_back(t);
  }
  return out;
}

StopList::StopList(std::unordered_set<std::string> words) : words_(std::move(words)) {}

StopList StopList::load(const std::filesystem::path& path) {
  auto lines = read_lines(path);
  std::unordered_set<std::string> words;
  for (auto& l : lines) words.insert(ascii_lower(l));
  return StopList(std::move(words));
}

bool StopList::contains(std::string_view lower_word) const {
  return words_.contains(std::string(lower_word));
}

std::vector<Token> remove_stopwords(std::span<const Token> tokens, const StopList& stoplist) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Word && stoplist.contains(ascii_lower(t.surface))) continue;
    out.push_back(t);
  }
  return out;
}

EnglishDictionary::EnglishDictionary(std::vector<std::string> words) {
  for (auto& w : words) {
    std::string lower = ascii_lower(w);
    stems_.insert(porter_stem(lower));
    words_.insert(std::move(lower));
  }
}

EnglishDictionary EnglishDictionary::load(const std::filesystem::path& path) {
  return EnglishDictionary(read_lines(path));
}

bool EnglishDictionary::contains(std::string_view lower_word) const {
  std::string w(lower_word);
  return words_.contains(w) || stems_.contains(porter_stem(w));
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r\n");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace moodpipe::text
