#include <string>
#include <string_view>

#include "moodpipe/text.hpp"

namespace moodpipe::text {

namespace {

// Working state of one stemming run. `k` is the index of the last letter of
// the current word, `j` the end of the stem once a suffix has matched.
class PorterRun {
 public:
  explicit PorterRun(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, static_cast<std::size_t>(k_ + 1));
  }

 private:
  bool cons(int i) const {
    switch (b_[static_cast<std::size_t>(i)]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int measure() const {
    int n = 0;
    int i = 0;
    for (;; ++i) {
      if (i > j_) return n;
      if (!cons(i)) break;
    }
    ++i;
    for (;;) {
      for (;; ++i) {
        if (i > j_) return n;
        if (cons(i)) break;
      }
      ++i;
      ++n;
      for (;; ++i) {
        if (i > j_) return n;
        if (!cons(i)) break;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_consonant(int j) const {
    if (j < 1) return false;
    if (b_[static_cast<std::size_t>(j)] != b_[static_cast<std::size_t>(j - 1)]) return false;
    return cons(j);
  }

  // consonant-vowel-consonant ending at i, where the last consonant is not
  // w, x or y.
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    char ch = b_[static_cast<std::size_t>(i)];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (b_.compare(static_cast<std::size_t>(k_ + 1 - len), s.size(), s) != 0) return false;
    j_ = k_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), b_.size() - static_cast<std::size_t>(j_ + 1), s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void replace_if_measured(std::string_view s) {
    if (measure() > 0) set_to(s);
  }

  char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

  // Plurals and -ed / -ing.
  void step1ab() {
    if (at(k_) == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (at(k_ - 1) != 's') {
        --k_;
      }
    }
    if (ends("eed")) {
      if (measure() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      b_.resize(static_cast<std::size_t>(k_ + 1));
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_consonant(k_)) {
        --k_;
        char ch = at(k_);
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else if (j_ = k_, measure() == 1 && cvc(k_)) {
        set_to("e");
      }
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  // Terminal y to i when there is another vowel in the stem.
  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
  }

  // Double suffixes to single ones, for stems with m > 0.
  void step2() {
    if (k_ < 1) return;
    auto try_rule = [this](std::string_view from, std::string_view to) {
      if (!ends(from)) return false;
      replace_if_measured(to);
      return true;
    };
    switch (at(k_ - 1)) {
      case 'a':
        if (try_rule("ational", "ate")) break;
        try_rule("tional", "tion");
        break;
      case 'c':
        if (try_rule("enci", "ence")) break;
        try_rule("anci", "ance");
        break;
      case 'e':
        try_rule("izer", "ize");
        break;
      case 'l':
        if (try_rule("bli", "ble")) break;
        if (try_rule("alli", "al")) break;
        if (try_rule("entli", "ent")) break;
        if (try_rule("eli", "e")) break;
        try_rule("ousli", "ous");
        break;
      case 'o':
        if (try_rule("ization", "ize")) break;
        if (try_rule("ation", "ate")) break;
        try_rule("ator", "ate");
        break;
      case 's':
        if (try_rule("alism", "al")) break;
        if (try_rule("iveness", "ive")) break;
        if (try_rule("fulness", "ful")) break;
        try_rule("ousness", "ous");
        break;
      case 't':
        if (try_rule("aliti", "al")) break;
        if (try_rule("iviti", "ive")) break;
        try_rule("biliti", "ble");
        break;
      case 'g':
        try_rule("logi", "log");
        break;
      default:
        break;
    }
  }

  // -ic-, -full, -ness etc.
  void step3() {
    auto try_rule = [this](std::string_view from, std::string_view to) {
      if (!ends(from)) return false;
      replace_if_measured(to);
      return true;
    };
    switch (at(k_)) {
      case 'e':
        if (try_rule("icate", "ic")) break;
        if (try_rule("ative", "")) break;
        try_rule("alize", "al");
        break;
      case 'i':
        try_rule("iciti", "ic");
        break;
      case 'l':
        if (try_rule("ical", "ic")) break;
        try_rule("ful", "");
        break;
      case 's':
        try_rule("ness", "");
        break;
      default:
        break;
    }
  }

  // Removes -ant, -ence etc. in context <c>vcvc<v>.
  void step4() {
    if (k_ < 1) return;
    bool matched = false;
    switch (at(k_ - 1)) {
      case 'a':
        matched = ends("al");
        break;
      case 'c':
        matched = ends("ance") || ends("ence");
        break;
      case 'e':
        matched = ends("er");
        break;
      case 'i':
        matched = ends("ic");
        break;
      case 'l':
        matched = ends("able") || ends("ible");
        break;
      case 'n':
        matched = ends("ant") || ends("ement") || ends("ment") || ends("ent");
        break;
      case 'o':
        if (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) {
          matched = true;
        } else {
          matched = ends("ou");
        }
        break;
      case 's':
        matched = ends("ism");
        break;
      case 't':
        matched = ends("ate") || ends("iti");
        break;
      case 'u':
        matched = ends("ous");
        break;
      case 'v':
        matched = ends("ive");
        break;
      case 'z':
        matched = ends("ize");
        break;
      default:
        break;
    }
    if (matched && measure() > 1) {
      k_ = j_;
      b_.resize(static_cast<std::size_t>(k_ + 1));
    }
  }

  // Final -e and -ll.
  void step5() {
    j_ = k_;
    if (at(k_) == 'e') {
      int a = measure();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (at(k_) == 'l' && double_consonant(k_) && measure() > 1) --k_;
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) { return PorterRun(word).run(); }

}  // namespace moodpipe::text
