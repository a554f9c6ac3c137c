#include "moodpipe/labeling.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "moodpipe/error.hpp"
#include "moodpipe/text.hpp"

namespace moodpipe::labeling {

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    cells.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cells;
}

bool wildcard(SentimentLabel l) { return l == SentimentLabel::Ambiguous; }

MergedLabel merged_from(SentimentLabel l) {
  switch (l) {
    case SentimentLabel::Positive: return MergedLabel::Positive;
    case SentimentLabel::Negative: return MergedLabel::Negative;
    case SentimentLabel::Neutral: return MergedLabel::Neutral;
    case SentimentLabel::Ambiguous: return MergedLabel::Ambiguous;
    case SentimentLabel::Unlabeled: return MergedLabel::NonEnglish;
  }
  return MergedLabel::NoMajority;
}

}  // namespace

std::string_view to_token(SentimentLabel l) {
  switch (l) {
    case SentimentLabel::Positive: return "pos";
    case SentimentLabel::Negative: return "neg";
    case SentimentLabel::Neutral: return "neu";
    case SentimentLabel::Ambiguous: return "amb";
    case SentimentLabel::Unlabeled: return "blank";
  }
  return "blank";
}

std::optional<SentimentLabel> parse_label(std::string_view token) {
  std::string t = text::ascii_lower(trim(token));
  if (t.empty()) return SentimentLabel::Unlabeled;
  for (auto l : kAllSentimentLabels) {
    if (t == to_token(l)) return l;
  }
  return std::nullopt;
}

std::string_view to_string(MergedLabel m) {
  switch (m) {
    case MergedLabel::Positive: return "positive";
    case MergedLabel::Negative: return "negative";
    case MergedLabel::Neutral: return "neutral";
    case MergedLabel::Ambiguous: return "ambiguous";
    case MergedLabel::NoMajority: return "no_majority";
    case MergedLabel::NonEnglish: return "non_english";
  }
  return "no_majority";
}

std::optional<MergedLabel> parse_merged(std::string_view name) {
  std::string n = text::ascii_lower(trim(name));
  for (auto m : kAllMergedLabels) {
    if (n == to_string(m)) return m;
  }
  return std::nullopt;
}

MergedLabel majority_vote(std::span<const SentimentLabel> labels) {
  if (labels.empty()) throw std::invalid_argument("majority_vote needs at least one label");
  std::array<std::size_t, kAllSentimentLabels.size()> counts{};
  for (auto l : labels) ++counts[static_cast<std::size_t>(l)];
  const std::size_t needed = labels.size() / 2 + 1;
  for (auto l : kAllSentimentLabels) {
    if (counts[static_cast<std::size_t>(l)] >= needed) return merged_from(l);
  }
  return MergedLabel::NoMajority;
}

std::size_t ClassCounts::total() const {
  std::size_t n = 0;
  for (auto c : by_outcome) n += c;
  return n;
}

std::size_t ClassCounts::training_total() const {
  return (*this)[MergedLabel::Positive] + (*this)[MergedLabel::Negative] + (*this)[MergedLabel::Neutral];
}

std::size_t ClassCounts::subjective_total() const {
  return (*this)[MergedLabel::Positive] + (*this)[MergedLabel::Negative];
}

ClassCounts class_counts(std::span<const MergedLabel> merged) {
  ClassCounts c;
  for (auto m : merged) ++c.by_outcome[static_cast<std::size_t>(m)];
  return c;
}

nlohmann::json to_json(const ClassCounts& c) {
  nlohmann::json j = nlohmann::json::object();
  for (auto m : kAllMergedLabels) j[std::string(to_string(m))] = c[m];
  j["training_total"] = c.training_total();
  j["subjective_total"] = c.subjective_total();
  j["total"] = c.total();
  return j;
}

double agreement(std::span<const SentimentLabel> a, std::span<const SentimentLabel> b, AgreementMode mode) {
  if (a.size() != b.size()) throw std::invalid_argument("agreement needs label lists of equal length");
  if (a.empty()) throw std::invalid_argument("agreement needs at least one label pair");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool same = a[i] == b[i];
    if (!same && mode == AgreementMode::Lenient) same = wildcard(a[i]) || wildcard(b[i]);
    agree += same ? 1 : 0;
  }
  return static_cast<double>(agree) / static_cast<double>(a.size());
}

std::vector<std::vector<double>> agreement_matrix(std::span<const LabelSet> sets, AgreementMode mode) {
  if (sets.empty()) return {};
  const std::size_t k = sets.front().labels.size();
  std::vector<std::vector<SentimentLabel>> columns(k);
  for (const auto& s : sets) {
    if (s.labels.size() != k) throw std::invalid_argument("label sets have differing annotator counts");
    for (std::size_t j = 0; j < k; ++j) columns[j].push_back(s.labels[j]);
  }
  std::vector<std::vector<double>> m(k, std::vector<double>(k, 1.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      m[i][j] = m[j][i] = agreement(columns[i], columns[j], mode);
    }
  }
  return m;
}

std::vector<LabelSet> read_label_tsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t k = 0;
  std::vector<LabelSet> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_tabs(line);
    if (k == 0) {
      if (text::ascii_lower(trim(cells.front())) != "tweet_id") {
        throw DataError("label file must start with a tweet_id header row");
      }
      k = cells.size() - 1;
      if (k < 2) throw DataError("label file needs at least two annotator columns");
      continue;
    }
    if (cells.size() > k + 1) {
      throw DataError("line " + std::to_string(line_no) + ": more label cells than header columns");
    }
    LabelSet set;
    set.tweet_id = std::string(trim(cells.front()));
    if (set.tweet_id.empty()) throw DataError("line " + std::to_string(line_no) + ": empty tweet_id");
    for (std::size_t j = 1; j <= k; ++j) {
      std::string_view cell = j < cells.size() ? cells[j] : std::string_view{};
      auto l = parse_label(cell);
      if (!l) {
        throw DataError("line " + std::to_string(line_no) + ": unknown label '" + std::string(cell) + "'");
      }
      set.labels.push_back(*l);
    }
    out.push_back(std::move(set));
  }
  if (k == 0) throw DataError("label file is empty");
  return out;
}

std::vector<LabelSet> read_label_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open label file " + path.string());
  return read_label_tsv(in);
}

std::vector<MergedRow> merge_all(std::span<const LabelSet> sets) {
  std::vector<MergedRow> rows;
  rows.reserve(sets.size());
  for (const auto& s : sets) rows.push_back({s.tweet_id, majority_vote(s.labels)});
  return rows;
}

void write_merged_tsv(std::ostream& out, std::span<const MergedRow> rows) {
  out << "tweet_id\toutcome\n";
  for (const auto& r : rows) out << r.tweet_id << '\t' << to_string(r.outcome) << '\n';
}

std::vector<MergedRow> read_merged_tsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<MergedRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_tabs(line);
    if (header) {
      header = false;
      if (text::ascii_lower(trim(cells.front())) == "tweet_id") continue;
    }
    if (cells.size() < 2) throw DataError("line " + std::to_string(line_no) + ": expected tweet_id and outcome");
    auto m = parse_merged(cells[1]);
    if (!m) throw DataError("line " + std::to_string(line_no) + ": unknown outcome '" + std::string(cells[1]) + "'");
    rows.push_back({std::string(trim(cells[0])), *m});
  }
  return rows;
}

std::vector<MergedRow> read_merged_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open merged label file " + path.string());
  return read_merged_tsv(in);
}

}  // namespace moodpipe::labeling
