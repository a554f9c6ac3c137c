#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <unistd.h>

#include "moodpipe/classify.hpp"
#include "moodpipe/resources.hpp"
#include "moodpipe/synth.hpp"

namespace moodpipe::testing {

inline std::shared_ptr<const Resources> resources() {
  static auto r = Resources::load(default_data_dir());
  return r;
}

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(MOODPIPE_FIXTURE_DIR) / name;
}

// Fresh directory removed when the object goes out of scope.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("moodpipe-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct SmallModel {
  synth::SynthCorpus corpus;
  std::vector<features::AnalyzedTweet> analyzed;
  std::shared_ptr<const classify::Pipeline> pipeline;
};

// A pipeline trained on a small synthetic corpus, built once per binary.
inline const SmallModel& small_model() {
  static const SmallModel m = [] {
    SmallModel s;
    synth::SynthOptions o;
    o.per_class = 150;
    s.corpus = synth::generate(o);
    for (const auto& t : s.corpus.tweets) s.analyzed.push_back(features::analyze(t.text, *resources()));
    s.pipeline = std::make_shared<const classify::Pipeline>(classify::Pipeline::train(
        std::span<const features::AnalyzedTweet>(s.analyzed), s.corpus.labels));
    return s;
  }();
  return m;
}

}  // namespace moodpipe::testing
