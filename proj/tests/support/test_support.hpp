#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "greetground/geo.hpp"
#include "greetground/ingest.hpp"
#include "greetground/lexicon.hpp"

namespace greetground::testing {

inline std::filesystem::path data_dir() { return GREETGROUND_TEST_DATA_DIR; }
inline std::filesystem::path fixtures_dir() { return GREETGROUND_TEST_FIXTURES_DIR; }

/// The shipped lexicon, gazetteer and registry, loaded once.
struct ShippedData {
  Lexicon lexicon = load_lexicon(data_dir() / "lexicon.tsv");
  Gazetteer gazetteer = load_gazetteer(data_dir() / "gazetteer.tsv", GazetteerFormat::Simple);
  CountryRegistry registry = load_timezone_table(data_dir() / "registry.tsv");

  GroundingContext context() const { return {lexicon, gazetteer, registry}; }

  static const ShippedData& get() {
    static const ShippedData data;
    return data;
  }
};

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view tag = "greetground") {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (std::string(tag) + "-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline LocalDate ymd(int y, unsigned m, unsigned d) {
  return LocalDate{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

inline GroundedEvent event(std::string country, std::string lang, GreetingClass cls, LocalDate date,
                           std::int32_t tod, bool official = true) {
  return GroundedEvent{std::move(country), std::move(lang), cls, date, tod, official};
}

}  // namespace greetground::testing
