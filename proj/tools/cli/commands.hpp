#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "greetground/geo.hpp"
#include "greetground/ingest.hpp"
#include "greetground/lexicon.hpp"
#include "greetground/report.hpp"
#include "greetground/stats.hpp"

namespace greetground::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitFixture = 2, kExitIo = 3 };

/// Directory holding the shipped lexicon.tsv, gazetteer.tsv, registry.tsv.
std::filesystem::path default_data_dir();

struct RunConfig {
  std::filesystem::path lexicon;
  std::filesystem::path gazetteer;
  GazetteerFormat gazetteer_format = GazetteerFormat::Simple;
  std::filesystem::path registry;
  std::filesystem::path holidays;           // optional
  std::vector<std::string> inputs;          // files or glob patterns
  std::filesystem::path events;             // grounded events CSV for report/boundary
  std::filesystem::path output_dir = ".";
  std::int32_t width_s = kDefaultBinWidth;
  double alpha = kDefaultAlpha;
  bool bonferroni = false;
  std::uint64_t min_count = kDefaultMinCount;
  bool include_foreign = false;
  unsigned shard_count = 0;  // 0: hardware concurrency

  /// Fills empty lexicon/gazetteer/registry paths from default_data_dir().
  void apply_defaults();
  /// Throws ConfigError on width/alpha/shard violations.
  void validate() const;
};

/// Expands '*' and '?' in the file-name part of each pattern; plain paths are
/// kept as given. Results of a pattern are sorted. Throws DataError when a
/// plain path does not exist or a pattern matches nothing.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string>& patterns);

struct GroundOutcome {
  IngestCounters counters;
  std::vector<GroundedEvent> events;
};

/// Grounds every input file (one shard per file, processed on up to
/// shard_count threads) and merges shards in input order. Writes
/// <output_dir>/events.csv and <output_dir>/summary.json.
GroundOutcome cmd_ground(const RunConfig& config);

/// In-memory variant used by cmd_ground and the tests.
GroundOutcome ground_files(const std::vector<std::filesystem::path>& files,
                           const GroundingContext& context, unsigned shard_count);

enum class ReportKind { Table, Daily, Area, Boxplot };

struct ReportRequest {
  ReportKind kind = ReportKind::Table;
  std::string country;                  // daily, area
  GreetingClass cls = GreetingClass::Morning;  // daily
  std::vector<std::string> langs;       // daily: one series per language
  std::vector<BoxplotKey> groups;       // boxplot
};

/// Writes the CSV (and SVG for daily/area/boxplot) into output_dir and
/// returns the written paths.
std::vector<std::filesystem::path> cmd_report(const RunConfig& config, const ReportRequest& request,
                                              std::ostream& log);

struct BoundaryRequest {
  GreetingClass class_a = GreetingClass::Morning;
  GreetingClass class_b = GreetingClass::Afternoon;
  std::string country;
  std::optional<std::string> lang;  // without: official-language events
};

/// Writes <output_dir>/boundary.csv.
BoundaryResult cmd_boundary(const RunConfig& config, const BoundaryRequest& request);

/// Validates the specs against the configured lexicon/gazetteer/registry and
/// writes the corpus to `out`.
void cmd_synth(const RunConfig& config, const std::filesystem::path& spec_path, std::uint64_t seed,
               const std::filesystem::path& out);

struct BenchResult {
  std::uint64_t records = 0;
  std::uint64_t events = 0;
  double seconds = 0.0;
  double records_per_second = 0.0;  // 0 when records == 0
  IngestCounters counters;
};

/// Generates n synthetic records in memory, then times
/// parse -> filter -> ground -> accumulate over them on one shard.
BenchResult cmd_bench(const RunConfig& config, std::uint64_t n, std::uint64_t seed = 1);

/// Full command line, including usage errors. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace greetground::cli
