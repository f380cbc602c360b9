#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greetground/ingest.hpp"
#include "greetground/lexicon.hpp"
#include "greetground/temporal.hpp"

namespace greetground {

// ---------------------------------------------------------------------------
// Country averages table

inline constexpr std::uint64_t kDefaultMinCount = 500;

struct CountryTableRow {
  std::string country;
  std::string lang;
  GreetingClass cls = GreetingClass::Hello;
  std::int32_t mean_tod_s = 0;
  std::uint64_t count = 0;
  double resultant = 0.0;
};

struct TableOptions {
  std::uint64_t min_count = kDefaultMinCount;
  // Keep events whose language is not official in their country.
  bool include_foreign = false;
};

/// One row per (country, lang, class) with at least min_count events. Rows
/// are grouped per (country, lang); groups are ordered by their morning mean
/// (groups without a morning row go last), rows inside a group by class.
/// Cells whose mean direction is undefined are left out.
std::vector<CountryTableRow> country_table(std::span<const GroundedEvent> events,
                                           const TableOptions& options = {});

// ---------------------------------------------------------------------------
// Daily series

struct DailyPoint {
  LocalDate date;
  std::int32_t mean_tod_s = 0;
  std::uint64_t count = 0;
  bool is_weekend = false;
};

struct DailySeries {
  std::string label;
  std::vector<DailyPoint> points;  // ascending dates, days without data omitted
};

/// Per local date circular mean of `cls` greetings in `country`. With a
/// language only that language's events count (official or not); without
/// one, only official-language events.
DailySeries daily_series(std::span<const GroundedEvent> events, std::string_view country,
                         GreetingClass cls, std::optional<std::string_view> lang = std::nullopt);

// ---------------------------------------------------------------------------
// Stacked-area shares

struct AreaBin {
  std::int32_t bin_start_s = 0;
  std::array<std::uint64_t, kGreetingClassCount> counts{};
  std::array<double, kGreetingClassCount> shares_pct{};  // all zero when empty
  std::uint64_t total = 0;

  bool empty() const noexcept { return total == 0; }
};

struct AreaSeries {
  std::string country;
  std::int32_t width_s = 0;
  std::vector<AreaBin> bins;
};

/// Share of each class among the country's greetings per time bin. Throws
/// ConfigError when width_s does not divide the day.
AreaSeries area_series(std::span<const GroundedEvent> events, std::string_view country,
                       std::int32_t width_s, bool include_foreign = false);

// ---------------------------------------------------------------------------
// Box plots

struct BoxplotKey {
  std::string country;
  std::string lang;
  GreetingClass cls = GreetingClass::Hello;

  std::string label() const;
  friend bool operator==(const BoxplotKey&, const BoxplotKey&) = default;
};

struct BoxplotRow {
  BoxplotKey key;
  std::uint64_t count = 0;
  // min, q1, median, q3, max after centering on the circular mean.
  std::array<std::int32_t, 5> five{};
};

struct BoxplotSummary {
  std::vector<BoxplotRow> rows;        // in key order
  std::vector<std::string> warnings;   // one per skipped group
};

/// Empty groups and groups with an undefined mean direction are skipped and
/// reported in `warnings`.
BoxplotSummary boxplot_summary(std::span<const GroundedEvent> events,
                               std::span<const BoxplotKey> keys);

// ---------------------------------------------------------------------------
// Holidays

struct Holiday {
  std::string iso2;
  LocalDate date;
  std::string label;
};

/// iso2<TAB>YYYY-MM-DD<TAB>label. Throws DataError on malformed rows.
std::vector<Holiday> load_holidays(const std::filesystem::path& path);
std::vector<Holiday> parse_holidays(std::string_view tsv);

// ---------------------------------------------------------------------------
// Emission. Output is a pure function of the input: fixed row order, reals
// printed with 6 significant digits.

inline constexpr std::string_view kTableCsvHeader = "country,lang,class,mean_tod,count,resultant";
inline constexpr std::string_view kDailyCsvHeader = "date,mean_tod,count,is_weekend";
inline constexpr std::string_view kAreaCsvHeader =
    "bin_start,morning_pct,afternoon_pct,evening_pct,night_pct,hello_pct,total";
inline constexpr std::string_view kBoxplotCsvHeader =
    "country,lang,class,count,min,q1,median,q3,max";

void write_csv(std::ostream& out, std::span<const CountryTableRow> rows);
void write_csv(std::ostream& out, const DailySeries& series);
void write_csv(std::ostream& out, const AreaSeries& series);
void write_csv(std::ostream& out, const BoxplotSummary& summary);

/// Line chart of one or more daily series; weekends shaded, holidays of
/// `country` drawn as labelled markers.
void write_daily_svg(std::ostream& out, std::span<const DailySeries> series,
                     std::span<const Holiday> holidays, std::string_view country,
                     std::string_view title);
void write_area_svg(std::ostream& out, const AreaSeries& series, std::string_view title);
void write_boxplot_svg(std::ostream& out, const BoxplotSummary& summary, std::string_view title);

/// Writes through a temporary stream and throws IoError if the file cannot be
/// created or the write fails.
void emit_to_file(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer);

/// "%.6g" formatting shared by every CSV writer.
std::string format_real(double value);

}  // namespace greetground
