#include "greetground/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <tuple>

#include <fmt/format.h>

#include "greetground/error.hpp"
#include "greetground/stats.hpp"
#include "tsv.hpp"

namespace greetground {

std::string format_real(double value) { return fmt::format("{:.6g}", value); }

// ---------------------------------------------------------------------------

std::vector<CountryTableRow> country_table(std::span<const GroundedEvent> events,
                                           const TableOptions& options) {
  using Key = std::tuple<std::string, std::string, std::size_t>;
  std::map<Key, CircularAccumulator> cells;
  for (const auto& e : events) {
    if (!e.official_lang && !options.include_foreign) continue;
    cells[Key{e.country, e.lang, index_of(e.cls)}].add(e.local_tod_s);
  }

  std::vector<CountryTableRow> rows;
  std::map<std::pair<std::string, std::string>, std::int32_t> morning_mean;
  for (const auto& [key, acc] : cells) {
    if (acc.count() < options.min_count) continue;
    const auto& [country, lang, cls_index] = key;
    CountryTableRow row;
    row.country = country;
    row.lang = lang;
    row.cls = kAllGreetingClasses[cls_index];
    row.count = acc.count();
    try {
      row.mean_tod_s = circular_mean(acc);
    } catch (const CircularStatsError&) {
      continue;
    }
    row.resultant = resultant_length(acc);
    if (row.cls == GreetingClass::Morning) morning_mean[{country, lang}] = row.mean_tod_s;
    rows.push_back(std::move(row));
  }

  auto group_rank = [&](const CountryTableRow& r) {
    auto it = morning_mean.find({r.country, r.lang});
    return it == morning_mean.end() ? std::pair{1, 0} : std::pair{0, it->second};
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const CountryTableRow& a, const CountryTableRow& b) {
    auto ra = group_rank(a), rb = group_rank(b);
    return std::tie(ra, a.country, a.lang) < std::tie(rb, b.country, b.lang);
  });
  return rows;
}

// ---------------------------------------------------------------------------

DailySeries daily_series(std::span<const GroundedEvent> events, std::string_view country,
                         GreetingClass cls, std::optional<std::string_view> lang) {
  std::map<LocalDate, CircularAccumulator> days;
  for (const auto& e : events) {
    if (e.country != country || e.cls != cls) continue;
    if (lang ? e.lang != *lang : !e.official_lang) continue;
    days[e.local_date].add(e.local_tod_s);
  }
  DailySeries series;
  series.label = fmt::format("{}_{}_{}", country, to_string(cls), lang ? *lang : "official");
  for (const auto& [date, acc] : days) {
    try {
      series.points.push_back(DailyPoint{date, circular_mean(acc), acc.count(), is_weekend(date)});
    } catch (const CircularStatsError&) {
      // A day whose samples cancel out has no mean; leave it out.
    }
  }
  return series;
}

// ---------------------------------------------------------------------------

AreaSeries area_series(std::span<const GroundedEvent> events, std::string_view country,
                       std::int32_t width_s, bool include_foreign) {
  check_bin_width(width_s);
  AreaSeries series;
  series.country = std::string(country);
  series.width_s = width_s;
  series.bins.resize(static_cast<std::size_t>(kSecondsPerDay / width_s));
  for (std::size_t i = 0; i < series.bins.size(); ++i)
    series.bins[i].bin_start_s = static_cast<std::int32_t>(i) * width_s;

  for (const auto& e : events) {
    if (e.country != country || (!e.official_lang && !include_foreign)) continue;
    auto& bin = series.bins[static_cast<std::size_t>(e.local_tod_s / width_s)];
    ++bin.counts[index_of(e.cls)];
    ++bin.total;
  }
  for (auto& bin : series.bins) {
    if (bin.empty()) continue;
    for (std::size_t c = 0; c < kGreetingClassCount; ++c)
      bin.shares_pct[c] = 100.0 * static_cast<double>(bin.counts[c]) / static_cast<double>(bin.total);
  }
  return series;
}

// ---------------------------------------------------------------------------

std::string BoxplotKey::label() const { return fmt::format("{}_{}_{}", country, lang, to_string(cls)); }

BoxplotSummary boxplot_summary(std::span<const GroundedEvent> events,
                               std::span<const BoxplotKey> keys) {
  static constexpr std::array<double, 5> kLevels{0.0, 0.25, 0.5, 0.75, 1.0};
  BoxplotSummary summary;
  for (const auto& key : keys) {
    std::vector<std::int32_t> samples;
    for (const auto& e : events)
      if (e.country == key.country && e.lang == key.lang && e.cls == key.cls)
        samples.push_back(e.local_tod_s);
    if (samples.empty()) {
      summary.warnings.push_back(key.label() + ": no events, group skipped");
      continue;
    }
    try {
      auto q = rotated_quantiles(samples, kLevels);
      BoxplotRow row{key, samples.size(), {}};
      std::copy(q.begin(), q.end(), row.five.begin());
      summary.rows.push_back(std::move(row));
    } catch (const CircularStatsError&) {
      summary.warnings.push_back(key.label() + ": mean direction undefined, group skipped");
    }
  }
  return summary;
}

// ---------------------------------------------------------------------------

std::vector<Holiday> parse_holidays(std::string_view tsv) {
  std::vector<Holiday> out;
  detail::for_each_tsv_row(tsv, [&](std::size_t line, const std::vector<std::string_view>& cols) {
    if (cols.size() != 3)
      throw DataError(fmt::format("holidays line {}: expected 3 columns", line), line);
    auto iso2 = detail::trim(cols[0]);
    auto date = parse_date(detail::trim(cols[1]));
    if (!detail::is_iso2(iso2) || !date)
      throw DataError(fmt::format("holidays line {}: bad country or date", line), line);
    out.push_back(Holiday{std::string(iso2), *date, std::string(detail::trim(cols[2]))});
  });
  return out;
}

std::vector<Holiday> load_holidays(const std::filesystem::path& path) {
  return parse_holidays(detail::read_file(path));
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& out, std::span<const CountryTableRow> rows) {
  out << kTableCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.country << ',' << r.lang << ',' << to_string(r.cls) << ',' << format_hhmmss(r.mean_tod_s)
        << ',' << r.count << ',' << format_real(r.resultant) << '\n';
}

void write_csv(std::ostream& out, const DailySeries& series) {
  out << kDailyCsvHeader << '\n';
  for (const auto& p : series.points)
    out << format_date(p.date) << ',' << format_hhmmss(p.mean_tod_s) << ',' << p.count << ','
        << (p.is_weekend ? 1 : 0) << '\n';
}

void write_csv(std::ostream& out, const AreaSeries& series) {
  out << kAreaCsvHeader << '\n';
  for (const auto& bin : series.bins) {
    out << format_hhmmss(bin.bin_start_s);
    for (double share : bin.shares_pct) out << ',' << format_real(share);
    out << ',' << bin.total << '\n';
  }
}

void write_csv(std::ostream& out, const BoxplotSummary& summary) {
  out << kBoxplotCsvHeader << '\n';
  for (const auto& row : summary.rows) {
    out << row.key.country << ',' << row.key.lang << ',' << to_string(row.key.cls) << ',' << row.count;
    for (auto v : row.five) out << ',' << format_hhmmss(v);
    out << '\n';
  }
}

void emit_to_file(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    writer(out);
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

}  // namespace greetground
