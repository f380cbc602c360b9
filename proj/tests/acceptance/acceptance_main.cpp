// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "binomial_oracle.hpp"
#include "commands.hpp"
#include "greetground/events_io.hpp"
#include "greetground/report.hpp"
#include "greetground/stats.hpp"
#include "greetground/synth.hpp"
#include "greetground/temporal.hpp"
#include "test_support.hpp"

namespace gg = greetground;
namespace fs = std::filesystem;
using gg::testing::ShippedData;
using gg::testing::slurp;
using gg::testing::TempDir;
using gg::testing::ymd;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::int32_t circ_diff(std::int32_t a, std::int32_t b) {
  std::int32_t d = ((a - b) % gg::kSecondsPerDay + gg::kSecondsPerDay) % gg::kSecondsPerDay;
  return d > gg::kSecondsPerDay / 2 ? d - gg::kSecondsPerDay : d;
}

// Every conservation check made anywhere in the suite is recorded here.
struct ConservationLog {
  std::uint64_t checked = 0;
  std::vector<std::string> failures;

  void check(std::string_view corpus, const gg::IngestCounters& c) {
    ++checked;
    if (!c.conserved())
      failures.push_back(fmt::format("{}: in={} out={} drops={}", corpus, c.records_in, c.events_out,
                                     c.total_drops()));
  }
} conservation;

gg::cli::RunConfig base_config(const fs::path& out_dir) {
  gg::cli::RunConfig config;
  config.apply_defaults();
  config.output_dir = out_dir;
  return config;
}

std::vector<gg::GroundedEvent> ground_lines(const std::vector<std::string>& lines, std::string_view name) {
  gg::IngestCounters counters;
  std::vector<gg::GroundedEvent> events;
  const auto ctx = ShippedData::get().context();
  for (const auto& line : lines)
    if (auto e = gg::process_line(line, 0, ctx, counters)) events.push_back(std::move(*e));
  conservation.check(name, counters);
  return events;
}

// ---------------------------------------------------------------------------

Outcome ac1_binomial() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20161109);
  double worst = 0.0;
  std::string worst_at = "-";
  std::uint64_t subnormal = 0, subnormal_failures = 0;
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    gg::testing::BinomialOracle oracle(n);
    std::uniform_int_distribution<std::uint64_t> pick(0, n);
    for (int i = 0; i < 50; ++i) {
      const auto k = pick(rng);
      // Below DBL_MIN the answer is a subnormal double whose spacing alone
      // exceeds 1e-10 of its value, so one spacing is added to the relative
      // bound there (and values under half a spacing round to 0).
      const long double expected = oracle.p_value(k);
      const double actual = gg::binomial_two_sided(k, n);
      const long double diff = std::fabs(static_cast<long double>(actual) - expected);
      double rel = 0.0;
      if (expected >= std::numeric_limits<double>::min()) {
        rel = static_cast<double>(diff / expected);
      } else {
        ++subnormal;
        if (diff > 1e-10L * expected + std::numeric_limits<double>::denorm_min()) ++subnormal_failures;
      }
      if (rel > worst) {
        worst = rel;
        worst_at = fmt::format("k={} n={}", k, n);
      }
    }
  }
  const double elapsed = seconds_since(start);
  const double p1 = gg::binomial_two_sided(5, 10);
  const double p2 = gg::binomial_two_sided(0, 20);
  const double p3 = gg::binomial_two_sided(60, 100);
  const bool spots = p1 == 1.0 && std::abs(p2 - 1.9073486328125e-06) < 1e-16 &&
                     std::abs(p3 - 0.0569) < 5e-5;
  return {worst <= 1e-10 && subnormal_failures == 0 && spots && elapsed < 60.0,
          fmt::format("max rel err {:.3g} ({}), subnormal cases {} ({} off), (5,10)={} (0,20)={:.5g} "
                      "(60,100)={:.4f}, {:.2f}s",
                      worst, worst_at, subnormal, subnormal_failures, p1, p2, p3, elapsed)};
}

// Bins of 10 minutes: class A dominant until 14:00, mixed to 14:40, B after.
std::string boundary_fixture_corpus() {
  std::string body;
  const std::int32_t offset = 3600;
  const auto day = ymd(2016, 11, 9);
  const std::int64_t day_utc = std::int64_t{day.time_since_epoch().count()} * gg::kSecondsPerDay;
  auto emit = [&](std::int32_t tod, std::string_view text) {
    body += fmt::format(
        R"({{"created_at":"{}","utc_offset":{},"location":"Madrid","text":"{}","lang":"es"}})",
        gg::format_rfc3339(day_utc + tod - offset), offset, text);
    body += '\n';
  };
  for (std::int32_t bin = 0; bin < 144; ++bin) {
    const std::int32_t base = bin * 600;
    int morning = 0, afternoon = 0;
    if (bin < 84) morning = 20;
    else if (bin < 88) morning = afternoon = 5;
    else afternoon = 20;
    for (int i = 0; i < morning; ++i) emit(base + 29 * i % 600, "¡Buenos días!");
    for (int i = 0; i < afternoon; ++i) emit(base + 31 * i % 600, "buenas tardes a todos");
  }
  return body;
}

Outcome ac2_boundary() {
  TempDir dir("gg-ac2");
  gg::testing::write_text(dir / "fixture.jsonl", boundary_fixture_corpus());
  auto config = base_config(dir.path());
  config.inputs = {(dir / "fixture.jsonl").string()};
  const auto grounded = gg::cli::cmd_ground(config);
  conservation.check("boundary fixture", grounded.counters);

  config.events = dir / "events.csv";
  gg::cli::BoundaryRequest request;
  request.country = "ES";
  const auto result = gg::cli::cmd_boundary(config, request);
  const auto csv = slurp(dir / "boundary.csv");
  const bool trailer = csv.ends_with("trailer,14:00:00,14:40:00,,boundary\n");
  const bool ok = result.has_boundary() && *result.a_end_s == 14 * 3600 &&
                  *result.b_start_s == 14 * 3600 + 40 * 60 && trailer &&
                  grounded.counters.total_drops() == 0;
  return {ok, fmt::format("a_end={} b_start={} events={} drops={}",
                          result.a_end_s ? gg::format_hhmmss(*result.a_end_s) : "-",
                          result.b_start_s ? gg::format_hhmmss(*result.b_start_s) : "-",
                          grounded.counters.events_out, grounded.counters.total_drops())};
}

Outcome ac3_synthetic_recovery() {
  const auto start = Clock::now();
  const gg::SynthSpec spec{"ES", "es", gg::GreetingClass::Morning, 8 * 3600 + 30 * 60, 2700, 50000,
                           ymd(2016, 11, 1), ymd(2016, 11, 30), 0, 3600, "Madrid"};
  const auto lines = gg::generate_records({spec}, 42, ShippedData::get().context());
  gg::IngestCounters counters;
  std::vector<gg::GroundedEvent> events;
  const auto ctx = ShippedData::get().context();
  for (const auto& line : lines)
    if (auto e = gg::process_line(line, 0, ctx, counters)) events.push_back(std::move(*e));
  conservation.check("synthetic 50k", counters);
  const auto rows = gg::country_table(events);
  const double elapsed = seconds_since(start);
  if (rows.size() != 1) return {false, fmt::format("expected one table row, got {}", rows.size())};
  const auto error = circ_diff(rows[0].mean_tod_s, spec.mean_tod_s);
  const bool ok = std::abs(error) <= 60 && counters.total_drops() == 0 && counters.events_out == 50000 &&
                  elapsed < 30.0;
  return {ok, fmt::format("mean {} (error {} s), drops {}, {:.2f}s", gg::format_hhmmss(rows[0].mean_tod_s),
                          error, counters.total_drops(), elapsed)};
}

Outcome ac4_weekend_effect() {
  const gg::SynthSpec spec{"US", "en", gg::GreetingClass::Morning, 8 * 3600, 2700, 40000,
                           ymd(2016, 11, 1), ymd(2016, 11, 30), 3600, -18000, "New York"};
  const auto events = ground_lines(gg::generate_records({spec}, 7, ShippedData::get().context()),
                                   "weekend synthetic");
  const auto series = gg::daily_series(events, "US", gg::GreetingClass::Morning);
  gg::CircularAccumulator weekend, weekday;
  for (const auto& p : series.points) {
    (p.is_weekend ? weekend : weekday).add(p.mean_tod_s);
  }
  if (weekend.empty() || weekday.empty()) return {false, "no weekend or weekday points"};
  const auto shift = circ_diff(gg::circular_mean(weekend), gg::circular_mean(weekday));
  return {std::abs(shift - 3600) <= 120,
          fmt::format("weekend - weekday = {} s over {} days", shift, series.points.size())};
}

Outcome ac5_local_time() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<gg::UnixSeconds> instant(-2'000'000'000LL, 4'000'000'000LL);
  std::uint64_t checked = 0, failures = 0;
  for (std::int32_t offset = gg::kMinOffsetSeconds; offset <= gg::kMaxOffsetSeconds; offset += 900) {
    for (int i = 0; i < 100; ++i) {
      const auto utc = instant(rng);
      const auto lt = gg::local_time(utc, offset);
      const std::int64_t days = lt.date.time_since_epoch().count();
      ++checked;
      if (utc + offset != days * gg::kSecondsPerDay + lt.tod_s || lt.tod_s < 0 || lt.tod_s >= gg::kSecondsPerDay)
        ++failures;
    }
  }
  return {failures == 0 && checked == 105 * 100,
          fmt::format("{} offsets x 100 instants, {} violations", checked / 100, failures)};
}

Outcome ac7_circular() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::int32_t> tod(0, gg::kSecondsPerDay - 1);
  int rotation_failures = 0, merge_failures = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const auto centre = tod(rng);
    std::uniform_int_distribution<std::int32_t> noise(-3 * 3600, 3 * 3600);
    std::vector<std::int32_t> samples(1 + iter % 200);
    for (auto& s : samples) s = ((centre + noise(rng)) % gg::kSecondsPerDay + gg::kSecondsPerDay) % gg::kSecondsPerDay;
    gg::CircularAccumulator base, rotated;
    const auto shift = tod(rng);
    for (auto s : samples) {
      base.add(s);
      rotated.add((s + shift) % gg::kSecondsPerDay);
    }
    if (std::abs(circ_diff(gg::circular_mean(rotated), (gg::circular_mean(base) + shift) % gg::kSecondsPerDay)) > 1)
      ++rotation_failures;

    std::vector<gg::CircularAccumulator> parts(1 + rng() % 9);
    for (auto s : samples) parts[rng() % parts.size()].add(s);
    std::shuffle(parts.begin(), parts.end(), rng);
    gg::CircularAccumulator merged;
    for (const auto& p : parts) merged = gg::acc_merge(merged, p);
    const double scale = std::max(1.0, std::hypot(base.sum_sin(), base.sum_cos()));
    const double n = static_cast<double>(samples.size());
    if (merged.count() != base.count() ||
        std::abs(merged.sum_sin() - base.sum_sin()) > 1e-9 * std::max(scale, n) ||
        std::abs(merged.sum_cos() - base.sum_cos()) > 1e-9 * std::max(scale, n))
      ++merge_failures;
  }
  bool antipodal = false;
  try {
    gg::CircularAccumulator acc;
    acc.add(6 * 3600);
    acc.add(18 * 3600);
    gg::circular_mean(acc);
  } catch (const gg::CircularStatsError& e) {
    antipodal = e.kind() == gg::CircularStatsError::Kind::Undefined;
  }
  return {rotation_failures == 0 && merge_failures == 0 && antipodal,
          fmt::format("rotation violations {}, merge violations {}, antipodal->Undefined {}", rotation_failures,
                      merge_failures, antipodal ? "yes" : "no")};
}

Outcome ac8_golden() {
  const fs::path golden = gg::testing::fixtures_dir() / "golden";
  const std::vector<std::string> compared{"events.csv", "summary.json", "table.csv",
                                          "daily_US_morning_official.csv", "area_ES.csv", "boundary.csv"};
  const std::vector<std::string> run_only{"daily_US_morning.svg", "area_ES.svg"};

  auto produce = [&](const fs::path& dir, unsigned shards) {
    auto config = base_config(dir);
    config.inputs = {(golden / "corpus.jsonl").string()};
    config.shard_count = shards;
    conservation.check("golden corpus", gg::cli::cmd_ground(config).counters);
    config.events = dir / "events.csv";
    config.min_count = 20;
    std::ostringstream log;
    gg::cli::cmd_report(config, {.kind = gg::cli::ReportKind::Table}, log);
    gg::cli::cmd_report(config, {.kind = gg::cli::ReportKind::Daily, .country = "US"}, log);
    config.width_s = 3600;
    gg::cli::cmd_report(config, {.kind = gg::cli::ReportKind::Area, .country = "ES"}, log);
    gg::cli::BoundaryRequest request;
    request.country = "ES";
    gg::cli::cmd_boundary(config, request);
  };

  TempDir first("gg-ac8a"), second("gg-ac8b");
  produce(first.path(), 1);
  produce(second.path(), 4);

  std::vector<std::string> mismatches;
  for (const auto& name : compared) {
    const auto expected = slurp(golden / name);
    if (slurp(first / name) != expected) mismatches.push_back(name + " vs oracle");
    if (slurp(second / name) != expected) mismatches.push_back(name + " (4 shards) vs oracle");
  }
  for (const auto& name : run_only)
    if (slurp(first / name).empty() || slurp(first / name) != slurp(second / name))
      mismatches.push_back(name + " across runs");
  std::string detail = fmt::format("{} files compared", compared.size() * 2 + run_only.size());
  for (const auto& m : mismatches) detail += "; mismatch " + m;
  return {mismatches.empty(), detail};
}

Outcome ac9_table_format() {
  std::vector<std::string> lines;
  std::vector<gg::SynthSpec> specs;
  auto add = [&](std::string c, std::string l, gg::GreetingClass k, std::int32_t mean, std::int32_t off,
                 std::string loc) {
    specs.push_back({c, l, k, mean, 1800, 600, ymd(2016, 11, 1), ymd(2016, 11, 30), 0, off, loc});
  };
  using gg::GreetingClass;
  add("ES", "es", GreetingClass::Morning, 9 * 3600 + 42 * 60, 3600, "Madrid");
  add("ES", "es", GreetingClass::Afternoon, 16 * 3600, 3600, "Madrid");
  add("ES", "es", GreetingClass::Night, 23 * 3600 + 50 * 60, 3600, "Madrid");
  add("ES", "es", GreetingClass::Hello, 13 * 3600, 3600, "Madrid");
  add("GB", "en", GreetingClass::Morning, 8 * 3600 + 40 * 60, 0, "London");
  add("GB", "en", GreetingClass::Night, 23 * 3600 + 30 * 60, 0, "London");
  add("JP", "ja", GreetingClass::Morning, 7 * 3600 + 50 * 60, 32400, "Tokyo");
  add("JP", "ja", GreetingClass::Evening, 19 * 3600, 32400, "Tokyo");
  const auto events = ground_lines(gg::generate_records(specs, 9, ShippedData::get().context()), "table synthetic");
  const auto rows = gg::country_table(events);
  std::ostringstream csv;
  gg::write_csv(csv, std::span<const gg::CountryTableRow>(rows));

  std::istringstream in(csv.str());
  std::string header, line;
  std::getline(in, header);
  bool ok = header == gg::kTableCsvHeader && rows.size() == specs.size();
  std::vector<std::string> order;
  std::int32_t last_morning = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::getline(in, line);
    const auto fields = std::count(line.begin(), line.end(), ',') + 1;
    ok = ok && fields == 6 && gg::parse_hhmmss(gg::format_hhmmss(rows[i].mean_tod_s));
    if (i == 0 || rows[i].country != rows[i - 1].country) {
      order.push_back(rows[i].country);
      ok = ok && rows[i].cls == GreetingClass::Morning && rows[i].mean_tod_s > last_morning;
      last_morning = rows[i].mean_tod_s;
    } else {
      ok = ok && gg::index_of(rows[i].cls) > gg::index_of(rows[i - 1].cls);
    }
  }
  ok = ok && order == std::vector<std::string>{"JP", "GB", "ES"};
  std::string joined;
  for (const auto& c : order) joined += (joined.empty() ? "" : " < ") + c;
  return {ok, fmt::format("{} rows, group order by morning mean: {}", rows.size(), joined)};
}

Outcome ac10_throughput() {
  auto config = base_config(".");
  const auto result = gg::cli::cmd_bench(config, 1'000'000, 1);
  conservation.check("bench 1M", result.counters);
  return {result.records == 1'000'000 && result.seconds < 60.0,
          fmt::format("{} records in {:.2f}s ({:.0f} records/s, {} events)", result.records, result.seconds,
                      result.records_per_second, result.events)};
}

Outcome ac6_conservation() {
  std::string detail = fmt::format("{} corpora checked", conservation.checked);
  for (const auto& f : conservation.failures) detail += "; violated " + f;
  return {conservation.failures.empty() && conservation.checked >= 6, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 binomial oracle equivalence", ac1_binomial},
      {"AC2 boundary reproduction", ac2_boundary},
      {"AC3 synthetic recovery", ac3_synthetic_recovery},
      {"AC4 weekend effect", ac4_weekend_effect},
      {"AC5 local-time identity", ac5_local_time},
      {"AC7 circular-statistics properties", ac7_circular},
      {"AC8 golden end-to-end", ac8_golden},
      {"AC9 table format and ordering", ac9_table_format},
      {"AC10 throughput", ac10_throughput},
      // Conservation is asserted on every corpus the other criteria ground.
      {"AC6 conservation", ac6_conservation},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << " -- " << outcome.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : fmt::format("{} criteria failed", failed)) << std::endl;
  return failed == 0 ? 0 : 1;
}
