#include "commands.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "greetground/error.hpp"
#include "greetground/events_io.hpp"
#include "greetground/synth.hpp"

#ifndef GREETGROUND_DEFAULT_DATA_DIR
#define GREETGROUND_DEFAULT_DATA_DIR "data"
#endif

namespace greetground::cli {

namespace fs = std::filesystem;

fs::path default_data_dir() { return fs::path(GREETGROUND_DEFAULT_DATA_DIR); }

void RunConfig::apply_defaults() {
  const auto dir = default_data_dir();
  if (lexicon.empty()) lexicon = dir / "lexicon.tsv";
  if (gazetteer.empty()) gazetteer = dir / "gazetteer.tsv";
  if (registry.empty()) registry = dir / "registry.tsv";
}

void RunConfig::validate() const {
  check_bin_width(width_s);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError(fmt::format("alpha {} outside (0, 1]", alpha));
}

namespace {

struct Fixtures {
  Lexicon lexicon;
  Gazetteer gazetteer;
  CountryRegistry registry;

  GroundingContext context() const { return {lexicon, gazetteer, registry}; }
};

Fixtures load_fixtures(const RunConfig& config) {
  return Fixtures{load_lexicon(config.lexicon), load_gazetteer(config.gazetteer, config.gazetteer_format),
                  load_timezone_table(config.registry)};
}

void ensure_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

bool has_wildcard(std::string_view s) { return s.find_first_of("*?[") != std::string_view::npos; }

GreetingClass class_from_flag(const std::string& token) {
  auto cls = parse_greeting_class(token);
  if (!cls) throw ConfigError("unknown greeting class '" + token + "'");
  return *cls;
}

std::vector<GroundedEvent> filter_events(const std::vector<GroundedEvent>& events, std::string_view country,
                                         const std::optional<std::string>& lang) {
  std::vector<GroundedEvent> out;
  for (const auto& e : events) {
    if (e.country != country) continue;
    if (lang ? e.lang != *lang : !e.official_lang) continue;
    out.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<fs::path> expand_inputs(const std::vector<std::string>& patterns) {
  std::vector<fs::path> files;
  for (const auto& pattern : patterns) {
    const fs::path p(pattern);
    if (!has_wildcard(p.filename().string())) {
      if (!fs::is_regular_file(p)) throw DataError("input not found: " + pattern);
      files.push_back(p);
      continue;
    }
    const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    std::vector<fs::path> matched;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      if (!entry.is_regular_file()) continue;
      if (fnmatch(p.filename().c_str(), entry.path().filename().c_str(), 0) == 0)
        matched.push_back(entry.path());
    }
    if (matched.empty()) throw DataError("no input matches " + pattern);
    std::sort(matched.begin(), matched.end());
    files.insert(files.end(), matched.begin(), matched.end());
  }
  return files;
}

GroundOutcome ground_files(const std::vector<fs::path>& files, const GroundingContext& context,
                           unsigned shard_count) {
  std::vector<GroundOutcome> shards(files.size());
  std::vector<std::exception_ptr> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < files.size(); i = next++) {
      try {
        std::ifstream in(files[i], std::ios::binary);
        if (!in) throw DataError("cannot open " + files[i].string());
        auto& shard = shards[i];
        shard.counters = ground_stream(in, context, [&](GroundedEvent&& e) { shard.events.push_back(std::move(e)); });
        if (in.bad()) throw IoError("read failed for " + files[i].string());
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (shard_count == 0) shard_count = std::max(1u, std::thread::hardware_concurrency());
  const auto threads = std::min<std::size_t>(shard_count, files.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  GroundOutcome merged;
  for (auto& shard : shards) {
    merged.counters.merge(shard.counters);
    merged.events.insert(merged.events.end(), std::make_move_iterator(shard.events.begin()),
                         std::make_move_iterator(shard.events.end()));
  }
  return merged;
}

GroundOutcome cmd_ground(const RunConfig& config) {
  config.validate();
  const auto files = expand_inputs(config.inputs);
  const auto fixtures = load_fixtures(config);
  auto outcome = ground_files(files, fixtures.context(), config.shard_count);
  ensure_output_dir(config.output_dir);
  emit_to_file(config.output_dir / "events.csv", [&](std::ostream& out) { write_events_csv(out, outcome.events); });
  emit_to_file(config.output_dir / "summary.json",
               [&](std::ostream& out) { out << counters_to_json(outcome.counters); });
  return outcome;
}

std::vector<fs::path> cmd_report(const RunConfig& config, const ReportRequest& request, std::ostream& log) {
  config.validate();
  const auto events = read_events_csv(config.events);
  ensure_output_dir(config.output_dir);
  std::vector<fs::path> written;
  auto emit = [&](const fs::path& name, const std::function<void(std::ostream&)>& writer) {
    const auto path = config.output_dir / name;
    emit_to_file(path, writer);
    written.push_back(path);
  };

  switch (request.kind) {
    case ReportKind::Table: {
      const auto rows = country_table(events, {config.min_count, config.include_foreign});
      emit("table.csv", [&](std::ostream& out) { write_csv(out, rows); });
      break;
    }
    case ReportKind::Daily: {
      if (request.country.empty()) throw ConfigError("report daily needs --country");
      std::vector<DailySeries> series;
      if (request.langs.empty()) {
        series.push_back(daily_series(events, request.country, request.cls));
      } else {
        for (const auto& lang : request.langs)
          series.push_back(daily_series(events, request.country, request.cls, lang));
      }
      std::vector<Holiday> holidays;
      if (!config.holidays.empty()) holidays = load_holidays(config.holidays);
      for (const auto& s : series)
        emit("daily_" + s.label + ".csv", [&](std::ostream& out) { write_csv(out, s); });
      const auto title = fmt::format("Average time of {} greetings per day, {}", to_string(request.cls),
                                     request.country);
      emit(fmt::format("daily_{}_{}.svg", request.country, to_string(request.cls)),
           [&](std::ostream& out) { write_daily_svg(out, series, holidays, request.country, title); });
      break;
    }
    case ReportKind::Area: {
      if (request.country.empty()) throw ConfigError("report area needs --country");
      const auto area = area_series(events, request.country, config.width_s, config.include_foreign);
      emit("area_" + request.country + ".csv", [&](std::ostream& out) { write_csv(out, area); });
      emit("area_" + request.country + ".svg", [&](std::ostream& out) {
        write_area_svg(out, area, fmt::format("Greeting shares by time of day, {}", request.country));
      });
      break;
    }
    case ReportKind::Boxplot: {
      if (request.groups.empty()) throw ConfigError("report boxplot needs at least one --group");
      const auto summary = boxplot_summary(events, request.groups);
      for (const auto& w : summary.warnings) log << "warning: " << w << '\n';
      emit("boxplot.csv", [&](std::ostream& out) { write_csv(out, summary); });
      emit("boxplot.svg", [&](std::ostream& out) { write_boxplot_svg(out, summary, "Greeting times"); });
      break;
    }
  }
  return written;
}

BoundaryResult cmd_boundary(const RunConfig& config, const BoundaryRequest& request) {
  config.validate();
  if (request.class_a == request.class_b) throw ConfigError("--class-a and --class-b must differ");
  if (request.country.empty()) throw ConfigError("boundary needs --country");
  const auto events = filter_events(read_events_csv(config.events), request.country, request.lang);
  auto result = boundary_report(events, request.class_a, request.class_b, config.width_s,
                                BoundaryOptions{config.alpha, config.bonferroni});
  ensure_output_dir(config.output_dir);
  emit_to_file(config.output_dir / "boundary.csv", [&](std::ostream& out) { write_boundary_csv(out, result); });
  return result;
}

void cmd_synth(const RunConfig& config, const fs::path& spec_path, std::uint64_t seed, const fs::path& out) {
  const auto specs = load_synth_specs(spec_path);
  const auto fixtures = load_fixtures(config);
  const auto lines = generate_records(specs, seed, fixtures.context());
  if (out.has_parent_path()) ensure_output_dir(out.parent_path());
  emit_to_file(out, [&](std::ostream& o) {
    for (const auto& line : lines) o << line << '\n';
  });
}

namespace {

std::vector<SynthSpec> bench_specs(std::uint64_t n) {
  const auto from = *parse_date("2016-10-15");
  const auto to = *parse_date("2016-12-07");
  auto spec = [&](const char* country, const char* lang, GreetingClass cls, const char* mean,
                  std::int32_t offset, const char* location) {
    return SynthSpec{country, lang, cls, *parse_hhmmss(mean), 2700, 0, from, to, 1800, offset, location};
  };
  std::vector<SynthSpec> specs{
      spec("US", "en", GreetingClass::Morning, "08:33:00", -18000, "New York, USA"),
      spec("US", "es", GreetingClass::Morning, "08:09:00", -21600, "Houston, Texas"),
      spec("ES", "es", GreetingClass::Morning, "09:42:00", 3600, "Madrid, Spain"),
      spec("ES", "es", GreetingClass::Afternoon, "16:43:00", 3600, "Sevilla"),
      spec("BR", "pt", GreetingClass::Morning, "09:18:00", -7200, "São Paulo, Brasil"),
      spec("IN", "en", GreetingClass::Night, "00:03:00", 19800, "Mumbai, India"),
      spec("JP", "ja", GreetingClass::Morning, "08:07:00", 32400, "東京"),
      spec("GB", "en", GreetingClass::Hello, "14:13:00", 0, "London"),
  };
  for (std::size_t i = 0; i < specs.size(); ++i)
    specs[i].count = n / specs.size() + (i < n % specs.size() ? 1 : 0);
  return specs;
}

}  // namespace

BenchResult cmd_bench(const RunConfig& config, std::uint64_t n, std::uint64_t seed) {
  const auto fixtures = load_fixtures(config);
  const auto context = fixtures.context();
  const auto lines = generate_records(bench_specs(n), seed, context);

  BenchResult result;
  result.records = lines.size();
  using Key = std::tuple<std::string, std::string, GreetingClass>;
  std::map<Key, CircularAccumulator> cells;

  const auto start = std::chrono::steady_clock::now();
  std::uint64_t offset = 0;
  for (const auto& line : lines) {
    if (auto event = process_line(line, offset, context, result.counters))
      cells[Key{event->country, event->lang, event->cls}].add(event->local_tod_s);
    offset += line.size() + 1;
  }
  const auto stop = std::chrono::steady_clock::now();

  result.events = result.counters.events_out;
  result.seconds = std::chrono::duration<double>(stop - start).count();
  if (result.records > 0 && result.seconds > 0.0)
    result.records_per_second = static_cast<double>(result.records) / result.seconds;
  return result;
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kFormatsHelp = R"(File formats:
  input records     JSON lines: {"created_at":"2016-11-09T12:34:56Z","utc_offset":-18000,
                    "location":"Springfield","text":"good morning","lang":"en","retweeted":false}
                    utc_offset, location and lang may be null; unknown fields are ignored.
  lexicon TSV       lang<TAB>class<TAB>surface<TAB>flags   (flags: - | ambiguous,merged)
  gazetteer TSV     name<TAB>iso2<TAB>population           (--gazetteer-format simple)
                    GeoNames dump: name/asciiname/alternatenames/country/population at
                    columns 1/2/3/8/14                      (--gazetteer-format geonames)
  registry TSV      iso2<TAB>offset_seconds<TAB>official_langs (one row per offset)
  holidays TSV      iso2<TAB>YYYY-MM-DD<TAB>label
  synth spec TSV    country lang class mean_tod sigma_s count date_from date_to
                    weekend_shift_s offset_s location
  events CSV        country,lang,class,local_date,local_tod_s,official
  table CSV         country,lang,class,mean_tod,count,resultant
  daily CSV         date,mean_tod,count,is_weekend
  area CSV          bin_start,morning_pct,afternoon_pct,evening_pct,night_pct,hello_pct,total
  boxplot CSV       country,lang,class,count,min,q1,median,q3,max
  boundary CSV      bin_start_hhmmss,count_a,count_b,p_value,verdict
                    + trailer,<a_end>,<b_start>,,boundary | trailer,,,,no_boundary
Exit codes: 0 success, 1 usage/config error, 2 missing/invalid fixture, 3 I/O failure.)";

void add_fixture_options(CLI::App& cmd, RunConfig& config, std::string& gazetteer_format) {
  cmd.add_option("--lexicon", config.lexicon, "Greeting lexicon TSV (default: shipped data)");
  cmd.add_option("--gazetteer", config.gazetteer, "Gazetteer file (default: shipped data)");
  cmd.add_option("--gazetteer-format", gazetteer_format, "simple | geonames")
      ->check(CLI::IsMember({"simple", "geonames"}));
  cmd.add_option("--registry", config.registry, "Country registry TSV (default: shipped data)");
}

BoxplotKey parse_group(const std::string& text) {
  auto first = text.find(':');
  auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) throw ConfigError("--group must look like CC:lang:class, got " + text);
  return BoxplotKey{text.substr(0, first), text.substr(first + 1, second - first - 1),
                    class_from_flag(text.substr(second + 1))};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ground part-of-day greetings in timestamped, geolocated message corpora", "greetground"};
  app.footer(kFormatsHelp);
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);

  RunConfig config;
  std::string gazetteer_format = "simple";
  std::string class_token = "morning", class_a = "morning", class_b = "afternoon";
  std::optional<std::string> lang;
  std::vector<std::string> langs, groups;
  std::string country;
  fs::path spec_path, synth_out;
  std::uint64_t seed = 1, bench_n = 1000000;

  auto* ground = app.add_subcommand("ground", "Parse, filter and ground raw records into events");
  add_fixture_options(*ground, config, gazetteer_format);
  ground->add_option("--input,-i", config.inputs, "Input JSON-lines files or glob patterns")->required();
  ground->add_option("--out-dir,-o", config.output_dir, "Directory for events.csv and summary.json");
  ground->add_option("--shards", config.shard_count, "Worker threads (default: hardware concurrency)");

  auto* report = app.add_subcommand("report", "Country table, daily series, area shares or box plots");
  report->require_subcommand(1);
  report->add_option("--events,-e", config.events, "Grounded events CSV")->required();
  report->add_option("--out-dir,-o", config.output_dir, "Output directory");
  report->add_flag("--include-foreign", config.include_foreign,
                   "Keep events in languages that are not official in their country");
  auto* table = report->add_subcommand("table", "Average local time per country, language and class");
  table->add_option("--min-count", config.min_count, "Suppress cells with fewer events");
  auto* daily = report->add_subcommand("daily", "Per-day average time for one class in one country");
  daily->add_option("--country", country, "ISO 3166 alpha-2 code")->required();
  daily->add_option("--class", class_token, "Greeting class");
  daily->add_option("--lang", langs, "One series per language (default: official languages)");
  daily->add_option("--holidays", config.holidays, "Holiday annotations TSV");
  auto* area = report->add_subcommand("area", "Share of each class per time bin");
  area->add_option("--country", country, "ISO 3166 alpha-2 code")->required();
  area->add_option("--width", config.width_s, "Bin width in seconds");
  auto* boxplot = report->add_subcommand("boxplot", "Five-number summaries on the 24-hour circle");
  boxplot->add_option("--group", groups, "Group as CC:lang:class, repeatable")->required();

  auto* boundary = app.add_subcommand("boundary", "Binomial test per time bin between two classes");
  boundary->add_option("--events,-e", config.events, "Grounded events CSV")->required();
  boundary->add_option("--out-dir,-o", config.output_dir, "Directory for boundary.csv");
  boundary->add_option("--country", country, "ISO 3166 alpha-2 code")->required();
  boundary->add_option("--lang", lang, "Language (default: official languages)");
  boundary->add_option("--class-a", class_a, "First class (default morning)");
  boundary->add_option("--class-b", class_b, "Second class (default afternoon)");
  boundary->add_option("--width", config.width_s, "Bin width in seconds (default 600)");
  boundary->add_option("--alpha", config.alpha, "Significance level (default 0.05)");
  boundary->add_flag("--bonferroni", config.bonferroni, "Divide alpha by the number of non-empty bins");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus from a spec file");
  add_fixture_options(*synth, config, gazetteer_format);
  synth->add_option("--spec", spec_path, "Synth spec TSV")->required();
  synth->add_option("--seed", seed, "Random seed");
  synth->add_option("--out,-o", synth_out, "Output JSON-lines file")->required();

  auto* bench = app.add_subcommand("bench", "Time parse, filter, ground and accumulate");
  add_fixture_options(*bench, config, gazetteer_format);
  bench->add_option("--n,-n", bench_n, "Number of synthetic records");
  bench->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    config.gazetteer_format = gazetteer_format == "geonames" ? GazetteerFormat::GeoNames : GazetteerFormat::Simple;
    config.apply_defaults();

    if (*ground) {
      const auto outcome = cmd_ground(config);
      const auto& c = outcome.counters;
      err << fmt::format("records_in={} events_out={}", c.records_in, c.events_out);
      for (auto reason : kAllDropReasons) err << ' ' << to_string(reason) << '=' << c[reason];
      err << '\n';
    } else if (*report) {
      ReportRequest request;
      request.country = country;
      request.langs = langs;
      if (*table) {
        request.kind = ReportKind::Table;
      } else if (*daily) {
        request.kind = ReportKind::Daily;
        request.cls = class_from_flag(class_token);
      } else if (*area) {
        request.kind = ReportKind::Area;
      } else {
        request.kind = ReportKind::Boxplot;
        for (const auto& g : groups) request.groups.push_back(parse_group(g));
      }
      for (const auto& path : cmd_report(config, request, err)) err << "wrote " << path.string() << '\n';
    } else if (*boundary) {
      BoundaryRequest request{class_from_flag(class_a), class_from_flag(class_b), country, lang};
      const auto result = cmd_boundary(config, request);
      if (result.has_boundary()) {
        err << fmt::format("a_end={} b_start={}\n", format_hhmmss(*result.a_end_s % kSecondsPerDay),
                           format_hhmmss(*result.b_start_s));
      } else {
        err << "no boundary: no significant A run followed by a significant B bin\n";
      }
    } else if (*synth) {
      cmd_synth(config, spec_path, seed, synth_out);
      err << "wrote " << synth_out.string() << '\n';
    } else if (*bench) {
      const auto r = cmd_bench(config, bench_n, seed);
      out << fmt::format("records={} events={} seconds={:.3f} records_per_second={:.0f}\n", r.records,
                         r.events, r.seconds, r.records_per_second);
    }
  } catch (const Error& e) {
    err << "greetground: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Config: return kExitUsage;
      case ErrorKind::Data: return kExitFixture;
      case ErrorKind::Io: return kExitIo;
    }
  } catch (const fs::filesystem_error& e) {
    err << "greetground: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "greetground: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace greetground::cli
