#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>
#include <vector>

#include "greetground/geo.hpp"
#include "greetground/ingest.hpp"
#include "greetground/lexicon.hpp"
#include "greetground/stats.hpp"
#include "greetground/synth.hpp"
#include "greetground/temporal.hpp"
#include "greetground/text.hpp"

namespace gg = greetground;

namespace {

struct Fixture {
  std::filesystem::path dir = GREETGROUND_BENCH_DATA_DIR;
  gg::Lexicon lexicon = gg::load_lexicon(dir / "lexicon.tsv");
  gg::Gazetteer gazetteer = gg::load_gazetteer(dir / "gazetteer.tsv", gg::GazetteerFormat::Simple);
  gg::CountryRegistry registry = gg::load_timezone_table(dir / "registry.tsv");
  gg::GroundingContext context() const { return {lexicon, gazetteer, registry}; }

  static const Fixture& get() {
    static const Fixture f;
    return f;
  }
};

std::vector<std::string> corpus(std::uint64_t n) {
  using std::chrono::November;
  const gg::LocalDate from{std::chrono::year{2016} / November / 1};
  const gg::LocalDate to{std::chrono::year{2016} / November / 30};
  const std::vector<gg::SynthSpec> specs{
      {"US", "en", gg::GreetingClass::Morning, 30600, 2700, n / 2, from, to, 3600, -18000, "New York"},
      {"ES", "es", gg::GreetingClass::Afternoon, 57600, 3600, n - n / 2, from, to, 0, 3600, "Madrid"}};
  return gg::generate_records(specs, 1, Fixture::get().context());
}

void BM_NormalizeAscii(benchmark::State& state) {
  const std::string text = "Good   Morning to everyone in the office";
  for (auto _ : state) benchmark::DoNotOptimize(gg::normalize_text(text));
}
BENCHMARK(BM_NormalizeAscii);

void BM_NormalizeUnicode(benchmark::State& state) {
  const std::string text = "¡BUENOS DÍAS a todos desde Málaga!";
  for (auto _ : state) benchmark::DoNotOptimize(gg::normalize_text(text));
}
BENCHMARK(BM_NormalizeUnicode);

void BM_MatchGreeting(benchmark::State& state) {
  const auto& lex = Fixture::get().lexicon;
  const std::string text = "well, good afternoon to all of you out there";
  for (auto _ : state) benchmark::DoNotOptimize(gg::match_greeting(lex, text, "en"));
}
BENCHMARK(BM_MatchGreeting);

void BM_ParseRecord(benchmark::State& state) {
  const auto lines = corpus(256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gg::parse_record(lines[i++ % lines.size()]));
}
BENCHMARK(BM_ParseRecord);

void BM_ProcessLine(benchmark::State& state) {
  const auto lines = corpus(4096);
  const auto ctx = Fixture::get().context();
  gg::IngestCounters counters;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gg::process_line(lines[i++ % lines.size()], 0, ctx, counters));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_ProcessLine);

void BM_Binomial(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gg::binomial_two_sided(n * 49 / 100, n));
}
BENCHMARK(BM_Binomial)->Arg(100)->Arg(10'000)->Arg(1'000'000);

void BM_CircularAccumulate(benchmark::State& state) {
  std::int32_t t = 0;
  gg::CircularAccumulator acc;
  for (auto _ : state) {
    acc.add(t);
    t = (t + 7919) % gg::kSecondsPerDay;
  }
  benchmark::DoNotOptimize(acc.sum_sin());
}
BENCHMARK(BM_CircularAccumulate);

}  // namespace
BENCHMARK_MAIN();
