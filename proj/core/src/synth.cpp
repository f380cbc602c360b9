#include "greetground/synth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "greetground/error.hpp"
#include "tsv.hpp"

namespace greetground {

std::uint64_t SynthRng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below(0)");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double SynthRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SynthRng::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::int32_t wrapped_normal_sample(std::int32_t mean_tod_s, double sigma_s, SynthRng& rng) {
  if (!(sigma_s > 0.0)) throw std::invalid_argument("wrapped_normal_sample: sigma must be positive");
  const auto draw = std::llround(static_cast<double>(mean_tod_s) + sigma_s * rng.standard_normal());
  auto tod = draw % kSecondsPerDay;
  if (tod < 0) tod += kSecondsPerDay;
  return static_cast<std::int32_t>(tod);
}

// ---------------------------------------------------------------------------

std::vector<SynthSpec> parse_synth_specs(std::string_view tsv) {
  std::vector<SynthSpec> specs;
  detail::for_each_tsv_row(tsv, [&](std::size_t line, const std::vector<std::string_view>& cols) {
    auto fail = [&](std::string_view what) {
      throw DataError(fmt::format("synth spec line {}: {}", line, what), line);
    };
    if (cols.size() != 11) fail(fmt::format("expected 11 columns, got {}", cols.size()));
    SynthSpec s;
    s.country = std::string(detail::trim(cols[0]));
    if (!detail::is_iso2(s.country)) fail("bad country code");
    s.lang = std::string(detail::trim(cols[1]));
    if (!detail::is_lang_code(s.lang)) fail("bad language code");
    auto cls = parse_greeting_class(detail::trim(cols[2]));
    if (!cls) fail("unknown class");
    s.cls = *cls;
    auto mean = parse_hhmmss(detail::trim(cols[3]));
    if (!mean) fail("mean_tod must be HH:MM:SS");
    s.mean_tod_s = *mean;
    auto sigma = detail::parse_int<std::int32_t>(cols[4]);
    if (!sigma) fail("sigma_s must be an integer");
    s.sigma_s = *sigma;
    auto count = detail::parse_int<std::uint64_t>(cols[5]);
    if (!count) fail("count must be a non-negative integer");
    s.count = *count;
    auto from = parse_date(detail::trim(cols[6]));
    auto to = parse_date(detail::trim(cols[7]));
    if (!from || !to) fail("dates must be YYYY-MM-DD");
    s.date_from = *from;
    s.date_to = *to;
    auto shift = detail::parse_int<std::int32_t>(cols[8]);
    auto offset = detail::parse_int<std::int32_t>(cols[9]);
    if (!shift || !offset) fail("weekend_shift_s and offset_s must be integers");
    s.weekend_shift_s = *shift;
    s.offset_s = *offset;
    s.location = std::string(detail::trim(cols[10]));
    specs.push_back(std::move(s));
  });
  return specs;
}

std::vector<SynthSpec> load_synth_specs(const std::filesystem::path& path) {
  return parse_synth_specs(detail::read_file(path));
}

namespace {

const LexiconEntry* surface_for(const Lexicon& lexicon, const SynthSpec& spec) {
  const LexiconEntry* fallback = nullptr;
  for (const auto& e : lexicon.entries_for(spec.lang)) {
    if (e.cls != spec.cls) continue;
    if (!e.ambiguous) return &e;
    if (fallback == nullptr) fallback = &e;
  }
  return fallback;
}

}  // namespace

void validate_synth_specs(const std::vector<SynthSpec>& specs, const GroundingContext& ctx) {
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    auto fail = [&](std::string_view what) {
      throw DataError(fmt::format("synth spec #{} ({} {} {}): {}", i + 1, s.country, s.lang,
                                  to_string(s.cls), what));
    };
    if (s.sigma_s <= 0) fail("sigma_s must be positive");
    if (s.mean_tod_s < 0 || s.mean_tod_s >= kSecondsPerDay) fail("mean_tod outside the day");
    if (s.date_to < s.date_from) fail("date range is reversed");
    const auto* entry = surface_for(ctx.lexicon, s);
    if (entry == nullptr) fail("lexicon has no surface for this language and class");
    if (match_greeting(ctx.lexicon, entry->surface, s.lang).status != MatchStatus::Matched)
      fail("lexicon surface does not match back to its class");
    auto profile = ctx.registry.find(s.country);
    if (profile == ctx.registry.end()) fail("country missing from the registry");
    if (!validate_offset(profile->second, s.offset_s)) fail("offset not valid for the country");
    auto resolved = resolve_location(ctx.gazetteer, s.location);
    if (!resolved || *resolved != s.country) fail("location does not resolve to the country");
  }
}

std::vector<std::string> generate_records(const std::vector<SynthSpec>& specs, std::uint64_t seed,
                                          const GroundingContext& ctx) {
  validate_synth_specs(specs, ctx);
  static constexpr std::array<std::string_view, 4> kTemplates{"{}", "{}!", "{} :)", "@friend {}"};

  SynthRng rng(seed);
  std::vector<std::string> lines;
  for (const auto& s : specs) {
    const auto& surface = surface_for(ctx.lexicon, s)->surface;
    const auto span_days = static_cast<std::uint64_t>((s.date_to - s.date_from).count()) + 1;
    for (std::uint64_t i = 0; i < s.count; ++i) {
      const LocalDate date = s.date_from + std::chrono::days{rng.uniform_below(span_days)};
      const std::int32_t mean = static_cast<std::int32_t>(
          ((s.mean_tod_s + (is_weekend(date) ? s.weekend_shift_s : 0)) % kSecondsPerDay + kSecondsPerDay) %
          kSecondsPerDay);
      const std::int32_t tod = wrapped_normal_sample(mean, s.sigma_s, rng);
      const auto& tmpl = kTemplates[rng.uniform_below(kTemplates.size())];
      const UnixSeconds utc =
          std::int64_t{date.time_since_epoch().count()} * kSecondsPerDay + tod - s.offset_s;

      nlohmann::ordered_json j;
      j["created_at"] = format_rfc3339(utc);
      j["utc_offset"] = s.offset_s;
      j["location"] = s.location;
      j["text"] = fmt::format(fmt::runtime(tmpl), surface);
      j["lang"] = s.lang;
      lines.push_back(j.dump());
    }
  }
  return lines;
}

void generate(const std::vector<SynthSpec>& specs, std::uint64_t seed, const GroundingContext& ctx,
              std::ostream& out) {
  for (const auto& line : generate_records(specs, seed, ctx)) out << line << '\n';
}

}  // namespace greetground
