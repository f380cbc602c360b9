#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "greetground/ingest.hpp"
#include "greetground/lexicon.hpp"
#include "greetground/temporal.hpp"

namespace greetground {

/// One population of synthetic greetings with a known time-of-day law.
struct SynthSpec {
  std::string country;
  std::string lang;
  GreetingClass cls = GreetingClass::Morning;
  std::int32_t mean_tod_s = 0;
  std::int32_t sigma_s = 1;  // wrapped-normal scale, > 0
  std::uint64_t count = 0;
  LocalDate date_from;
  LocalDate date_to;         // inclusive
  std::int32_t weekend_shift_s = 0;
  std::int32_t offset_s = 0;  // must be valid for country
  std::string location;       // must resolve to country
};

/// Deterministic random source. mt19937_64 output is fixed by the standard;
/// the integer and normal transforms are implemented here rather than taken
/// from <random> distributions, whose output is library-specific.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double uniform01();
  double standard_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// mean + sigma * N(0,1), rounded to whole seconds and wrapped into
/// [0, 86400). Throws std::invalid_argument when sigma_s <= 0.
std::int32_t wrapped_normal_sample(std::int32_t mean_tod_s, double sigma_s, SynthRng& rng);

/// TSV, one spec per line:
/// country lang class mean_tod sigma_s count date_from date_to weekend_shift_s offset_s location
/// mean_tod is HH:MM:SS; dates are YYYY-MM-DD. '#' starts a comment line.
std::vector<SynthSpec> parse_synth_specs(std::string_view tsv);
std::vector<SynthSpec> load_synth_specs(const std::filesystem::path& path);

/// Throws DataError describing the first invalid spec: non-positive sigma,
/// reversed dates, no lexicon surface for (lang, class), an offset the
/// country does not allow, or a location that does not resolve to country.
void validate_synth_specs(const std::vector<SynthSpec>& specs, const GroundingContext& context);

/// Emits ingest-format JSON lines. Every spec is validated before the first
/// record is produced. Dates are uniform over each spec's range; on
/// Saturdays and Sundays the mean moves by weekend_shift_s. The local sample
/// is turned back into UTC through the spec's offset.
std::vector<std::string> generate_records(const std::vector<SynthSpec>& specs, std::uint64_t seed,
                                          const GroundingContext& context);
void generate(const std::vector<SynthSpec>& specs, std::uint64_t seed,
              const GroundingContext& context, std::ostream& out);

}  // namespace greetground
