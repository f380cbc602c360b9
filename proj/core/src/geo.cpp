#include "greetground/geo.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "greetground/error.hpp"
#include "greetground/temporal.hpp"
#include "greetground/text.hpp"
#include "tsv.hpp"

namespace greetground {

bool validate_offset(const CountryProfile& profile, std::int32_t offset_s) {
  return profile.valid_offsets_s.count(offset_s) != 0;
}

CountryRegistry parse_timezone_table(std::string_view tsv) {
  CountryRegistry registry;
  detail::for_each_tsv_row(tsv, [&](std::size_t line, const std::vector<std::string_view>& cols) {
    if (cols.size() != 3)
      throw DataError(fmt::format("registry line {}: expected 3 columns, got {}", line, cols.size()),
                      line);
    const auto iso2 = detail::trim(cols[0]);
    if (!detail::is_iso2(iso2))
      throw DataError(fmt::format("registry line {}: bad country code '{}'", line, iso2), line);
    const auto offset_field = detail::trim(cols[1]);
    if (offset_field.empty() || offset_field == "-")
      throw DataError(fmt::format("registry line {}: country {} listed with no offset", line, iso2),
                      line);
    auto offset = detail::parse_int<std::int32_t>(offset_field);
    if (!offset || *offset < kMinOffsetSeconds || *offset > kMaxOffsetSeconds || *offset % 900 != 0)
      throw DataError(fmt::format("registry line {}: invalid offset '{}'", line, offset_field), line);

    auto& profile = registry[std::string(iso2)];
    profile.iso2 = std::string(iso2);
    profile.valid_offsets_s.insert(*offset);
    for (auto lang : detail::split(cols[2], ',')) {
      lang = detail::trim(lang);
      if (!detail::is_lang_code(lang))
        throw DataError(fmt::format("registry line {}: bad language code '{}'", line, lang), line);
      profile.official_langs.emplace(lang);
    }
  });
  return registry;
}

CountryRegistry load_timezone_table(const std::filesystem::path& path) {
  return parse_timezone_table(detail::read_file(path));
}

// ---------------------------------------------------------------------------

void Gazetteer::add(std::string_view name, std::string_view iso2, std::int64_t population) {
  auto key = normalize_text(name);
  if (key.empty()) return;
  names_[std::move(key)].push_back(PlaceCandidate{std::string(iso2), population});
}

void Gazetteer::finalize() {
  for (auto& [name, list] : names_) {
    std::sort(list.begin(), list.end(), [](const PlaceCandidate& a, const PlaceCandidate& b) {
      if (a.population != b.population) return a.population > b.population;
      return a.iso2 < b.iso2;
    });
    // A GeoNames row lists a name under several columns; keep one copy.
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

const std::vector<PlaceCandidate>& Gazetteer::candidates(std::string_view normalized_name) const {
  static const std::vector<PlaceCandidate> kNone;
  auto it = names_.find(normalized_name);
  return it == names_.end() ? kNone : it->second;
}

namespace {

constexpr std::size_t kGeoNamesName = 1;
constexpr std::size_t kGeoNamesAsciiName = 2;
constexpr std::size_t kGeoNamesAlternates = 3;
constexpr std::size_t kGeoNamesCountry = 8;
constexpr std::size_t kGeoNamesPopulation = 14;

void add_simple_row(Gazetteer& g, const std::vector<std::string_view>& cols) {
  if (cols.size() < 3) {
    g.note_skipped_row();
    return;
  }
  const auto iso2 = detail::trim(cols[1]);
  auto population = detail::parse_int<std::int64_t>(cols[2]);
  if (iso2.empty()) return;
  if (!detail::is_iso2(iso2) || !population) {
    g.note_skipped_row();
    return;
  }
  g.add(cols[0], iso2, *population);
}

void add_geonames_row(Gazetteer& g, const std::vector<std::string_view>& cols) {
  if (cols.size() <= kGeoNamesPopulation) {
    g.note_skipped_row();
    return;
  }
  const auto iso2 = detail::trim(cols[kGeoNamesCountry]);
  if (iso2.empty()) return;
  auto population = detail::parse_int<std::int64_t>(cols[kGeoNamesPopulation]);
  if (!detail::is_iso2(iso2)) {
    g.note_skipped_row();
    return;
  }
  const std::int64_t pop = population.value_or(0);
  g.add(cols[kGeoNamesName], iso2, pop);
  g.add(cols[kGeoNamesAsciiName], iso2, pop);
  if (!cols[kGeoNamesAlternates].empty())
    for (auto alt : detail::split(cols[kGeoNamesAlternates], ',')) g.add(alt, iso2, pop);
}

}  // namespace

Gazetteer parse_gazetteer(std::string_view text, GazetteerFormat format) {
  Gazetteer g;
  detail::for_each_tsv_row(text, [&](std::size_t, const std::vector<std::string_view>& cols) {
    if (format == GazetteerFormat::Simple) {
      add_simple_row(g, cols);
    } else {
      add_geonames_row(g, cols);
    }
  });
  g.finalize();
  return g;
}

Gazetteer load_gazetteer(const std::filesystem::path& path, GazetteerFormat format) {
  return parse_gazetteer(detail::read_file(path), format);
}

std::optional<std::string> resolve_location(const Gazetteer& gazetteer, std::string_view location) {
  if (gazetteer.empty()) return std::nullopt;
  auto segments = detail::split(location, ',');
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    auto key = normalize_text(*it);
    if (key.empty()) continue;
    const auto& found = gazetteer.candidates(key);
    if (!found.empty()) return found.front().iso2;
  }
  return std::nullopt;
}

}  // namespace greetground
