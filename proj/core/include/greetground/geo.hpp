#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace greetground {

/// Legal UTC offsets and official (or de facto) languages of one country.
struct CountryProfile {
  std::string iso2;
  std::set<std::int32_t> valid_offsets_s;
  std::set<std::string, std::less<>> official_langs;

  bool is_official(std::string_view lang) const {
    return official_langs.find(lang) != official_langs.end();
  }
};

/// true iff offset_s is one of the profile's offsets.
bool validate_offset(const CountryProfile& profile, std::int32_t offset_s);

using CountryRegistry = std::map<std::string, CountryProfile, std::less<>>;

/// Country registry TSV: iso2<TAB>offset_seconds<TAB>official_langs, one row
/// per (country, offset). Offsets must lie in [-43200, 50400] and be
/// multiples of 900. Throws DataError with the line number on malformed rows
/// and when a country is listed with an empty offset field.
CountryRegistry load_timezone_table(const std::filesystem::path& path);
CountryRegistry parse_timezone_table(std::string_view tsv);

struct PlaceCandidate {
  std::string iso2;
  std::int64_t population = 0;

  friend bool operator==(const PlaceCandidate&, const PlaceCandidate&) = default;
};

enum class GazetteerFormat { Simple, GeoNames };

/// Normalized place name -> candidates, most populous first.
class Gazetteer {
 public:
  /// `name` is normalized before insertion. Call finalize() before lookups.
  void add(std::string_view name, std::string_view iso2, std::int64_t population);
  void finalize();

  /// Candidates for an already-normalized key; empty when unknown.
  const std::vector<PlaceCandidate>& candidates(std::string_view normalized_name) const;

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  // Rows dropped while loading because they had too few columns or a bad
  // population field.
  std::size_t skipped_rows() const noexcept { return skipped_rows_; }
  void note_skipped_row() noexcept { ++skipped_rows_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, std::vector<PlaceCandidate>, Hash, std::equal_to<>> names_;
  std::size_t skipped_rows_ = 0;
};

/// Simple format: name<TAB>iso2<TAB>population.
/// GeoNames format: the tab-separated "geoname" dump; name, asciiname,
/// alternatenames (comma-separated), country code and population are read
/// from columns 1, 2, 3, 8 and 14. Rows without a country code are skipped;
/// short rows are counted in skipped_rows(). Throws DataError if the file
/// cannot be read.
Gazetteer load_gazetteer(const std::filesystem::path& path, GazetteerFormat format);
Gazetteer parse_gazetteer(std::string_view text, GazetteerFormat format);

/// Splits on commas and tries the segments right to left; the first segment
/// that names a known place yields its most populous candidate.
std::optional<std::string> resolve_location(const Gazetteer& gazetteer,
                                            std::string_view location);

}  // namespace greetground
