#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greetground/text.hpp"

namespace greetground {

enum class GreetingClass : std::uint8_t { Morning, Afternoon, Evening, Night, Hello };

inline constexpr std::size_t kGreetingClassCount = 5;
inline constexpr std::array<GreetingClass, kGreetingClassCount> kAllGreetingClasses{
    GreetingClass::Morning, GreetingClass::Afternoon, GreetingClass::Evening,
    GreetingClass::Night, GreetingClass::Hello};

/// Lowercase token used in every file format: morning, afternoon, ...
std::string_view to_string(GreetingClass cls);
std::optional<GreetingClass> parse_greeting_class(std::string_view token);

inline constexpr std::size_t index_of(GreetingClass cls) {
  return static_cast<std::size_t>(cls);
}

struct LexiconEntry {
  std::string lang;
  GreetingClass cls = GreetingClass::Hello;
  std::string surface;  // normalized, non-empty
  // Conventionally used outside its nominal class (French "bonjour").
  bool ambiguous = false;
  // The language has one form for both evening and night.
  bool merged_evening_night = false;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

/// Immutable multilingual greeting lexicon. Entries are grouped by language
/// and kept longest-surface-first inside each group.
class Lexicon {
 public:
  Lexicon() = default;
  /// Normalizes every surface. Throws DataError on an empty surface or a
  /// duplicate (lang, surface) pair.
  explicit Lexicon(std::vector<LexiconEntry> entries);

  std::span<const LexiconEntry> entries_for(std::string_view lang) const;
  std::vector<std::string> languages() const;
  std::size_t size() const noexcept { return size_; }

 private:
  std::map<std::string, std::vector<LexiconEntry>, std::less<>> by_lang_;
  std::size_t size_ = 0;
};

/// Reads the lexicon TSV: lang<TAB>class<TAB>surface<TAB>flags, flags being
/// "-" or a comma-separated subset of {ambiguous, merged}. Blank lines and
/// lines starting with '#' are ignored. Throws DataError naming the line on
/// malformed rows.
Lexicon load_lexicon(const std::filesystem::path& path);
Lexicon parse_lexicon(std::string_view tsv);

enum class MatchStatus { Matched, NoMatch, MultiClass };

struct GreetingMatch {
  MatchStatus status = MatchStatus::NoMatch;
  const LexiconEntry* entry = nullptr;  // set iff status == Matched

  explicit operator bool() const noexcept { return status == MatchStatus::Matched; }
  GreetingClass cls() const { return entry->cls; }
};

/// Finds lexicon surfaces for `lang` inside normalize_text(text) at word
/// boundaries (a non-letter code point or the string edge on both sides).
/// Longer surfaces are tried first and claim their span, so a shorter surface
/// nested inside an accepted match is not counted again. If the accepted
/// matches disagree on the class the result is MultiClass.
GreetingMatch match_greeting(const Lexicon& lexicon, std::string_view text,
                             std::optional<std::string_view> lang);

/// Same as match_greeting() for text that is already normalized.
GreetingMatch match_normalized(const Lexicon& lexicon, std::string_view normalized,
                               std::string_view lang);

}  // namespace greetground
