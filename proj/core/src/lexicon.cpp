#include "greetground/lexicon.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "greetground/error.hpp"
#include "tsv.hpp"

namespace greetground {

std::string_view to_string(GreetingClass cls) {
  switch (cls) {
    case GreetingClass::Morning: return "morning";
    case GreetingClass::Afternoon: return "afternoon";
    case GreetingClass::Evening: return "evening";
    case GreetingClass::Night: return "night";
    case GreetingClass::Hello: return "hello";
  }
  return "unknown";
}

std::optional<GreetingClass> parse_greeting_class(std::string_view token) {
  for (auto cls : kAllGreetingClasses)
    if (to_string(cls) == token) return cls;
  return std::nullopt;
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries) {
  std::set<std::pair<std::string, std::string>> seen;
  for (auto& entry : entries) {
    entry.surface = normalize_text(entry.surface);
    if (entry.surface.empty()) throw DataError("lexicon entry with empty surface for " + entry.lang);
    if (!seen.emplace(entry.lang, entry.surface).second)
      throw DataError(fmt::format("duplicate lexicon entry ({}, {})", entry.lang, entry.surface));
    by_lang_[entry.lang].push_back(std::move(entry));
  }
  for (auto& [lang, list] : by_lang_) {
    // Longest first; ties broken by surface so the order never depends on file order.
    std::sort(list.begin(), list.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
      if (a.surface.size() != b.surface.size()) return a.surface.size() > b.surface.size();
      return a.surface < b.surface;
    });
    size_ += list.size();
  }
}

std::span<const LexiconEntry> Lexicon::entries_for(std::string_view lang) const {
  auto it = by_lang_.find(lang);
  if (it == by_lang_.end()) return {};
  return it->second;
}

std::vector<std::string> Lexicon::languages() const {
  std::vector<std::string> out;
  for (const auto& [lang, list] : by_lang_) out.push_back(lang);
  return out;
}

Lexicon parse_lexicon(std::string_view tsv) {
  std::vector<LexiconEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  detail::for_each_tsv_row(tsv, [&](std::size_t line, const std::vector<std::string_view>& cols) {
    if (cols.size() != 4)
      throw DataError(fmt::format("lexicon line {}: expected 4 columns, got {}", line, cols.size()),
                      line);
    LexiconEntry entry;
    entry.lang = std::string(detail::trim(cols[0]));
    if (!detail::is_lang_code(entry.lang))
      throw DataError(fmt::format("lexicon line {}: bad language code '{}'", line, entry.lang), line);
    auto cls = parse_greeting_class(detail::trim(cols[1]));
    if (!cls)
      throw DataError(fmt::format("lexicon line {}: unknown class '{}'", line, cols[1]), line);
    entry.cls = *cls;
    entry.surface = normalize_text(cols[2]);
    if (entry.surface.empty())
      throw DataError(fmt::format("lexicon line {}: empty surface", line), line);
    auto flags = detail::trim(cols[3]);
    if (flags != "-") {
      for (auto flag : detail::split(flags, ',')) {
        flag = detail::trim(flag);
        if (flag == "ambiguous") {
          entry.ambiguous = true;
        } else if (flag == "merged") {
          entry.merged_evening_night = true;
        } else {
          throw DataError(fmt::format("lexicon line {}: unknown flag '{}'", line, flag), line);
        }
      }
    }
    if (!seen.emplace(entry.lang, entry.surface).second)
      throw DataError(fmt::format("lexicon line {}: duplicate entry ({}, {})", line, entry.lang,
                                  entry.surface),
                      line);
    entries.push_back(std::move(entry));
  });
  return Lexicon(std::move(entries));
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  return parse_lexicon(detail::read_file(path));
}

GreetingMatch match_normalized(const Lexicon& lexicon, std::string_view normalized,
                               std::string_view lang) {
  struct Span {
    std::size_t begin, end;
  };
  std::vector<Span> claimed;
  const LexiconEntry* first = nullptr;
  bool multi = false;

  for (const auto& entry : lexicon.entries_for(lang)) {
    const std::string_view surface = entry.surface;
    for (auto pos = normalized.find(surface); pos != std::string_view::npos;
         pos = normalized.find(surface, pos + 1)) {
      const auto end = pos + surface.size();
      if (detail::letter_before(normalized, pos) || detail::letter_at(normalized, end)) continue;
      bool overlaps = std::any_of(claimed.begin(), claimed.end(), [&](const Span& s) {
        return pos < s.end && s.begin < end;
      });
      if (overlaps) continue;
      claimed.push_back({pos, end});
      if (first == nullptr) {
        first = &entry;
      } else if (entry.cls != first->cls) {
        multi = true;
      }
    }
  }
  if (multi) return {MatchStatus::MultiClass, nullptr};
  if (first == nullptr) return {MatchStatus::NoMatch, nullptr};
  return {MatchStatus::Matched, first};
}

GreetingMatch match_greeting(const Lexicon& lexicon, std::string_view text,
                             std::optional<std::string_view> lang) {
  if (!lang) return {};
  return match_normalized(lexicon, normalize_text(text), *lang);
}

}  // namespace greetground
