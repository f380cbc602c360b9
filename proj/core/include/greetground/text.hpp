#pragma once

#include <string>
#include <string_view>

namespace greetground {

/// Canonical form used for every lookup key in the pipeline: NFC, full
/// Unicode case folding, runs of Unicode whitespace collapsed to one ASCII
/// space, leading and trailing whitespace removed. Diacritics are kept.
/// Invalid UTF-8 sequences become U+FFFD.
std::string normalize_text(std::string_view text);

namespace detail {

// Always goes through ICU; normalize_text() short-circuits pure ASCII input.
std::string normalize_text_icu(std::string_view text);

// True when the code point ending right before `pos` (or starting at `pos`)
// is a letter. Both return false at the string edges.
bool letter_before(std::string_view utf8, std::size_t pos);
bool letter_at(std::string_view utf8, std::size_t pos);

}  // namespace detail
}  // namespace greetground
