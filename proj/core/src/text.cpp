#include "greetground/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace greetground {
namespace {

bool ascii_only(std::string_view text) {
  for (unsigned char c : text)
    if (c >= 0x80) return false;
  return true;
}

bool ascii_space(char c) { return c == ' ' || (c >= '\t' && c <= '\r'); }

// ASCII is already NFC and full case folding of ASCII is tolower().
std::string normalize_ascii(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (ascii_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw std::runtime_error("ICU NFC normalizer unavailable");
  return *n;
}

UChar32 decode_at(std::string_view s, std::size_t pos) {
  int32_t i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), i, static_cast<int32_t>(s.size()), c);
  return c;
}

UChar32 decode_before(std::string_view s, std::size_t pos) {
  int32_t i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_PREV(reinterpret_cast<const uint8_t*>(s.data()), 0, i, c);
  return c;
}

}  // namespace

namespace detail {

std::string normalize_text_icu(std::string_view text) {
  const auto& normalizer = nfc();
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString composed = normalizer.normalize(source, status);
  composed.foldCase(U_FOLD_CASE_DEFAULT);
  // Folding can produce sequences that are no longer composed.
  icu::UnicodeString folded = normalizer.normalize(composed, status);
  if (U_FAILURE(status)) folded = composed;

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < folded.length();) {
    UChar32 c = folded.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) {
      collapsed.append(static_cast<UChar>(' '));
      pending_space = false;
    }
    collapsed.append(c);
  }
  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

bool letter_before(std::string_view utf8, std::size_t pos) {
  if (pos == 0) return false;
  if (static_cast<unsigned char>(utf8[pos - 1]) < 0x80) {
    char c = utf8[pos - 1];
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  UChar32 c = decode_before(utf8, pos);
  return c >= 0 && u_isalpha(c);
}

bool letter_at(std::string_view utf8, std::size_t pos) {
  if (pos >= utf8.size()) return false;
  if (static_cast<unsigned char>(utf8[pos]) < 0x80) {
    char c = utf8[pos];
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  UChar32 c = decode_at(utf8, pos);
  return c >= 0 && u_isalpha(c);
}

}  // namespace detail

std::string normalize_text(std::string_view text) {
  if (ascii_only(text)) return normalize_ascii(text);
  return detail::normalize_text_icu(text);
}

}  // namespace greetground
