#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace greetground::detail {

std::string read_file(const std::filesystem::path& path);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

/// Calls fn(line_number, fields) for every non-blank line that does not start
/// with '#'. A trailing '\r' is stripped.
template <typename Fn>
void for_each_tsv_row(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty() && line.front() != '#') fn(line_no, split(line, '\t'));
    if (end == text.size()) break;
    pos = end + 1;
  }
}

template <typename Int>
std::optional<Int> parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

bool is_iso2(std::string_view code);
bool is_lang_code(std::string_view code);

}  // namespace greetground::detail
