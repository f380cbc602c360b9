#include "greetground/ingest.hpp"

#include <limits>

#include <fmt/format.h>
#include <json.hpp>

namespace greetground {
namespace {

using nlohmann::json;

int digits(std::string_view s, std::size_t at, std::size_t n) {
  if (at + n > s.size()) return -1;
  int v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    char c = s[at + i];
    if (c < '0' || c > '9') return -1;
    v = v * 10 + (c - '0');
  }
  return v;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

BadRecord bad(std::uint64_t offset, std::string message) { return BadRecord{offset, std::move(message)}; }

std::optional<std::string> optional_string(const json& obj, const char* key, bool& type_error) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    type_error = true;
    return std::nullopt;
  }
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::Retweet: return "retweet";
    case DropReason::NoOffset: return "no_offset";
    case DropReason::NoLocation: return "no_location";
    case DropReason::UnresolvedLocation: return "unresolved_location";
    case DropReason::OffsetMismatch: return "offset_mismatch";
    case DropReason::NoGreetingMatch: return "no_greeting_match";
    case DropReason::MultiClass: return "multi_class";
    case DropReason::BadRecord: return "bad_record";
  }
  return "unknown";
}

std::optional<UnixSeconds> parse_rfc3339(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS[.fff](Z|+HH:MM|-HH:MM)
  if (s.size() < 20 || s[4] != '-' || s[7] != '-' || s[13] != ':' || s[16] != ':')
    return std::nullopt;
  if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
  const int year = digits(s, 0, 4), month = digits(s, 5, 2), day = digits(s, 8, 2);
  const int hour = digits(s, 11, 2), minute = digits(s, 14, 2), second = digits(s, 17, 2);
  if (year < 0 || month < 0 || day < 0 || hour < 0 || minute < 0 || second < 0) return std::nullopt;
  if (hour > 23 || minute > 59 || second > 59) return std::nullopt;

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const auto frac_start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == frac_start) return std::nullopt;
  }
  if (pos >= s.size()) return std::nullopt;
  int zone_s = 0;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    const int zh = digits(s, pos + 1, 2), zm = digits(s, pos + 4, 2);
    if (zh < 0 || zm < 0 || pos + 3 >= s.size() || s[pos + 3] != ':' || zh > 23 || zm > 59)
      return std::nullopt;
    zone_s = (zh * 3600 + zm * 60) * (s[pos] == '-' ? -1 : 1);
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;

  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                                  std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  const std::int64_t days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  return days * kSecondsPerDay + hour * 3600 + minute * 60 + second - zone_s;
}

std::string format_rfc3339(UnixSeconds utc) {
  const auto t = local_time(utc, 0);
  return fmt::format("{}T{}Z", format_date(t.date), format_hhmmss(t.tod_s));
}

std::variant<RawMessage, BadRecord> parse_record(std::string_view line, std::uint64_t byte_offset) {
  json obj = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) return bad(byte_offset, "not valid JSON");
  if (!obj.is_object()) return bad(byte_offset, "record is not a JSON object");

  RawMessage m;
  auto created = obj.find("created_at");
  if (created == obj.end() || !created->is_string()) return bad(byte_offset, "missing created_at");
  auto utc = parse_rfc3339(created->get_ref<const std::string&>());
  if (!utc) return bad(byte_offset, "created_at is not an RFC 3339 timestamp");
  m.created_at_utc = *utc;

  auto text = obj.find("text");
  if (text == obj.end() || !text->is_string()) return bad(byte_offset, "missing text");
  m.text = text->get<std::string>();

  auto offset = obj.find("utc_offset");
  if (offset != obj.end() && !offset->is_null()) {
    if (!offset->is_number_integer()) return bad(byte_offset, "utc_offset is not an integer");
    if (offset->is_number_unsigned()) {
      auto v = offset->get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max()))
        return bad(byte_offset, "utc_offset out of range");
      m.utc_offset_s = static_cast<std::int32_t>(v);
    } else {
      auto v = offset->get<std::int64_t>();
      if (v < std::numeric_limits<std::int32_t>::min() || v > std::numeric_limits<std::int32_t>::max())
        return bad(byte_offset, "utc_offset out of range");
      m.utc_offset_s = static_cast<std::int32_t>(v);
    }
  }

  bool type_error = false;
  m.user_location = optional_string(obj, "location", type_error);
  if (type_error) return bad(byte_offset, "location is not a string");
  if (auto lang = optional_string(obj, "lang", type_error)) m.lang = ascii_lower(*lang);
  if (type_error) return bad(byte_offset, "lang is not a string");

  if (auto rt = obj.find("retweeted"); rt != obj.end() && !rt->is_null()) {
    if (!rt->is_boolean()) return bad(byte_offset, "retweeted is not a boolean");
    m.is_retweet = rt->get<bool>();
  }
  if (!m.is_retweet) m.is_retweet = normalize_text(m.text).starts_with("rt @");
  return m;
}

std::optional<DropReason> filter_record(const RawMessage& m) {
  if (m.is_retweet) return DropReason::Retweet;
  if (!m.utc_offset_s) return DropReason::NoOffset;
  if (!m.user_location || normalize_text(*m.user_location).empty()) return DropReason::NoLocation;
  return std::nullopt;
}

std::variant<GroundedEvent, DropReason> ground_message(const RawMessage& m,
                                                       const GroundingContext& ctx) {
  if (!m.user_location) return DropReason::NoLocation;
  if (!m.utc_offset_s) return DropReason::NoOffset;
  auto country = resolve_location(ctx.gazetteer, *m.user_location);
  if (!country) return DropReason::UnresolvedLocation;
  auto profile = ctx.registry.find(*country);
  if (profile == ctx.registry.end() || !validate_offset(profile->second, *m.utc_offset_s))
    return DropReason::OffsetMismatch;
  if (!m.lang) return DropReason::NoGreetingMatch;

  auto match = match_greeting(ctx.lexicon, m.text, *m.lang);
  if (match.status == MatchStatus::MultiClass) return DropReason::MultiClass;
  if (!match) return DropReason::NoGreetingMatch;

  const auto local = local_time(m.created_at_utc, *m.utc_offset_s);
  return GroundedEvent{std::move(*country), *m.lang,   match.cls(),
                       local.date,          local.tod_s, profile->second.is_official(*m.lang)};
}

std::uint64_t IngestCounters::total_drops() const noexcept {
  std::uint64_t sum = 0;
  for (auto d : drops) sum += d;
  return sum;
}

void IngestCounters::merge(const IngestCounters& other) noexcept {
  records_in += other.records_in;
  events_out += other.events_out;
  for (std::size_t i = 0; i < drops.size(); ++i) drops[i] += other.drops[i];
}

std::optional<GroundedEvent> process_line(std::string_view line, std::uint64_t byte_offset,
                                          const GroundingContext& ctx, IngestCounters& counters) {
  ++counters.records_in;
  auto parsed = parse_record(line, byte_offset);
  if (std::holds_alternative<BadRecord>(parsed)) {
    ++counters[DropReason::BadRecord];
    return std::nullopt;
  }
  const auto& message = std::get<RawMessage>(parsed);
  if (auto reason = filter_record(message)) {
    ++counters[*reason];
    return std::nullopt;
  }
  auto grounded = ground_message(message, ctx);
  if (auto* reason = std::get_if<DropReason>(&grounded)) {
    ++counters[*reason];
    return std::nullopt;
  }
  ++counters.events_out;
  return std::get<GroundedEvent>(std::move(grounded));
}

IngestCounters ground_stream(std::istream& in, const GroundingContext& ctx,
                             const std::function<void(GroundedEvent&&)>& on_event) {
  IngestCounters counters;
  std::string line;
  std::uint64_t offset = 0;
  while (std::getline(in, line)) {
    const auto line_offset = offset;
    offset += line.size() + 1;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty()) continue;
    if (auto event = process_line(view, line_offset, ctx, counters)) on_event(std::move(*event));
  }
  return counters;
}

}  // namespace greetground
