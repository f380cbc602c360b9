#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "greetground/geo.hpp"
#include "greetground/lexicon.hpp"
#include "greetground/temporal.hpp"

namespace greetground {

struct RawMessage {
  UnixSeconds created_at_utc = 0;
  std::optional<std::int32_t> utc_offset_s;
  std::optional<std::string> user_location;
  std::string text;
  std::optional<std::string> lang;
  bool is_retweet = false;

  friend bool operator==(const RawMessage&, const RawMessage&) = default;
};

struct GroundedEvent {
  std::string country;
  std::string lang;
  GreetingClass cls = GreetingClass::Hello;
  LocalDate local_date;
  std::int32_t local_tod_s = 0;  // [0, 86400)
  bool official_lang = false;

  friend bool operator==(const GroundedEvent&, const GroundedEvent&) = default;
};

enum class DropReason : std::uint8_t {
  Retweet,
  NoOffset,
  NoLocation,
  UnresolvedLocation,
  OffsetMismatch,
  NoGreetingMatch,
  MultiClass,
  BadRecord,
};

inline constexpr std::size_t kDropReasonCount = 8;
inline constexpr std::array<DropReason, kDropReasonCount> kAllDropReasons{
    DropReason::Retweet,         DropReason::NoOffset,       DropReason::NoLocation,
    DropReason::UnresolvedLocation, DropReason::OffsetMismatch, DropReason::NoGreetingMatch,
    DropReason::MultiClass,      DropReason::BadRecord};

/// snake_case name used in summaries: "retweet", "no_offset", ...
std::string_view to_string(DropReason reason);

struct BadRecord {
  std::uint64_t byte_offset = 0;
  std::string message;
};

/// Parses one JSON line. Required: "created_at" (RFC 3339 string) and
/// "text" (string). "utc_offset" (integer), "location" and "lang" (strings)
/// may be null or absent; "retweeted" is an optional boolean. Unknown fields
/// are ignored. A message is a retweet when the flag is set or its
/// normalized text starts with "rt @".
std::variant<RawMessage, BadRecord> parse_record(std::string_view line,
                                                 std::uint64_t byte_offset = 0);

/// RFC 3339 timestamp to Unix seconds; fractional seconds are truncated.
std::optional<UnixSeconds> parse_rfc3339(std::string_view text);
std::string format_rfc3339(UnixSeconds utc);

/// nullopt keeps the record. Duplicates are never dropped.
std::optional<DropReason> filter_record(const RawMessage& message);

/// Country registry, gazetteer and lexicon that grounding runs against.
struct GroundingContext {
  const Lexicon& lexicon;
  const Gazetteer& gazetteer;
  const CountryRegistry& registry;
};

/// Resolves the country, checks the offset against it, matches the greeting
/// and converts to local time. A country resolved by the gazetteer but absent
/// from the registry has no valid offsets and yields OffsetMismatch.
std::variant<GroundedEvent, DropReason> ground_message(const RawMessage& message,
                                                       const GroundingContext& context);

/// Per-run counters; merge() is addition so shard totals combine freely.
struct IngestCounters {
  std::uint64_t records_in = 0;
  std::uint64_t events_out = 0;
  std::array<std::uint64_t, kDropReasonCount> drops{};

  std::uint64_t& operator[](DropReason reason) { return drops[static_cast<std::size_t>(reason)]; }
  std::uint64_t operator[](DropReason reason) const { return drops[static_cast<std::size_t>(reason)]; }

  std::uint64_t total_drops() const noexcept;
  // records_in == events_out + total_drops()
  bool conserved() const noexcept { return records_in == events_out + total_drops(); }

  void merge(const IngestCounters& other) noexcept;
  friend bool operator==(const IngestCounters&, const IngestCounters&) = default;
};

/// parse -> filter -> ground for one line, updating `counters`. Returns the
/// event when the line survives.
std::optional<GroundedEvent> process_line(std::string_view line, std::uint64_t byte_offset,
                                          const GroundingContext& context,
                                          IngestCounters& counters);

/// Runs process_line() over every line of `in`. Empty lines (including a
/// trailing newline) are not records. `on_event` receives surviving events in
/// input order.
IngestCounters ground_stream(std::istream& in, const GroundingContext& context,
                             const std::function<void(GroundedEvent&&)>& on_event);

}  // namespace greetground
