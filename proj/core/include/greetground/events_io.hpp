#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "greetground/ingest.hpp"

namespace greetground {

// Grounded-events CSV: country,lang,class,local_date,local_tod_s,official
inline constexpr std::string_view kEventsCsvHeader =
    "country,lang,class,local_date,local_tod_s,official";

void write_event_csv_row(std::ostream& out, const GroundedEvent& event);
void write_events_csv(std::ostream& out, const std::vector<GroundedEvent>& events);

/// Throws DataError (with line number) on malformed rows.
std::vector<GroundedEvent> read_events_csv(std::istream& in);
std::vector<GroundedEvent> read_events_csv(const std::filesystem::path& path);

/// {"records_in":..,"events_out":..,"drops":{"retweet":..,...}} with a stable
/// key order.
std::string counters_to_json(const IngestCounters& counters);
IngestCounters counters_from_json(std::string_view json);

}  // namespace greetground
