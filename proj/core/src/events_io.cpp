#include "greetground/events_io.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "greetground/error.hpp"
#include "tsv.hpp"

namespace greetground {

void write_event_csv_row(std::ostream& out, const GroundedEvent& e) {
  out << e.country << ',' << e.lang << ',' << to_string(e.cls) << ',' << format_date(e.local_date)
      << ',' << e.local_tod_s << ',' << (e.official_lang ? '1' : '0') << '\n';
}

void write_events_csv(std::ostream& out, const std::vector<GroundedEvent>& events) {
  out << kEventsCsvHeader << '\n';
  for (const auto& e : events) write_event_csv_row(out, e);
}

std::vector<GroundedEvent> read_events_csv(std::istream& in) {
  std::vector<GroundedEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (line_no == 1) {
      if (view != kEventsCsvHeader)
        throw DataError("events file: unexpected header '" + std::string(view) + "'", 1);
      continue;
    }
    if (view.empty()) continue;
    auto cols = detail::split(view, ',');
    auto fail = [&](std::string_view what) {
      throw DataError(fmt::format("events line {}: {}", line_no, what), line_no);
    };
    if (cols.size() != 6) fail("expected 6 columns");
    GroundedEvent e;
    if (!detail::is_iso2(cols[0])) fail("bad country code");
    e.country = std::string(cols[0]);
    if (!detail::is_lang_code(cols[1])) fail("bad language code");
    e.lang = std::string(cols[1]);
    auto cls = parse_greeting_class(cols[2]);
    if (!cls) fail("unknown class");
    e.cls = *cls;
    auto date = parse_date(cols[3]);
    if (!date) fail("bad date");
    e.local_date = *date;
    auto tod = detail::parse_int<std::int32_t>(cols[4]);
    if (!tod || *tod < 0 || *tod >= kSecondsPerDay) fail("bad local_tod_s");
    e.local_tod_s = *tod;
    if (cols[5] != "0" && cols[5] != "1") fail("official must be 0 or 1");
    e.official_lang = cols[5] == "1";
    events.push_back(std::move(e));
  }
  if (line_no == 0) throw DataError("events file is empty (missing header)");
  return events;
}

std::vector<GroundedEvent> read_events_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_events_csv(in);
}

std::string counters_to_json(const IngestCounters& c) {
  nlohmann::ordered_json j;
  j["records_in"] = c.records_in;
  j["events_out"] = c.events_out;
  j["drops"] = nlohmann::ordered_json::object();
  for (auto reason : kAllDropReasons) j["drops"][std::string(to_string(reason))] = c[reason];
  return j.dump(2) + "\n";
}

IngestCounters counters_from_json(std::string_view text) {
  auto j = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw DataError("summary is not a JSON object");
  try {
    IngestCounters c;
    c.records_in = j.at("records_in").get<std::uint64_t>();
    c.events_out = j.at("events_out").get<std::uint64_t>();
    for (auto reason : kAllDropReasons)
      c[reason] = j.at("drops").at(std::string(to_string(reason))).get<std::uint64_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("summary: ") + e.what());
  }
}

}  // namespace greetground
