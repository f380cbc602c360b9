#include "greetground/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace greetground {
namespace {

constexpr double kRadiansPerSecond = 2.0 * std::numbers::pi / kSecondsPerDay;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int32_t wrap_day(std::int64_t seconds) {
  auto r = seconds % kSecondsPerDay;
  if (r < 0) r += kSecondsPerDay;
  return static_cast<std::int32_t>(r);
}

void require_tod(std::int32_t tod_s) {
  if (tod_s < 0 || tod_s >= kSecondsPerDay)
    throw std::out_of_range(fmt::format("time of day {} outside [0, 86400)", tod_s));
}

}  // namespace

LocalTime local_time(UnixSeconds utc, std::int32_t offset_s) {
  if (offset_s < kMinOffsetSeconds || offset_s > kMaxOffsetSeconds)
    throw std::out_of_range(fmt::format("UTC offset {} outside [-43200, 50400]", offset_s));
  const std::int64_t shifted = utc + offset_s;
  const std::int64_t day = floor_div(shifted, kSecondsPerDay);
  return LocalTime{LocalDate{std::chrono::days{day}},
                   static_cast<std::int32_t>(shifted - day * kSecondsPerDay)};
}

bool is_weekend(LocalDate date) {
  std::chrono::weekday wd{date};
  return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

std::string format_hhmmss(std::int32_t tod_s) {
  require_tod(tod_s);
  return fmt::format("{:02}:{:02}:{:02}", tod_s / 3600, (tod_s / 60) % 60, tod_s % 60);
}

std::optional<std::int32_t> parse_hhmmss(std::string_view text) {
  auto two = [&](std::size_t at) -> int {
    char a = text[at], b = text[at + 1];
    if (a < '0' || a > '9' || b < '0' || b > '9') return -1;
    return (a - '0') * 10 + (b - '0');
  };
  if (text.size() != 8 || text[2] != ':' || text[5] != ':') return std::nullopt;
  int h = two(0), m = two(3), s = two(6);
  if (h < 0 || m < 0 || s < 0 || h > 23 || m > 59 || s > 59) return std::nullopt;
  return h * 3600 + m * 60 + s;
}

std::string format_date(LocalDate date) {
  std::chrono::year_month_day ymd{date};
  return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::optional<LocalDate> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int parts[3] = {0, 0, 0};
  const std::size_t starts[3] = {0, 5, 8};
  const std::size_t lens[3] = {4, 2, 2};
  for (int p = 0; p < 3; ++p) {
    for (std::size_t i = 0; i < lens[p]; ++i) {
      char c = text[starts[p] + i];
      if (c < '0' || c > '9') return std::nullopt;
      parts[p] = parts[p] * 10 + (c - '0');
    }
  }
  std::chrono::year_month_day ymd{std::chrono::year{parts[0]},
                                  std::chrono::month{static_cast<unsigned>(parts[1])},
                                  std::chrono::day{static_cast<unsigned>(parts[2])}};
  if (!ymd.ok()) return std::nullopt;
  return LocalDate{ymd};
}

// ---------------------------------------------------------------------------

CircularAccumulator::CircularAccumulator(double sum_sin, double sum_cos, std::uint64_t count)
    : sum_sin_(sum_sin), sum_cos_(sum_cos), count_(count) {
  if (count == 0 && (sum_sin != 0.0 || sum_cos != 0.0))
    throw std::invalid_argument("empty accumulator with non-zero vector sum");
  if (std::hypot(sum_sin, sum_cos) > static_cast<double>(count) * (1.0 + 1e-12))
    throw std::invalid_argument("resultant longer than sample count");
}

void CircularAccumulator::add(std::int32_t tod_s) {
  require_tod(tod_s);
  const double angle = kRadiansPerSecond * tod_s;
  sum_sin_ += std::sin(angle);
  sum_cos_ += std::cos(angle);
  ++count_;
}

void CircularAccumulator::merge(const CircularAccumulator& other) noexcept {
  sum_sin_ += other.sum_sin_;
  sum_cos_ += other.sum_cos_;
  count_ += other.count_;
}

CircularAccumulator acc_add(CircularAccumulator acc, std::int32_t tod_s) {
  acc.add(tod_s);
  return acc;
}

CircularAccumulator acc_merge(CircularAccumulator a, const CircularAccumulator& b) {
  a.merge(b);
  return a;
}

double resultant_length(const CircularAccumulator& acc) {
  if (acc.empty())
    throw CircularStatsError(CircularStatsError::Kind::EmptyAccumulator, "empty accumulator");
  return std::min(1.0, std::hypot(acc.sum_sin(), acc.sum_cos()) / static_cast<double>(acc.count()));
}

std::int32_t circular_mean(const CircularAccumulator& acc, double epsilon) {
  if (resultant_length(acc) < epsilon)
    throw CircularStatsError(CircularStatsError::Kind::Undefined,
                             "mean direction undefined: resultant length below threshold");
  const double angle = std::atan2(acc.sum_sin(), acc.sum_cos());
  return wrap_day(std::llround(angle / kRadiansPerSecond));
}

std::vector<std::int32_t> rotated_quantiles(std::span<const std::int32_t> samples,
                                            std::span<const double> qs) {
  if (samples.empty()) throw std::invalid_argument("rotated_quantiles: no samples");
  CircularAccumulator acc;
  for (auto s : samples) acc.add(s);
  const std::int32_t shift = wrap_day(kSecondsPerDay / 2 - circular_mean(acc));

  std::vector<std::int32_t> rotated(samples.begin(), samples.end());
  for (auto& s : rotated) s = wrap_day(std::int64_t{s} + shift);
  std::sort(rotated.begin(), rotated.end());

  const auto n = rotated.size();
  std::vector<std::int32_t> out;
  out.reserve(qs.size());
  for (double q : qs) {
    if (!(q >= 0.0 && q <= 1.0))
      throw std::invalid_argument(fmt::format("quantile level {} outside [0, 1]", q));
    // Nearest rank: smallest value with at least q*n samples at or below it.
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    out.push_back(wrap_day(std::int64_t{rotated[rank - 1]} - shift));
  }
  return out;
}

}  // namespace greetground
