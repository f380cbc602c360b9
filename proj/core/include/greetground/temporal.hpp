#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace greetground {

inline constexpr std::int32_t kSecondsPerDay = 86400;
inline constexpr std::int32_t kMinOffsetSeconds = -43200;
inline constexpr std::int32_t kMaxOffsetSeconds = 50400;

/// Seconds since 1970-01-01T00:00:00Z.
using UnixSeconds = std::int64_t;
using LocalDate = std::chrono::sys_days;

struct LocalTime {
  LocalDate date;
  std::int32_t tod_s = 0;  // [0, 86400)

  friend bool operator==(const LocalTime&, const LocalTime&) = default;
};

/// Shifts `utc` by `offset_s` and splits the result into a calendar date and
/// seconds since midnight. Throws std::out_of_range for offsets outside
/// [-43200, +50400].
LocalTime local_time(UnixSeconds utc, std::int32_t offset_s);

bool is_weekend(LocalDate date);

// "HH:MM:SS" for a time of day in [0, 86400).
std::string format_hhmmss(std::int32_t tod_s);
std::optional<std::int32_t> parse_hhmmss(std::string_view text);

// "YYYY-MM-DD".
std::string format_date(LocalDate date);
std::optional<LocalDate> parse_date(std::string_view text);

/// Raised by circular statistics on empty or directionless input.
class CircularStatsError : public std::domain_error {
 public:
  enum class Kind { EmptyAccumulator, Undefined };

  CircularStatsError(Kind kind, const std::string& what)
      : std::domain_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Mergeable sufficient statistics for the directional mean of times of day.
/// Each sample contributes the unit vector at angle 2*pi*tod/86400. Empty
/// accumulators are the identity of merge(), so shards can be folded in any
/// order.
class CircularAccumulator {
 public:
  CircularAccumulator() = default;
  CircularAccumulator(double sum_sin, double sum_cos, std::uint64_t count);

  /// Throws std::out_of_range unless 0 <= tod_s < 86400.
  void add(std::int32_t tod_s);
  void merge(const CircularAccumulator& other) noexcept;

  double sum_sin() const noexcept { return sum_sin_; }
  double sum_cos() const noexcept { return sum_cos_; }
  std::uint64_t count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

 private:
  double sum_sin_ = 0.0;
  double sum_cos_ = 0.0;
  std::uint64_t count_ = 0;
};

// Value-returning forms of add/merge.
CircularAccumulator acc_add(CircularAccumulator acc, std::int32_t tod_s);
CircularAccumulator acc_merge(CircularAccumulator a, const CircularAccumulator& b);

inline constexpr double kDefaultResultantEpsilon = 1e-9;

/// Mean direction as a time of day, rounded to the nearest second.
/// Throws CircularStatsError: EmptyAccumulator when count == 0, Undefined
/// when the mean resultant length is below `epsilon`.
std::int32_t circular_mean(const CircularAccumulator& acc,
                           double epsilon = kDefaultResultantEpsilon);

/// sqrt(S^2 + C^2) / n, in [0, 1].
double resultant_length(const CircularAccumulator& acc);

/// Quantiles on the circle. Samples are rotated so that their circular mean
/// sits at 12:00, nearest-rank quantiles are taken on the line and rotated
/// back. Throws std::invalid_argument on empty input or q outside [0,1], and
/// CircularStatsError when the mean direction is undefined.
std::vector<std::int32_t> rotated_quantiles(std::span<const std::int32_t> samples,
                                            std::span<const double> qs);

}  // namespace greetground
