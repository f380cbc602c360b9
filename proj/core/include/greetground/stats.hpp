#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "greetground/ingest.hpp"
#include "greetground/lexicon.hpp"

namespace greetground {

/// Exact two-sided binomial test of k successes in n trials against p = 1/2.
/// The p-value sums the probability of every outcome no more likely than k,
/// which for the symmetric null is 2 * P(X <= min(k, n - k)) capped at 1.
/// Evaluated in log space so it stays finite well past n = 10^6 (results
/// below the smallest double underflow to 0). Throws std::invalid_argument
/// when n == 0 or k > n.
double binomial_two_sided(std::uint64_t k, std::uint64_t n);

inline constexpr std::int32_t kDefaultBinWidth = 600;
inline constexpr double kDefaultAlpha = 0.05;

struct BinCounts {
  std::int32_t bin_index = 0;  // covers [index * width, (index + 1) * width)
  std::uint64_t count_a = 0;
  std::uint64_t count_b = 0;

  std::uint64_t total() const noexcept { return count_a + count_b; }
  friend bool operator==(const BinCounts&, const BinCounts&) = default;
};

/// Throws ConfigError unless 0 < width_s and width_s divides 86400.
void check_bin_width(std::int32_t width_s);

/// One BinCounts per bin of the day, counting only events of the two classes.
/// Events of other classes are ignored; callers filter by country/lang first.
std::vector<BinCounts> bin_events(std::span<const GroundedEvent> events, GreetingClass class_a,
                                  GreetingClass class_b, std::int32_t width_s = kDefaultBinWidth);

enum class Verdict { A, B, NotSignificant, Empty };
std::string_view to_string(Verdict verdict);

struct BinVerdict {
  std::int32_t bin_index = 0;
  std::uint64_t n = 0;
  std::uint64_t k_a = 0;
  double p_value = 1.0;  // 1.0 for empty bins
  Verdict verdict = Verdict::Empty;
};

struct BoundaryResult {
  std::int32_t width_s = kDefaultBinWidth;
  double alpha = kDefaultAlpha;  // per-bin threshold actually applied
  std::vector<BinVerdict> per_bin;
  // Seconds since midnight. Both set, or neither (no boundary found).
  std::optional<std::int32_t> a_end_s;
  std::optional<std::int32_t> b_start_s;

  bool has_boundary() const noexcept { return a_end_s.has_value() && b_start_s.has_value(); }
};

struct BoundaryOptions {
  double alpha = kDefaultAlpha;  // (0, 1]
  // Divide alpha by the number of non-empty bins.
  bool bonferroni = false;
};

/// Per-bin verdicts plus the switch point. A bin is A (B) when p < alpha and
/// class A (B) holds the strict majority; at alpha = 1 the test is skipped and
/// the majority alone decides. Starting at the first A bin, the
/// A run extends over A and empty bins until the first NotSignificant or B
/// bin; a_end is the end of the last A bin in that run and b_start the start
/// of the first B bin after it. Without an A bin or a later B bin the result
/// carries no boundary. Throws ConfigError for alpha outside (0, 1] or bins of
/// inconsistent width.
BoundaryResult detect_boundary(std::span<const BinCounts> bins, std::int32_t width_s,
                               const BoundaryOptions& options = {});

BoundaryResult boundary_report(std::span<const GroundedEvent> events, GreetingClass class_a,
                               GreetingClass class_b, std::int32_t width_s = kDefaultBinWidth,
                               const BoundaryOptions& options = {});

/// bin_start_hhmmss,count_a,count_b,p_value,verdict rows followed by a
/// trailer row "trailer,<a_end>,<b_start>,,boundary" or
/// "trailer,,,,no_boundary".
void write_boundary_csv(std::ostream& out, const BoundaryResult& result);

}  // namespace greetground
