#include "greetground/stats.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "greetground/error.hpp"
#include "greetground/report.hpp"

namespace greetground {
namespace {

// log(n!) - log(sqrt(2*pi*n) * (n/e)^n), the error of Stirling's formula.
double stirlerr(double n) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    // n! is exact in a double up to 18!.
    double fact = 1.0;
    for (int i = 2; i <= static_cast<int>(n); ++i) fact *= i;
    return std::log(fact) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  const double nn = n * n;
  if (n > 500) return (S0 - S1 / nn) / n;
  if (n > 80) return (S0 - (S1 - S2 / nn) / nn) / n;
  if (n > 35) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
  return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

// x*log(x/np) + np - x without cancellation when x is close to np.
double bd0(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

// log P(X = x) for X ~ Binomial(n, 1/2), by Loader's saddle-point expansion.
double log_pmf_half(std::uint64_t x, std::uint64_t n) {
  const double dn = static_cast<double>(n);
  if (x == 0 || x == n) return -dn * std::numbers::ln2;
  const double dx = static_cast<double>(x);
  const double half = dn / 2.0;
  const double lc = stirlerr(dn) - stirlerr(dx) - stirlerr(dn - dx) - bd0(dx, half) - bd0(dn - dx, half);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(dx) + std::log1p(-dx / dn);
  return lc - 0.5 * lf;
}

// log P(X <= m) for m < n/2: pmf(m) times the sum of pmf(j)/pmf(m) for j <= m.
double log_lower_tail_half(std::uint64_t m, std::uint64_t n) {
  double sum = 1.0;
  double term = 1.0;
  for (std::uint64_t j = m; j > 0; --j) {
    term *= static_cast<double>(j) / static_cast<double>(n - j + 1);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return log_pmf_half(m, n) + std::log(sum);
}

}  // namespace

double binomial_two_sided(std::uint64_t k, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("binomial test on an empty bin (n = 0)");
  if (k > n) throw std::invalid_argument(fmt::format("binomial test with k = {} > n = {}", k, n));
  const std::uint64_t m = std::min(k, n - k);
  // Both tails coincide with the whole support when m is a mode.
  if (2 * m + 1 >= n) return 1.0;
  const double log_p = std::numbers::ln2 + log_lower_tail_half(m, n);
  return std::min(1.0, std::exp(log_p));
}

void check_bin_width(std::int32_t width_s) {
  if (width_s <= 0 || kSecondsPerDay % width_s != 0)
    throw ConfigError(fmt::format("bin width {} s does not divide 86400", width_s));
}

std::vector<BinCounts> bin_events(std::span<const GroundedEvent> events, GreetingClass class_a,
                                  GreetingClass class_b, std::int32_t width_s) {
  check_bin_width(width_s);
  std::vector<BinCounts> bins(static_cast<std::size_t>(kSecondsPerDay / width_s));
  for (std::size_t i = 0; i < bins.size(); ++i) bins[i].bin_index = static_cast<std::int32_t>(i);
  for (const auto& e : events) {
    if (e.cls != class_a && e.cls != class_b) continue;
    auto& bin = bins[static_cast<std::size_t>(e.local_tod_s / width_s)];
    if (e.cls == class_a) {
      ++bin.count_a;
    } else {
      ++bin.count_b;
    }
  }
  return bins;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::A: return "A";
    case Verdict::B: return "B";
    case Verdict::NotSignificant: return "not_significant";
    case Verdict::Empty: return "empty";
  }
  return "unknown";
}

BoundaryResult detect_boundary(std::span<const BinCounts> bins, std::int32_t width_s,
                               const BoundaryOptions& options) {
  check_bin_width(width_s);
  if (!(options.alpha > 0.0 && options.alpha <= 1.0))
    throw ConfigError(fmt::format("alpha {} outside (0, 1]", options.alpha));
  const std::int32_t bin_count = kSecondsPerDay / width_s;

  BoundaryResult result;
  result.width_s = width_s;
  std::size_t non_empty = 0;
  for (const auto& b : bins) {
    if (b.bin_index < 0 || b.bin_index >= bin_count)
      throw ConfigError(fmt::format("bin index {} outside a day of {} s bins", b.bin_index, width_s));
    if (b.total() > 0) ++non_empty;
  }
  result.alpha = options.bonferroni && non_empty > 0 ? options.alpha / static_cast<double>(non_empty)
                                                     : options.alpha;

  result.per_bin.reserve(bins.size());
  for (const auto& b : bins) {
    BinVerdict v{b.bin_index, b.total(), b.count_a, 1.0, Verdict::Empty};
    if (v.n > 0) {
      v.p_value = binomial_two_sided(v.k_a, v.n);
      // alpha = 1 is the no-test limit: any strict majority counts.
      const bool significant = result.alpha >= 1.0 || v.p_value < result.alpha;
      if (significant && 2 * v.k_a > v.n) {
        v.verdict = Verdict::A;
      } else if (significant && 2 * v.k_a < v.n) {
        v.verdict = Verdict::B;
      } else {
        v.verdict = Verdict::NotSignificant;
      }
    }
    result.per_bin.push_back(v);
  }

  const auto& per_bin = result.per_bin;
  std::size_t i = 0;
  while (i < per_bin.size() && per_bin[i].verdict != Verdict::A) ++i;
  if (i == per_bin.size()) return result;
  std::size_t last_a = i;
  for (; i < per_bin.size(); ++i) {
    const auto verdict = per_bin[i].verdict;
    if (verdict == Verdict::A) {
      last_a = i;
    } else if (verdict != Verdict::Empty) {
      break;
    }
  }
  for (; i < per_bin.size(); ++i) {
    if (per_bin[i].verdict == Verdict::B) {
      result.a_end_s = (per_bin[last_a].bin_index + 1) * width_s;
      result.b_start_s = per_bin[i].bin_index * width_s;
      break;
    }
  }
  return result;
}

BoundaryResult boundary_report(std::span<const GroundedEvent> events, GreetingClass class_a,
                               GreetingClass class_b, std::int32_t width_s,
                               const BoundaryOptions& options) {
  if (class_a == class_b) throw ConfigError("boundary classes must differ");
  auto bins = bin_events(events, class_a, class_b, width_s);
  return detect_boundary(bins, width_s, options);
}

void write_boundary_csv(std::ostream& out, const BoundaryResult& result) {
  // a_end may equal 86400 when the A run reaches midnight.
  auto clock = [](std::int32_t s) {
    return s == kSecondsPerDay ? std::string("24:00:00") : format_hhmmss(s);
  };
  out << "bin_start_hhmmss,count_a,count_b,p_value,verdict\n";
  for (const auto& v : result.per_bin) {
    out << format_hhmmss(v.bin_index * result.width_s) << ',' << v.k_a << ',' << (v.n - v.k_a) << ','
        << format_real(v.p_value) << ',' << to_string(v.verdict) << '\n';
  }
  if (result.has_boundary()) {
    out << "trailer," << clock(*result.a_end_s) << ',' << clock(*result.b_start_s) << ",,boundary\n";
  } else {
    out << "trailer,,,,no_boundary\n";
  }
}

}  // namespace greetground
