#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "greetground/temporal.hpp"
#include "test_support.hpp"

namespace greetground {
namespace {

using testing::ymd;

constexpr std::int32_t hms(int h, int m, int s = 0) { return h * 3600 + m * 60 + s; }

UnixSeconds utc_of(LocalDate d, std::int32_t tod) {
  return std::int64_t{d.time_since_epoch().count()} * kSecondsPerDay + tod;
}

CircularAccumulator acc_of(std::initializer_list<std::int32_t> samples) {
  CircularAccumulator acc;
  for (auto s : samples) acc.add(s);
  return acc;
}

// Signed circular difference in (-43200, 43200].
std::int32_t circ_diff(std::int32_t a, std::int32_t b) {
  std::int32_t d = ((a - b) % kSecondsPerDay + kSecondsPerDay) % kSecondsPerDay;
  return d > kSecondsPerDay / 2 ? d - kSecondsPerDay : d;
}

TEST(LocalTime, Examples) {
  const auto day = ymd(2016, 11, 9);
  EXPECT_EQ(local_time(utc_of(day, hms(12, 34, 56)), -18000), (LocalTime{day, 27296}));
  EXPECT_EQ(local_time(utc_of(day, hms(21, 0)), 19800), (LocalTime{ymd(2016, 11, 10), 9000}));
  EXPECT_EQ(local_time(utc_of(day, 0), 0), (LocalTime{day, 0}));
}

TEST(LocalTime, RollsBackAcrossMidnight) {
  EXPECT_EQ(local_time(utc_of(ymd(2016, 1, 1), hms(2, 0)), -18000), (LocalTime{ymd(2015, 12, 31), hms(21, 0)}));
  EXPECT_EQ(local_time(-1, 0), (LocalTime{ymd(1969, 12, 31), 86399}));
}

TEST(LocalTime, RejectsOutOfRangeOffset) {
  EXPECT_THROW(local_time(0, -43201), std::out_of_range);
  EXPECT_THROW(local_time(0, 50401), std::out_of_range);
  EXPECT_NO_THROW(local_time(0, 50400));
}

TEST(Calendar, WeekendAndFormatting) {
  EXPECT_TRUE(is_weekend(ymd(2016, 11, 5)));
  EXPECT_TRUE(is_weekend(ymd(2016, 11, 6)));
  EXPECT_FALSE(is_weekend(ymd(2016, 11, 7)));
  EXPECT_EQ(format_date(ymd(2016, 11, 9)), "2016-11-09");
  EXPECT_EQ(parse_date("2016-02-29"), ymd(2016, 2, 29));
  EXPECT_EQ(parse_date("2015-02-29"), std::nullopt);
  EXPECT_EQ(parse_date("2016-1-01"), std::nullopt);
  EXPECT_EQ(format_hhmmss(27296), "07:34:56");
  EXPECT_EQ(format_hhmmss(0), "00:00:00");
  EXPECT_EQ(format_hhmmss(86399), "23:59:59");
  EXPECT_THROW(format_hhmmss(86400), std::out_of_range);
  EXPECT_EQ(parse_hhmmss("09:42:41"), hms(9, 42, 41));
  EXPECT_EQ(parse_hhmmss("24:00:00"), std::nullopt);
  EXPECT_EQ(parse_hhmmss("9:42:41"), std::nullopt);
}

TEST(CircularAccumulator, AddExamples) {
  auto quarter = acc_add({}, 21600);
  EXPECT_DOUBLE_EQ(quarter.sum_sin(), 1.0);
  EXPECT_NEAR(quarter.sum_cos(), 0.0, 1e-15);
  EXPECT_EQ(quarter.count(), 1u);

  auto zero = acc_add({}, 0);
  EXPECT_EQ(zero.sum_sin(), 0.0);
  EXPECT_EQ(zero.sum_cos(), 1.0);

  auto half = acc_add({}, 43200);
  EXPECT_NEAR(half.sum_sin(), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(half.sum_cos(), -1.0);
}

TEST(CircularAccumulator, RejectsOutOfRange) {
  CircularAccumulator acc;
  EXPECT_THROW(acc.add(-1), std::out_of_range);
  EXPECT_THROW(acc.add(86400), std::out_of_range);
  EXPECT_TRUE(acc.empty());
  EXPECT_THROW(CircularAccumulator(0.5, 0.0, 0), std::invalid_argument);
  EXPECT_THROW(CircularAccumulator(3.0, 0.0, 2), std::invalid_argument);
}

TEST(CircularAccumulator, MergeIdentityAndCommutativity) {
  auto x = acc_of({hms(8, 0), hms(9, 30), hms(23, 10)});
  auto merged = acc_merge({}, x);
  EXPECT_EQ(merged.sum_sin(), x.sum_sin());
  EXPECT_EQ(merged.sum_cos(), x.sum_cos());
  EXPECT_EQ(merged.count(), x.count());

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int32_t> tod(0, kSecondsPerDay - 1);
  for (int iter = 0; iter < 100; ++iter) {
    CircularAccumulator a, b;
    for (int i = 0; i < 10; ++i) a.add(tod(rng));
    for (int i = 0; i < 7; ++i) b.add(tod(rng));
    auto ab = acc_merge(a, b), ba = acc_merge(b, a);
    EXPECT_EQ(ab.sum_sin(), ba.sum_sin());
    EXPECT_EQ(ab.sum_cos(), ba.sum_cos());
    EXPECT_EQ(ab.count(), ba.count());
  }
}

TEST(CircularMean, SymmetricAboutMidnight) {
  auto merged = acc_merge(acc_of({hms(23, 0)}), acc_of({hms(1, 0)}));
  EXPECT_EQ(circular_mean(merged), 0);
}

TEST(CircularMean, Examples) {
  EXPECT_EQ(circular_mean(acc_of({hms(8, 0)})), hms(8, 0));
  EXPECT_EQ(circular_mean(acc_of({hms(6, 0), hms(8, 0), hms(10, 0)})), hms(8, 0));
  EXPECT_EQ(circular_mean(acc_of({hms(23, 50), hms(0, 30)})), hms(0, 10));
}

TEST(CircularMean, Errors) {
  try {
    circular_mean(CircularAccumulator{});
    FAIL();
  } catch (const CircularStatsError& e) {
    EXPECT_EQ(e.kind(), CircularStatsError::Kind::EmptyAccumulator);
  }
  try {
    circular_mean(acc_of({0, hms(12, 0)}));
    FAIL();
  } catch (const CircularStatsError& e) {
    EXPECT_EQ(e.kind(), CircularStatsError::Kind::Undefined);
  }
  // Four quarter points cancel as well.
  EXPECT_THROW(circular_mean(acc_of({0, hms(6, 0), hms(12, 0), hms(18, 0)})), CircularStatsError);
}

TEST(ResultantLength, Examples) {
  EXPECT_DOUBLE_EQ(resultant_length(acc_of({hms(17, 23, 11)})), 1.0);
  EXPECT_NEAR(resultant_length(acc_of({0, hms(12, 0)})), 0.0, 1e-15);
  // |cos(15 deg)|: two unit vectors 30 degrees apart.
  EXPECT_NEAR(resultant_length(acc_of({hms(23, 0), hms(1, 0)})), 0.96592582628906831, 1e-12);
  EXPECT_THROW(resultant_length(CircularAccumulator{}), CircularStatsError);
}

TEST(CircularProperty, RotationEquivariance) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int32_t> tod(0, kSecondsPerDay - 1);
  std::uniform_int_distribution<std::int32_t> spread(0, 4 * 3600);
  for (int iter = 0; iter < 300; ++iter) {
    const auto centre = tod(rng);
    const auto width = spread(rng);
    std::uniform_int_distribution<std::int32_t> noise(-width, width);
    std::vector<std::int32_t> samples(1 + iter % 40);
    for (auto& s : samples) s = ((centre + noise(rng)) % kSecondsPerDay + kSecondsPerDay) % kSecondsPerDay;
    CircularAccumulator base;
    for (auto s : samples) base.add(s);
    const auto mean = circular_mean(base);
    const auto shift = tod(rng);
    CircularAccumulator rotated;
    for (auto s : samples) rotated.add((s + shift) % kSecondsPerDay);
    EXPECT_LE(std::abs(circ_diff(circular_mean(rotated), (mean + shift) % kSecondsPerDay)), 1)
        << "iteration " << iter;
  }
}

TEST(CircularProperty, MergeEquivalenceAcrossPartitions) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int32_t> tod(0, kSecondsPerDay - 1);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::int32_t> samples(1 + iter * 7 % 500);
    for (auto& s : samples) s = tod(rng);
    CircularAccumulator whole;
    for (auto s : samples) whole.add(s);

    std::uniform_int_distribution<int> parts_dist(1, 8);
    std::vector<CircularAccumulator> parts(static_cast<std::size_t>(parts_dist(rng)));
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    for (auto s : samples) parts[pick(rng)].add(s);
    CircularAccumulator folded;
    for (const auto& p : parts) folded.merge(p);

    EXPECT_EQ(folded.count(), whole.count());
    const double scale = static_cast<double>(samples.size());
    EXPECT_LE(std::abs(folded.sum_sin() - whole.sum_sin()), 1e-9 * scale);
    EXPECT_LE(std::abs(folded.sum_cos() - whole.sum_cos()), 1e-9 * scale);
  }
}

TEST(CircularProperty, SymmetricSamplesRecoverCentre) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int32_t> tod(0, kSecondsPerDay - 1);
  std::uniform_int_distribution<std::int32_t> offset(1, 5 * 3600);
  for (int iter = 0; iter < 300; ++iter) {
    const auto centre = tod(rng);
    CircularAccumulator acc;
    for (int i = 0; i < 5; ++i) {
      const auto d = offset(rng);
      acc.add((centre + d) % kSecondsPerDay);
      acc.add(((centre - d) % kSecondsPerDay + kSecondsPerDay) % kSecondsPerDay);
    }
    EXPECT_LE(std::abs(circ_diff(circular_mean(acc), centre)), 1);
  }
}

TEST(CircularProperty, ResultantInUnitInterval) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int32_t> tod(0, kSecondsPerDay - 1);
  for (int iter = 0; iter < 200; ++iter) {
    CircularAccumulator acc;
    for (int i = 0; i <= iter % 30; ++i) acc.add(tod(rng));
    const double r = resultant_length(acc);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
    EXPECT_LE(std::hypot(acc.sum_sin(), acc.sum_cos()), static_cast<double>(acc.count()) + 1e-9);
  }
}

TEST(RotatedQuantiles, Examples) {
  const std::vector<std::int32_t> morning{hms(7, 0), hms(8, 0), hms(9, 0)};
  const std::vector<double> median{0.5};
  EXPECT_EQ(rotated_quantiles(morning, median), (std::vector<std::int32_t>{hms(8, 0)}));

  // Rotate by 12 h: 11:00 11:30 12:30 13:00; nearest-rank median is 11:30 -> 23:30.
  const std::vector<std::int32_t> midnight{hms(23, 0), hms(23, 30), hms(0, 30), hms(1, 0)};
  EXPECT_EQ(rotated_quantiles(midnight, median), (std::vector<std::int32_t>{hms(23, 30)}));

  const std::vector<double> extremes{0.0, 1.0};
  EXPECT_EQ(rotated_quantiles(midnight, extremes), (std::vector<std::int32_t>{hms(23, 0), hms(1, 0)}));
}

TEST(RotatedQuantiles, FiveNumberOfSingleton) {
  const std::vector<std::int32_t> one{hms(8, 0)};
  const std::vector<double> qs{0.0, 0.25, 0.5, 0.75, 1.0};
  EXPECT_EQ(rotated_quantiles(one, qs), std::vector<std::int32_t>(5, hms(8, 0)));
}

TEST(RotatedQuantiles, Errors) {
  const std::vector<double> qs{0.5};
  EXPECT_THROW(rotated_quantiles(std::vector<std::int32_t>{}, qs), std::invalid_argument);
  const std::vector<std::int32_t> antipodal{0, hms(12, 0)};
  EXPECT_THROW(rotated_quantiles(antipodal, qs), CircularStatsError);
  const std::vector<std::int32_t> one{100};
  const std::vector<double> bad{1.5};
  EXPECT_THROW(rotated_quantiles(one, bad), std::invalid_argument);
}

}  // namespace
}  // namespace greetground
