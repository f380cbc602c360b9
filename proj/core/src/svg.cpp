#include <algorithm>
#include <cmath>
#include <optional>
#include <array>
#include <ostream>

#include <fmt/format.h>

#include "greetground/report.hpp"

namespace greetground {
namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

constexpr std::array<std::string_view, 6> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c",
                                                   "#d62728", "#9467bd", "#8c564b"};

std::string num(double v) { return fmt::format("{:.2f}", v); }

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string clock_label(std::int64_t seconds) {
  auto s = seconds % kSecondsPerDay;
  if (s < 0) s += kSecondsPerDay;
  return fmt::format("{:02}:{:02}", s / 3600, (s / 60) % 60);
}

void open_svg(std::ostream& out, std::string_view title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << escape(title) << "</text>\n";
}

void frame(std::ostream& out) {
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kPlotW)
      << "\" height=\"" << num(kPlotH) << "\" fill=\"none\" stroke=\"black\"/>\n";
}

// Horizontal grid with clock labels for y = seconds in [lo, hi].
void time_axis_y(std::ostream& out, double lo, double hi, std::int32_t step) {
  const auto first = static_cast<std::int64_t>(std::ceil(lo / step)) * step;
  for (auto t = first; t <= hi; t += step) {
    const double y = kTop + kPlotH - (static_cast<double>(t) - lo) / (hi - lo) * kPlotH;
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft + kPlotW)
        << "\" y2=\"" << num(y) << "\" stroke=\"#eeeeee\"/>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << clock_label(t) << "</text>\n";
  }
}

void legend(std::ostream& out, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double x = kLeft + 10 + static_cast<double>(i) * 150.0;
    const double y = kHeight - 18;
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 9) << "\" width=\"10\" height=\"10\" fill=\""
        << kPalette[i % kPalette.size()] << "\"/>\n";
    out << "<text x=\"" << num(x + 14) << "\" y=\"" << num(y) << "\" font-size=\"11\">"
        << escape(labels[i]) << "</text>\n";
  }
}

}  // namespace

void write_daily_svg(std::ostream& out, std::span<const DailySeries> series,
                     std::span<const Holiday> holidays, std::string_view country,
                     std::string_view title) {
  open_svg(out, title);
  std::optional<LocalDate> first, last;
  std::int32_t lo = kSecondsPerDay, hi = 0;
  for (const auto& s : series)
    for (const auto& p : s.points) {
      if (!first || p.date < *first) first = p.date;
      if (!last || p.date > *last) last = p.date;
      lo = std::min(lo, p.mean_tod_s);
      hi = std::max(hi, p.mean_tod_s);
    }
  if (!first) {
    frame(out);
    out << "</svg>\n";
    return;
  }
  const double y_lo = std::max(0, lo - 1800);
  const double y_hi = std::min(kSecondsPerDay, hi + 1800);
  const auto day_count = (*last - *first).count() + 1;
  const double day_w = kPlotW / static_cast<double>(day_count);
  auto x_of = [&](LocalDate d) { return kLeft + (static_cast<double>((d - *first).count()) + 0.5) * day_w; };
  auto y_of = [&](double t) { return kTop + kPlotH - (t - y_lo) / (y_hi - y_lo) * kPlotH; };

  for (auto d = *first; d <= *last; d += std::chrono::days{1}) {
    if (!is_weekend(d)) continue;
    out << "<rect class=\"weekend\" data-date=\"" << format_date(d) << "\" x=\""
        << num(x_of(d) - day_w / 2) << "\" y=\"" << num(kTop) << "\" width=\"" << num(day_w)
        << "\" height=\"" << num(kPlotH) << "\" fill=\"#d9d9d9\"/>\n";
  }
  time_axis_y(out, y_lo, y_hi, 1800);
  for (const auto& h : holidays) {
    if (h.iso2 != country || h.date < *first || h.date > *last) continue;
    const double x = x_of(h.date);
    out << "<line class=\"holiday\" data-date=\"" << format_date(h.date) << "\" x1=\"" << num(x)
        << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x) << "\" y2=\"" << num(kTop + kPlotH)
        << "\" stroke=\"#555555\" stroke-dasharray=\"4 3\"/>\n";
    out << "<text x=\"" << num(x + 3) << "\" y=\"" << num(kTop + 12) << "\" font-size=\"10\">"
        << escape(h.label) << "</text>\n";
  }
  // Date ticks, at most ~15 labels.
  const auto label_every = std::max<std::int64_t>(1, (day_count + 14) / 15);
  for (std::int64_t i = 0; i < day_count; i += label_every) {
    const auto d = *first + std::chrono::days{i};
    out << "<text x=\"" << num(x_of(d)) << "\" y=\"" << num(kTop + kPlotH + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << format_date(d).substr(5) << "</text>\n";
  }
  frame(out);

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto colour = kPalette[i % kPalette.size()];
    labels.push_back(series[i].label);
    out << "<polyline class=\"series\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < series[i].points.size(); ++j) {
      const auto& p = series[i].points[j];
      out << (j ? " " : "") << num(x_of(p.date)) << ',' << num(y_of(p.mean_tod_s));
    }
    out << "\"/>\n";
  }
  legend(out, labels);
  out << "</svg>\n";
}

void write_area_svg(std::ostream& out, const AreaSeries& series, std::string_view title) {
  open_svg(out, title);
  const auto n = series.bins.size();
  auto x_of = [&](std::size_t i) {
    return kLeft + (static_cast<double>(i) + 0.5) / static_cast<double>(std::max<std::size_t>(n, 1)) * kPlotW;
  };
  auto y_of = [&](double pct) { return kTop + kPlotH - pct / 100.0 * kPlotH; };

  std::vector<std::array<double, kGreetingClassCount + 1>> stacked(n);
  for (std::size_t i = 0; i < n; ++i) {
    stacked[i][0] = 0.0;
    for (std::size_t c = 0; c < kGreetingClassCount; ++c)
      stacked[i][c + 1] = stacked[i][c] + series.bins[i].shares_pct[c];
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < kGreetingClassCount; ++c) {
    labels.emplace_back(to_string(kAllGreetingClasses[c]));
    out << "<polygon class=\"band\" data-class=\"" << labels.back() << "\" fill=\""
        << kPalette[c % kPalette.size()] << "\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < n; ++i) out << (i ? " " : "") << num(x_of(i)) << ',' << num(y_of(stacked[i][c + 1]));
    for (std::size_t i = n; i-- > 0;) out << ' ' << num(x_of(i)) << ',' << num(y_of(stacked[i][c]));
    out << "\"/>\n";
  }
  for (int h = 0; h <= 24; h += 2) {
    const double x = kLeft + h / 24.0 * kPlotW;
    out << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + kPlotH + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt::format("{:02}:00", h) << "</text>\n";
  }
  for (int pct = 0; pct <= 100; pct += 25) {
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y_of(pct) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << pct << "%</text>\n";
  }
  frame(out);
  legend(out, labels);
  out << "</svg>\n";
}

void write_boxplot_svg(std::ostream& out, const BoxplotSummary& summary, std::string_view title) {
  open_svg(out, title);
  // Unwrap each five-number summary around its median so boxes crossing
  // midnight stay contiguous.
  std::vector<std::array<double, 5>> unwrapped;
  double lo = 0, hi = kSecondsPerDay;
  bool first = true;
  for (const auto& row : summary.rows) {
    std::array<double, 5> u{};
    const double median = row.five[2];
    for (std::size_t i = 0; i < 5; ++i) {
      double d = row.five[i] - median;
      if (d > kSecondsPerDay / 2) d -= kSecondsPerDay;
      if (d <= -kSecondsPerDay / 2) d += kSecondsPerDay;
      u[i] = median + d;
    }
    if (first) {
      lo = u[0];
      hi = u[4];
      first = false;
    }
    lo = std::min(lo, u[0]);
    hi = std::max(hi, u[4]);
    unwrapped.push_back(u);
  }
  lo = std::floor((lo - 1800) / 3600) * 3600;
  hi = std::ceil((hi + 1800) / 3600) * 3600;
  auto y_of = [&](double t) { return kTop + kPlotH - (t - lo) / (hi - lo) * kPlotH; };
  time_axis_y(out, lo, hi, hi - lo > 12 * 3600 ? 7200 : 3600);

  const auto n = summary.rows.size();
  const double slot = kPlotW / static_cast<double>(std::max<std::size_t>(n, 1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& u = unwrapped[i];
    const double cx = kLeft + (static_cast<double>(i) + 0.5) * slot;
    const double half = std::min(40.0, slot * 0.3);
    const auto colour = kPalette[i % kPalette.size()];
    out << "<g class=\"box\" data-group=\"" << escape(summary.rows[i].key.label()) << "\">\n";
    out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(y_of(u[0])) << "\" x2=\"" << num(cx)
        << "\" y2=\"" << num(y_of(u[4])) << "\" stroke=\"black\"/>\n";
    out << "<rect x=\"" << num(cx - half) << "\" y=\"" << num(y_of(u[3])) << "\" width=\"" << num(2 * half)
        << "\" height=\"" << num(y_of(u[1]) - y_of(u[3])) << "\" fill=\"" << colour
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(cx - half) << "\" y1=\"" << num(y_of(u[2])) << "\" x2=\"" << num(cx + half)
        << "\" y2=\"" << num(y_of(u[2])) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    out << "</g>\n";
    out << "<text x=\"" << num(cx) << "\" y=\"" << num(kTop + kPlotH + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << escape(summary.rows[i].key.label())
        << "</text>\n";
  }
  frame(out);
  out << "</svg>\n";
}

}  // namespace greetground
