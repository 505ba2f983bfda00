#include "pzero/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pzero/format.hpp"

namespace pzero {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 76.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Smallest of {1, 2, 5} * 10^e not below x.
double nice_step(double x) {
  if (x <= 0.0) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(x)));
  for (const double f : {1.0, 2.0, 5.0, 10.0}) {
    if (f * mag >= x) return f * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_plot_svg(const std::vector<SummaryRow>& summary) {
  if (summary.empty()) throw std::invalid_argument("render_plot_svg: empty summary");

  double xmin = summary.front().sweep_value;
  double xmax = xmin;
  double ytop = 0.0;
  for (const SummaryRow& r : summary) {
    xmin = std::min(xmin, r.sweep_value);
    xmax = std::max(xmax, r.sweep_value);
    ytop = std::max({ytop, r.q3, r.median, r.mean});
  }
  if (xmax == xmin) {
    const double pad = std::max(1.0, std::abs(xmin) * 0.5);
    xmin -= pad;
    xmax += pad;
  }
  const double ystep = nice_step(ytop * 1.05 / 4.0);
  const double ymax = std::max(ystep, ystep * std::ceil(ytop * 1.05 / ystep));

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * plot_w; };
  const auto sy = [&](double y) { return kTop + plot_h * (1.0 - y / ymax); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" "
         "viewBox=\"0 0 720 480\">\n";
  svg += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"" + px(kLeft + plot_w / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
         "patient zero rank vs " + summary.front().param + "</text>\n";

  // gridlines and y tick labels
  for (double y = 0.0; y <= ymax + ystep * 0.5; y += ystep) {
    const std::string yy = px(sy(y));
    svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + yy + "\" x2=\"" + px(kLeft + plot_w) +
           "\" y2=\"" + yy + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(sy(y) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + fmt_double(y) +
           "</text>\n";
  }

  // x ticks at the sweep points, thinned when crowded
  const std::size_t label_stride = summary.size() > 12 ? (summary.size() + 11) / 12 : 1;
  for (std::size_t i = 0; i < summary.size(); ++i) {
    const double x = sx(summary[i].sweep_value);
    svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(kTop + plot_h) + "\" x2=\"" + px(x) +
           "\" y2=\"" + px(kTop + plot_h + 5) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    if (i % label_stride == 0) {
      svg += "<text x=\"" + px(x) + "\" y=\"" + px(kTop + plot_h + 20) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
             fmt_double(summary[i].sweep_value) + "</text>\n";
    }
  }

  // interquartile band
  if (summary.size() > 1) {
    std::string points;
    for (const SummaryRow& r : summary)
      points += px(sx(r.sweep_value)) + "," + px(sy(r.q3)) + " ";
    for (auto it = summary.rbegin(); it != summary.rend(); ++it)
      points += px(sx(it->sweep_value)) + "," + px(sy(it->q1)) + " ";
    points.pop_back();
    svg += "<polygon points=\"" + points + "\" fill=\"#9ecae1\" fill-opacity=\"0.45\" "
           "stroke=\"none\"/>\n";
  } else {
    const SummaryRow& r = summary.front();
    svg += "<line x1=\"" + px(sx(r.sweep_value)) + "\" y1=\"" + px(sy(r.q1)) + "\" x2=\"" +
           px(sx(r.sweep_value)) + "\" y2=\"" + px(sy(r.q3)) +
           "\" stroke=\"#9ecae1\" stroke-width=\"6\" stroke-opacity=\"0.6\"/>\n";
  }

  const auto polyline = [&](double SummaryRow::*field, const char* style) {
    std::string points;
    for (const SummaryRow& r : summary)
      points += px(sx(r.sweep_value)) + "," + px(sy(r.*field)) + " ";
    points.pop_back();
    svg += "<polyline points=\"" + points + "\" fill=\"none\" " + style + "/>\n";
  };
  polyline(&SummaryRow::mean,
           "stroke=\"#ff7f0e\" stroke-width=\"1.5\" stroke-dasharray=\"5,4\"");
  polyline(&SummaryRow::median, "stroke=\"#1f77b4\" stroke-width=\"2\"");
  for (const SummaryRow& r : summary) {
    svg += "<circle cx=\"" + px(sx(r.sweep_value)) + "\" cy=\"" + px(sy(r.median)) +
           "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }

  // axes
  svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(kLeft) + "\" y2=\"" +
         px(kTop + plot_h) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop + plot_h) + "\" x2=\"" +
         px(kLeft + plot_w) + "\" y2=\"" + px(kTop + plot_h) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + px(kLeft + plot_w / 2) + "\" y=\"" + px(kHeight - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         summary.front().param + "</text>\n";
  svg += "<text x=\"18\" y=\"" + px(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " + px(kTop + plot_h / 2) + ")\">normalized rank</text>\n";

  // legend
  const double lx = kLeft + plot_w - 150.0;
  svg += "<line x1=\"" + px(lx) + "\" y1=\"50\" x2=\"" + px(lx + 26) +
         "\" y2=\"50\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  svg += "<text x=\"" + px(lx + 32) +
         "\" y=\"54\" font-family=\"sans-serif\" font-size=\"12\">median</text>\n";
  svg += "<line x1=\"" + px(lx) + "\" y1=\"68\" x2=\"" + px(lx + 26) +
         "\" y2=\"68\" stroke=\"#ff7f0e\" stroke-width=\"1.5\" stroke-dasharray=\"5,4\"/>\n";
  svg += "<text x=\"" + px(lx + 32) +
         "\" y=\"72\" font-family=\"sans-serif\" font-size=\"12\">mean</text>\n";
  svg += "<rect x=\"" + px(lx) + "\" y=\"80\" width=\"26\" height=\"10\" fill=\"#9ecae1\" "
         "fill-opacity=\"0.45\"/>\n";
  svg += "<text x=\"" + px(lx + 32) +
         "\" y=\"89\" font-family=\"sans-serif\" font-size=\"12\">IQR</text>\n";

  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::vector<SummaryRow>& summary, const std::filesystem::path& svg_path) {
  const std::string svg = render_plot_svg(summary);

  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write plot file '" + svg_path.string() + "'");
  out << svg;
  out.close();
  if (!out) throw std::runtime_error("failed writing plot file '" + svg_path.string() + "'");

  const std::filesystem::path csv_path =
      svg_path.has_parent_path() ? svg_path.parent_path() / "summary.csv"
                                 : std::filesystem::path("summary.csv");
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write summary file '" + csv_path.string() + "'");
  write_summary_csv(csv, summary);
}

}  // namespace pzero
