#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pzero/harness.hpp"

namespace pzero {

// Renders the summary as a static SVG: sweep value on x, median
// normalized rank on y, interquartile band behind it, mean dashed.
// Output bytes depend only on the summary contents.
std::string render_plot_svg(const std::vector<SummaryRow>& summary);

// Writes the SVG to svg_path and the summary table to summary.csv in
// the same directory. Throws on unwritable paths.
void emit_plot(const std::vector<SummaryRow>& summary, const std::filesystem::path& svg_path);

}  // namespace pzero
