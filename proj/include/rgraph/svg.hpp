#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace rgraph {

struct SvgSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// Minimal single-file line chart: axes with ticks, one polyline per
/// series, a small legend. No timestamps or external references, so the
/// output is byte-identical for identical inputs.
void write_line_chart(std::ostream& os, const std::vector<SvgSeries>& series,
                      const std::string& x_label, const std::string& y_label,
                      const std::string& title);

}  // namespace rgraph
