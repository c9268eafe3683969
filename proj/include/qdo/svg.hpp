#pragma once

#include <string>
#include <vector>

#include "qdo/csv.hpp"

namespace qdo {

struct ChartOptions {
  std::string title;
  std::string x_label = "tau";
  int width = 720;
  int height = 440;
};

/// Line chart of the named columns against x_column. Non-finite points
/// break the polyline. Output depends only on the inputs.
std::string render_line_chart(const CsvTable& t, const std::string& x_column,
                              const std::vector<std::string>& y_columns,
                              const ChartOptions& opts = {});

}  // namespace qdo
