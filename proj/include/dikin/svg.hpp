#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dikin::svg {

// Scatter plot with fixed canvas and autoscaled axes; output bytes are a
// pure function of the input, so files diff cleanly in tests.
struct ScatterOptions {
  int width = 800;
  int height = 600;
  double marker_radius = 1.4;
  std::string title;
  std::string x_label;
  std::string y_label;
};

std::string scatter(const std::vector<std::pair<double, double>>& points,
                    const ScatterOptions& opts);

void write_file(const std::string& path, const std::string& content);

}  // namespace dikin::svg
