#pragma once

#include <span>
#include <string>
#include <vector>

#include "thinfilm/diagnostics.hpp"
#include "thinfilm/grid.hpp"
#include "thinfilm/stepper.hpp"

namespace thinfilm {

/// Writes to a sibling temporary file and renames it over `path`, creating
/// parent directories as needed.
void write_atomic(const std::string& path, const std::string& content);

inline constexpr const char* kCsvHeader = "t,mass,mass_expected,energy,dissipation,ux_l2,h1_error,envelope,min_u,hyp_ok";

/// Shortest round-trip decimal form; "nan" / "inf" for non-finite values.
std::string format_number(double x);

std::string records_csv(std::span<const SimRecord> records);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Self-contained SVG line chart. Non-finite points, and non-positive points
/// on log axes, break the polyline.
std::string render_svg(const Chart& chart);

/// Film height u(x) at a handful of times.
std::string profiles_svg(const Grid& grid, std::span<const State> snapshots, const std::string& title);

/// H1 error against time with the envelope overlaid where available.
std::string error_svg(std::span<const SimRecord> records, const std::string& title, bool log_x, bool log_y);

}  // namespace thinfilm
