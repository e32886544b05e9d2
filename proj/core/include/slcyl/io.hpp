#pragma once

// Output helpers: files, CSV tables and SVG plot data.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "slcyl/assembly.hpp"
#include "slcyl/weighted.hpp"

namespace slcyl::io {

/// Writes `content` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& content);

/// CSV with a header row; values printed with 17 significant digits.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Log-log scatter of (x, y) > 0 with an optional fitted line.
std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<std::pair<double, double>>& points, const FitResult* fit = nullptr);

/// The regions X1, band and X2 in the (u, r) quadrant for |u| < 1/A.
std::string region_map_svg(const SmoothingProfile& profile);

}  // namespace slcyl::io
