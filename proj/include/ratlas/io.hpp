// io.hpp — deterministic CSV/JSON/SVG emission and atomic file writes.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratlas/types.hpp"

namespace ratlas::io {

inline constexpr const char* kVersion = "0.1.0";

// Shortest round-trip decimal representation (%.17g), locale-independent.
std::string format_double(double v);

// Schema: param,re,im,branch,residual
std::string trajectory_csv(const Trajectory& t, int branch_index);

// Schema: delta,e1,e2,e3,e4
std::string eigencurves_csv(const std::vector<std::array<double, 5>>& rows);

// Schema: delta,zeta_minus,zeta_plus
std::string dressed_csv(const std::vector<std::array<double, 3>>& rows);

// Temp-file + rename; no partially written files become visible.
void write_file_atomic(const std::string& path, std::string_view content);

// Minimal polyline plot: frame + one polyline per branch, no styling.
std::string svg_polylines(
    const std::vector<std::vector<std::pair<double, double>>>& branches,
    int width = 640, int height = 480);

} // namespace ratlas::io
