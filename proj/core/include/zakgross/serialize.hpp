#pragma once

// CSV and JSON encodings of sampled grids.

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "zakgross/grid.hpp"
#include "zakgross/qudit.hpp"

namespace zakgross {

/// Shortest round-trip-safe text for a double ("%.17g").
std::string format_double(double value);

/// Header "u,v,value", then one row per sample, first axis outermost.
void write_grid_csv(std::ostream& out, const Grid2& grid);

/// {"system": {"d", "ell"}, "grid": {"nu", "nv"}, "values": [row-major],
///  "axes": {...}, "max_imag": ...}
nlohmann::json grid_json(const TorusGeometry& geometry, const Grid2& grid);

}  // namespace zakgross
