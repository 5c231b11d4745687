#include "zakgross/serialize.hpp"

#include <cstdio>

namespace zakgross {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_grid_csv(std::ostream& out, const Grid2& grid) {
  out << "u,v,value\n";
  for (int i = 0; i < grid.first.count; ++i) {
    const std::string u = format_double(grid.first.at(i));
    for (int j = 0; j < grid.second.count; ++j) {
      out << u << ',' << format_double(grid.second.at(j)) << ','
          << format_double(grid.values(i, j)) << '\n';
    }
  }
}

nlohmann::json grid_json(const TorusGeometry& geometry, const Grid2& grid) {
  nlohmann::json values = nlohmann::json::array();
  for (int i = 0; i < grid.first.count; ++i) {
    for (int j = 0; j < grid.second.count; ++j) values.push_back(grid.values(i, j));
  }
  auto axis = [](const Axis& a) {
    return nlohmann::json{{"start", a.start}, {"step", a.step}, {"count", a.count}};
  };
  return {{"system", {{"d", geometry.d}, {"ell", geometry.ell}}},
          {"grid", {{"nu", grid.first.count}, {"nv", grid.second.count}}},
          {"axes", {{"u", axis(grid.first)}, {"v", axis(grid.second)}}},
          {"max_imag", grid.max_imag},
          {"values", std::move(values)}};
}

}  // namespace zakgross
