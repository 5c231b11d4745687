#pragma once

// Raster output for heatmaps and line plots, written as 8-bit RGB PNG.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zakgross::render {

struct Rgb {
  std::uint8_t r = 255;
  std::uint8_t g = 255;
  std::uint8_t b = 255;

  bool operator==(const Rgb&) const = default;
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB, top row first

  Image(int w, int h, Rgb fill = {});
  void set(int x, int y, Rgb color);
  Rgb at(int x, int y) const;
};

/// Blue at -limit, white at 0, red at +limit; clamps outside.
Rgb diverging(double value, double limit);

/// values(i, j) at column i, row j counted from the bottom, each sample
/// drawn as a pixel block so the short side reaches about 512 pixels.
Image heatmap(const Eigen::MatrixXd& values, double limit);

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  Rgb color;
};

struct PlotRange {
  double x_min;
  double x_max;
  double y_min;
  double y_max;
};

/// Polylines inside a frame, plus a grey line at y = 0 when it is in range.
Image line_plot(const std::vector<Series>& series, const PlotRange& range, int width = 640,
                int height = 480);

/// Throws std::runtime_error if the file cannot be written.
void write_png(const std::string& path, const Image& image);

}  // namespace zakgross::render
