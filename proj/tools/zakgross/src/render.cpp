#include "zakgross/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zakgross::render {

Image::Image(int w, int h, Rgb fill) : width(w), height(h) {
  if (w < 1 || h < 1) throw std::invalid_argument("image must be non-empty");
  pixels.resize(static_cast<std::size_t>(w) * h * 3);
  for (std::size_t k = 0; k < pixels.size(); k += 3) {
    pixels[k] = fill.r;
    pixels[k + 1] = fill.g;
    pixels[k + 2] = fill.b;
  }
}

void Image::set(int x, int y, Rgb color) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  const std::size_t k = (static_cast<std::size_t>(y) * width + x) * 3;
  pixels[k] = color.r;
  pixels[k + 1] = color.g;
  pixels[k + 2] = color.b;
}

Rgb Image::at(int x, int y) const {
  const std::size_t k = (static_cast<std::size_t>(y) * width + x) * 3;
  return {pixels[k], pixels[k + 1], pixels[k + 2]};
}

Rgb diverging(double value, double limit) {
  double t = limit > 0.0 ? value / limit : 0.0;
  if (!std::isfinite(t)) t = 0.0;
  t = std::clamp(t, -1.0, 1.0);
  const auto fade = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - std::abs(t))));
  if (t >= 0.0) return {255, fade, fade};
  return {fade, fade, 255};
}

Image heatmap(const Eigen::MatrixXd& values, double limit) {
  const int nu = static_cast<int>(values.rows());
  const int nv = static_cast<int>(values.cols());
  const int block = std::max(1, 512 / std::max(1, std::min(nu, nv)));
  Image image(nu * block, nv * block);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const Rgb c = diverging(values(i, j), limit);
      const int top = (nv - 1 - j) * block;
      for (int dy = 0; dy < block; ++dy) {
        for (int dx = 0; dx < block; ++dx) image.set(i * block + dx, top + dy, c);
      }
    }
  }
  return image;
}

namespace {

void draw_line(Image& image, int x0, int y0, int x1, int y1, Rgb color) {
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    image.set(x0, y0, color);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

}  // namespace

Image line_plot(const std::vector<Series>& series, const PlotRange& range, int width,
                int height) {
  if (!(range.x_max > range.x_min) || !(range.y_max > range.y_min)) {
    throw std::invalid_argument("plot range must have positive extent");
  }
  Image image(width, height);
  const int margin = 24;
  const int left = margin;
  const int right = width - 1 - margin;
  const int top = margin;
  const int bottom = height - 1 - margin;
  auto px = [&](double x) {
    return left + static_cast<int>(std::lround((x - range.x_min) / (range.x_max - range.x_min) *
                                               (right - left)));
  };
  auto py = [&](double y) {
    return bottom - static_cast<int>(std::lround((y - range.y_min) /
                                                 (range.y_max - range.y_min) * (bottom - top)));
  };
  const Rgb frame{0, 0, 0};
  const Rgb grey{160, 160, 160};
  if (range.y_min < 0.0 && range.y_max > 0.0) draw_line(image, left, py(0.0), right, py(0.0), grey);
  draw_line(image, left, top, right, top, frame);
  draw_line(image, left, bottom, right, bottom, frame);
  draw_line(image, left, top, left, bottom, frame);
  draw_line(image, right, top, right, bottom, frame);
  for (const Series& s : series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t k = 0; k < n; ++k) {
      const int x = px(s.x[k]);
      const int y = py(s.y[k]);
      for (int d = -2; d <= 2; ++d) {
        image.set(x + d, y, s.color);
        image.set(x, y + d, s.color);
      }
      if (k + 1 < n) draw_line(image, x, y, px(s.x[k + 1]), py(s.y[k + 1]), s.color);
    }
  }
  return image;
}

void write_png(const std::string& path, const Image& image) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.pixels.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw std::runtime_error("cannot write " + path + ": " + message);
  }
}

}  // namespace zakgross::render
