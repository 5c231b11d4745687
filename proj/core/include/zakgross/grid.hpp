#pragma once

// Uniformly sampled functions on rectangles of phase space.

#include <vector>

#include <Eigen/Dense>

#include "zakgross/qudit.hpp"

namespace zakgross {

struct Axis {
  double start = 0.0;
  double step = 1.0;
  int count = 0;

  double at(int i) const { return start + i * step; }
  std::vector<double> points() const;
};

/// values(i, j) samples f(first.at(i), second.at(j)).
struct Grid2 {
  Axis first;
  Axis second;
  Eigen::MatrixXd values;
  /// Largest |Im| discarded when the samples were made real.
  double max_imag = 0.0;

  double cell_area() const { return first.step * second.step; }
  /// Riemann sum: sum of values times the cell area.
  double integral() const { return values.sum() * cell_area(); }
  double abs_integral() const { return values.cwiseAbs().sum() * cell_area(); }
  /// Index of the smallest sample, first-major ties resolved to the lowest index.
  std::pair<int, int> argmin() const;
  std::pair<int, int> argmax() const;
};

/// Samples of a function on the torus [0, d ell)^2, nodes at i * d ell / N.
struct TorusGrid {
  TorusGeometry geometry;
  Grid2 samples;

  /// (1/d) times the Riemann sum over the torus.
  double normalization() const { return samples.integral() / geometry.d; }
};

/// Samples of a Zak distribution |Z_alpha psi(k, q)|^2; first axis q in
/// [0, alpha), second axis k in [0, 2 pi / alpha).
struct ZakGrid {
  double alpha;
  Grid2 samples;
};

/// Samples of the syndrome density over [0, ell)^2; first axis s, second t.
struct SyndromeGrid {
  TorusGeometry geometry;
  Grid2 samples;
};

/// Smallest multiple of d that is >= n (and >= d).
int round_up_to_multiple(int n, int d);

/// count nodes i * period / count starting at 0.
Axis periodic_axis(double period, int count);

/// count cells over [0, length); samples at (i + offset) * length / count.
Axis cell_axis(double length, int count, double offset);

}  // namespace zakgross
