#include "zakgross/grid.hpp"

#include <functional>

#include "zakgross/errors.hpp"

namespace zakgross {

std::vector<double> Axis::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = at(i);
  return out;
}

namespace {

template <class Better>
std::pair<int, int> arg_best(const Eigen::MatrixXd& values, Better better) {
  Eigen::Index bi = 0;
  Eigen::Index bj = 0;
  double best = values(0, 0);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (better(values(i, j), best)) {
        best = values(i, j);
        bi = i;
        bj = j;
      }
    }
  }
  return {static_cast<int>(bi), static_cast<int>(bj)};
}

}  // namespace

std::pair<int, int> Grid2::argmin() const { return arg_best(values, std::less<>()); }

std::pair<int, int> Grid2::argmax() const { return arg_best(values, std::greater<>()); }

int round_up_to_multiple(int n, int d) {
  if (d < 1) throw DomainError("multiple must be >= 1");
  if (n < 1) throw DomainError("grid size must be >= 1");
  return ((n + d - 1) / d) * d;
}

Axis periodic_axis(double period, int count) {
  if (count < 1) throw DomainError("grid size must be >= 1");
  return {0.0, period / count, count};
}

Axis cell_axis(double length, int count, double offset) {
  if (count < 1) throw DomainError("grid size must be >= 1");
  const double step = length / count;
  return {offset * step, step, count};
}

}  // namespace zakgross
