#include <cmath>
#include <numbers>

#include "zakgross/errors.hpp"
#include "zakgross/parallel.hpp"
#include "zakgross/zak_gross.hpp"

namespace zakgross {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sign_of(const LatticeSeries& series, int n, int m) {
  if (!series.alternating) return 1.0;
  return ((static_cast<long long>(n) * m) % 2 == 0) ? 1.0 : -1.0;
}

LatticeEnvelope series_envelope(const CvState& state, const LatticeSeries& series) {
  return state.envelope().on_lattice(series.hx, series.hp);
}

}  // namespace

LatticeSeries zak_gross_series(const TorusGeometry& geometry) {
  const double ell = geometry.ell;
  return {ell, ell, ell, ell, 1.0 / kTwoPi, true};
}

LatticeSeries zak_series(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  return {alpha, kTwoPi / alpha, kTwoPi / alpha, alpha, 1.0 / kTwoPi, true};
}

LatticeSeries syndrome_series(const TorusGeometry& geometry) {
  const double h = geometry.period();
  // (-1)^{d^2 n m} reduces to (-1)^{nm} for odd d and to 1 for even d.
  return {h, h, h, h, geometry.d / kTwoPi, geometry.d % 2 == 1};
}

cplx lattice_series_point(const CvState& state, const LatticeSeries& series, double a, double b,
                          const TruncationPolicy& policy) {
  if (state.singular()) throw SingularState("ideal codewords have no lattice series");
  const auto term = [&](int n, int m) {
    const cplx chi = state.chi(n * series.hx, m * series.hp);
    return sign_of(series, n, m) * chi * std::polar(1.0, n * series.f2 * b - m * series.f1 * a);
  };
  const auto result = weighted_lattice_sum_2d(term, series_envelope(state, series), policy);
  return series.prefactor * result.value;
}

Grid2 lattice_series_grid(const CvState& state, const LatticeSeries& series, const Axis& first,
                          const Axis& second, const EvalOptions& options) {
  if (state.singular()) throw SingularState("ideal codewords have no lattice series");
  if (first.count < 1 || second.count < 1) throw DomainError("grid axes must be non-empty");
  const LatticeBox box = lattice_box(series_envelope(state, series), options.policy);
  const int rn = box.radius_n;
  const int rm = box.radius_m;
  const int wn = 2 * rn + 1;
  const int wm = 2 * rm + 1;

  // coeff(n, m) = sign * chi on the lattice.
  Eigen::MatrixXcd coeff(wn, wm);
  parallel_for(wn, options.workers, [&](int in) {
    const int n = in - rn;
    for (int m = -rm; m <= rm; ++m) {
      coeff(in, m + rm) = sign_of(series, n, m) * state.chi(n * series.hx, m * series.hp);
    }
  });

  Eigen::MatrixXcd second_phase(second.count, wn);
  for (int j = 0; j < second.count; ++j) {
    for (int n = -rn; n <= rn; ++n) {
      second_phase(j, n + rn) = std::polar(1.0, n * series.f2 * second.at(j));
    }
  }

  Grid2 out{first, second, Eigen::MatrixXd(first.count, second.count), 0.0};
  std::vector<double> row_imag(static_cast<std::size_t>(first.count), 0.0);
  parallel_for(first.count, options.workers, [&](int i) {
    const double a = first.at(i);
    Eigen::VectorXcd first_phase(wm);
    for (int m = -rm; m <= rm; ++m) first_phase(m + rm) = std::polar(1.0, -m * series.f1 * a);
    const Eigen::VectorXcd partial = coeff * first_phase;
    double worst = 0.0;
    for (int j = 0; j < second.count; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < wn; ++k) acc += partial(k) * second_phase(j, k);
      acc *= series.prefactor;
      out.values(i, j) = acc.real();
      worst = std::max(worst, std::abs(acc.imag()));
    }
    row_imag[static_cast<std::size_t>(i)] = worst;
  });
  for (double v : row_imag) out.max_imag = std::max(out.max_imag, v);
  return out;
}

}  // namespace zakgross
