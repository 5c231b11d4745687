#include "zakgross/zak_gross.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "zakgross/errors.hpp"
#include "zakgross/parallel.hpp"

namespace zakgross {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSpotCheckTol = 1e-8;

Eigen::MatrixXcd gaussian_tau(const TorusGeometry& geometry, double energy) {
  Eigen::MatrixXcd tau(2, 2);
  const cplx diag(0.0, energy / geometry.d);
  tau << diag, 0.5, 0.5, diag;
  return tau;
}

void require_real(cplx value, const TruncationPolicy& policy, const char* what) {
  if (std::abs(value.imag()) > 10.0 * policy.abs_tol) {
    std::ostringstream msg;
    msg << what << " has imaginary residue " << std::abs(value.imag());
    throw NonConvergent(msg.str());
  }
}

void spot_check(const TorusGeometry& geometry, const CvState& state, const Grid2& grid,
                const ZgGridOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> pick_i(0, grid.first.count - 1);
  std::uniform_int_distribution<int> pick_j(0, grid.second.count - 1);
  for (int c = 0; c < options.spot_checks; ++c) {
    const int i = pick_i(rng);
    const int j = pick_j(rng);
    const double reference =
        zg_point_complex(geometry, state, grid.first.at(i), grid.second.at(j), options.policy)
            .real();
    const double diff = std::abs(reference - grid.values(i, j));
    if (diff > kSpotCheckTol) {
      std::ostringstream msg;
      msg << "closed form and lattice series differ by " << diff << " at node (" << i << ", "
          << j << ")";
      throw CrossCheckFailed(msg.str());
    }
  }
}

Grid2 gaussian_closed_form_grid(const TorusGeometry& geometry, const GaussianState& state,
                                double energy, const Axis& u_axis, const Axis& v_axis,
                                const EvalOptions& options) {
  const double period = geometry.period();
  const ThetaSeries theta(gaussian_tau(geometry, energy), options.policy);
  std::vector<double> z2(static_cast<std::size_t>(u_axis.count));
  std::vector<double> z1(static_cast<std::size_t>(v_axis.count));
  for (int i = 0; i < u_axis.count; ++i) {
    z2[static_cast<std::size_t>(i)] = -wrap(u_axis.at(i) - state.mean()(0), period) / period;
  }
  for (int j = 0; j < v_axis.count; ++j) {
    z1[static_cast<std::size_t>(j)] = wrap(v_axis.at(j) - state.mean()(1), period) / period;
  }
  const Eigen::MatrixXcd raw = theta.evaluate_real_grid(z2, z1, options.workers) / (2.0 * kPi);
  Grid2 out{u_axis, v_axis, raw.real(), raw.imag().cwiseAbs().maxCoeff()};
  return out;
}

Grid2 pointwise_grid(const Axis& u_axis, const Axis& v_axis, int workers,
                     const std::function<cplx(double, double)>& f) {
  Grid2 out{u_axis, v_axis, Eigen::MatrixXd(u_axis.count, v_axis.count), 0.0};
  std::vector<double> row_imag(static_cast<std::size_t>(u_axis.count), 0.0);
  parallel_for(u_axis.count, workers, [&](int i) {
    for (int j = 0; j < v_axis.count; ++j) {
      const cplx value = f(u_axis.at(i), v_axis.at(j));
      out.values(i, j) = value.real();
      row_imag[static_cast<std::size_t>(i)] =
          std::max(row_imag[static_cast<std::size_t>(i)], std::abs(value.imag()));
    }
  });
  for (double v : row_imag) out.max_imag = std::max(out.max_imag, v);
  return out;
}

}  // namespace

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

cplx zg_point_complex(const TorusGeometry& geometry, const CvState& state, double u, double v,
                      const TruncationPolicy& policy) {
  const double period = geometry.period();
  return lattice_series_point(state, zak_gross_series(geometry), wrap(u, period),
                              wrap(v, period), policy);
}

double zg_point(const TorusGeometry& geometry, const CvState& state, double u, double v,
                const TruncationPolicy& policy) {
  const cplx value = zg_point_complex(geometry, state, u, v, policy);
  require_real(value, policy, "Zak-Gross value");
  return value.real();
}

cplx zg_closed_form_gaussian_complex(const TorusGeometry& geometry, const GaussianState& state,
                                     double u, double v, const TruncationPolicy& policy) {
  const auto energy = state.isotropic_energy();
  if (!energy) throw DomainError("closed form needs an isotropic covariance");
  const double period = geometry.period();
  Eigen::VectorXcd z(2);
  z << wrap(v - state.mean()(1), period) / period, -wrap(u - state.mean()(0), period) / period;
  return theta_nd(ThetaArg(z, gaussian_tau(geometry, *energy)), policy) / (2.0 * kPi);
}

double zg_closed_form_gaussian(const TorusGeometry& geometry, const GaussianState& state,
                               double u, double v, const TruncationPolicy& policy) {
  const cplx value = zg_closed_form_gaussian_complex(geometry, state, u, v, policy);
  require_real(value, policy, "closed-form value");
  return value.real();
}

cplx zg_closed_form_approx_gkp_complex(const TorusGeometry& geometry,
                                       const PositionGaussianSuperposition& state, double u,
                                       double v, const TruncationPolicy& policy) {
  const auto& lattice = state.gkp();
  if (!lattice || lattice->d != geometry.d) {
    throw DomainError("closed form needs peaks on the GKP lattice of this dimension");
  }
  const double d = geometry.d;
  const double period = geometry.period();
  const double sigma = state.sigma();
  const double s2 = sigma * sigma;
  const double scale = std::sqrt(kPi) * sigma / (state.normalized() ? state.self_overlap() : 1.0);
  Eigen::MatrixXcd tau(2, 2);
  tau << cplx(0.0, 0.5 / (d * s2)), 0.5, 0.5, cplx(0.0, 0.5 * s2 / d);
  const double x0 = state.displacement()(0);
  const double p0 = state.displacement()(1);
  const double z1_real = wrap(v - p0, period) / period;
  const double z2_real = -wrap(u - x0, period) / period + static_cast<double>(lattice->j) / d;
  const auto& peaks = state.peaks();
  const std::size_t count = peaks.size();
  TruncationPolicy pair_policy = policy;
  pair_policy.abs_tol = policy.abs_tol / static_cast<double>(count * count);
  cplx acc = 0.0;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      const double w = peaks[a].weight * peaks[b].weight;
      if (w == 0.0) continue;
      const int k = lattice->k[a];
      const int kp = lattice->k[b];
      const double dk = kp - k;
      Eigen::VectorXcd z(2);
      z << cplx(z1_real, dk / (2.0 * s2)), cplx(z2_real + 0.5 * (k + kp), 0.0);
      const double log_scale =
          std::log(std::abs(w) * scale / (2.0 * kPi)) - kPi * d * dk * dk / (2.0 * s2);
      acc += (w < 0.0 ? -1.0 : 1.0) * theta_nd_scaled(ThetaArg(z, tau), log_scale, pair_policy);
    }
  }
  return acc;
}

double zg_closed_form_approx_gkp(const TorusGeometry& geometry,
                                 const PositionGaussianSuperposition& state, double u, double v,
                                 const TruncationPolicy& policy) {
  const cplx value = zg_closed_form_approx_gkp_complex(geometry, state, u, v, policy);
  require_real(value, policy, "closed-form value");
  return value.real();
}

TorusGrid zg_grid(const TorusGeometry& geometry, const CvState& state, int nu, int nv,
                  const ZgGridOptions& options) {
  if (state.singular()) {
    throw SingularState("ideal codewords have a Dirac-comb Wigner function; use zg_symbolic");
  }
  const double period = geometry.period();
  const Axis u_axis = periodic_axis(period, round_up_to_multiple(nu, geometry.d));
  const Axis v_axis = periodic_axis(period, round_up_to_multiple(nv, geometry.d));

  const GaussianState* gaussian = state.gaussian();
  const auto energy = gaussian ? gaussian->isotropic_energy() : std::nullopt;
  const PositionGaussianSuperposition* superposition = state.superposition();
  const bool gkp_form = superposition && superposition->gkp() &&
                        superposition->gkp()->d == geometry.d;

  bool closed = false;
  Grid2 samples;
  if (options.path == GridPath::lattice ||
      (options.path == GridPath::automatic && !energy)) {
    samples = lattice_series_grid(state, zak_gross_series(geometry), u_axis, v_axis, options);
  } else if (energy) {
    samples = gaussian_closed_form_grid(geometry, *gaussian, *energy, u_axis, v_axis, options);
    closed = true;
  } else if (gkp_form) {
    samples = pointwise_grid(u_axis, v_axis, options.workers, [&](double u, double v) {
      return zg_closed_form_approx_gkp_complex(geometry, *superposition, u, v, options.policy);
    });
    closed = true;
  } else {
    throw DomainError("no closed form is available for this state");
  }
  if (closed && options.spot_checks > 0) spot_check(geometry, state, samples, options);
  return {geometry, std::move(samples)};
}

SymbolicLatticeWigner zg_symbolic(const IdealCodeword& state) {
  const QuditSystem sys(state.d());
  return {state.s(), state.t(), sys.ell(), gross_wigner(sys, state.logical())};
}

ZakGrid zak_distribution(const CvState& state, double alpha, const Axis& q, const Axis& k,
                         const EvalOptions& options) {
  return {alpha, lattice_series_grid(state, zak_series(alpha), q, k, options)};
}

ZakGrid zak_distribution(const CvState& state, double alpha, int nq, int nk,
                         const EvalOptions& options) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  return zak_distribution(state, alpha, periodic_axis(alpha, nq),
                          periodic_axis(2.0 * kPi / alpha, nk), options);
}

namespace {

void require_commensurate(const TorusGrid& grid) {
  const int d = grid.geometry.d;
  if (grid.samples.first.count % d != 0 || grid.samples.second.count % d != 0) {
    std::ostringstream msg;
    msg << "grid " << grid.samples.first.count << "x" << grid.samples.second.count
        << " is not divisible by d = " << d;
    throw GridIncommensurate(msg.str());
  }
}

}  // namespace

ZakGrid zg_marginal_row(const TorusGrid& grid) {
  require_commensurate(grid);
  const int d = grid.geometry.d;
  const Grid2& w = grid.samples;
  const int nv = w.second.count / d;
  Grid2 out{w.first, {w.second.start, w.second.step, nv}, Eigen::MatrixXd(w.first.count, nv),
            w.max_imag};
  for (int i = 0; i < w.first.count; ++i) {
    for (int j = 0; j < nv; ++j) {
      double acc = 0.0;
      for (int s = 0; s < d; ++s) acc += w.values(i, j + s * nv);
      out.values(i, j) = acc / d;
    }
  }
  return {grid.geometry.period(), std::move(out)};
}

ZakGrid zg_marginal_col(const TorusGrid& grid) {
  require_commensurate(grid);
  const int d = grid.geometry.d;
  const Grid2& w = grid.samples;
  const int nu = w.first.count / d;
  Grid2 out{{w.first.start, w.first.step, nu}, w.second, Eigen::MatrixXd(nu, w.second.count),
            w.max_imag};
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < w.second.count; ++j) {
      double acc = 0.0;
      for (int s = 0; s < d; ++s) acc += w.values(i + s * nu, j);
      out.values(i, j) = acc / d;
    }
  }
  return {grid.geometry.ell, std::move(out)};
}

SyndromeGrid zg_double_marginal(const TorusGrid& grid) {
  require_commensurate(grid);
  const int d = grid.geometry.d;
  const Grid2& w = grid.samples;
  const int nu = w.first.count / d;
  const int nv = w.second.count / d;
  Grid2 out{{w.first.start, w.first.step, nu},
            {w.second.start, w.second.step, nv},
            Eigen::MatrixXd(nu, nv),
            w.max_imag};
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      double acc = 0.0;
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) acc += w.values(i + a * nu, j + b * nv);
      }
      out.values(i, j) = acc / d;
    }
  }
  return {grid.geometry, std::move(out)};
}

NegativityReport zg_negativity(const TorusGeometry& geometry, const CvState& state, int nu,
                               int nv, const ZgGridOptions& options) {
  if (const IdealCodeword* codeword = state.ideal_codeword()) {
    const double value = dv_negativity(zg_symbolic(*codeword).weights);
    return {value, value, value, 0.0, 0, 0, true};
  }
  const TorusGrid coarse = zg_grid(geometry, state, nu, nv, options);
  const TorusGrid fine = zg_grid(geometry, state, 2 * coarse.samples.first.count,
                                 2 * coarse.samples.second.count, options);
  const double c = coarse.samples.abs_integral() / geometry.d;
  const double f = fine.samples.abs_integral() / geometry.d;
  return {f + (f - c) / 3.0, c, f, std::abs(f - c), coarse.samples.first.count,
          coarse.samples.second.count, false};
}

std::vector<ThermalSweepRow> thermal_min_sweep(const std::vector<int>& dimensions,
                                               const std::vector<double>& temperatures,
                                               int n, const EvalOptions& options) {
  std::vector<ThermalSweepRow> rows;
  for (int d : dimensions) {
    const TorusGeometry geometry(d);
    const double period = geometry.period();
    for (double temperature : temperatures) {
      if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw DomainError("temperatures must be finite and >= 0");
      }
      const GaussianState state = temperature == 0.0 ? GaussianState::vacuum()
                                                     : GaussianState::thermal(1.0 / temperature);
      ZgGridOptions grid_options;
      static_cast<EvalOptions&>(grid_options) = options;
      grid_options.path = GridPath::closed_form;
      const TorusGrid grid = zg_grid(geometry, CvState(state), n, n, grid_options);
      const auto [i, j] = grid.samples.argmin();
      ThermalSweepRow row;
      row.d = d;
      row.temperature = temperature;
      row.min_value = grid.samples.values(i, j);
      row.center_value =
          zg_closed_form_gaussian(geometry, state, 0.5 * period, 0.5 * period, options.policy);
      row.argmin_u = grid.samples.first.at(i);
      row.argmin_v = grid.samples.second.at(j);
      const bool near_u = std::abs(row.argmin_u - 0.5 * period) <= grid.samples.first.step * 1.0000001;
      const bool near_v = std::abs(row.argmin_v - 0.5 * period) <= grid.samples.second.step * 1.0000001;
      row.center_is_min = near_u && near_v;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace zakgross
