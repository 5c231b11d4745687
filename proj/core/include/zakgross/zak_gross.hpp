#pragma once

// The Zak-Gross Wigner function of a bosonic state relative to the square
// GKP code, its closed forms, marginals and negativity volume.
//
// W(u, v) = (1/2pi) sum_{n,m} (-1)^{nm} e^{i ell (n v - m u)} chi(n ell, m ell)
// on the torus [0, d ell)^2.

#include <cstdint>
#include <vector>

#include "zakgross/cv_states.hpp"
#include "zakgross/grid.hpp"
#include "zakgross/qudit.hpp"
#include "zakgross/theta.hpp"

namespace zakgross {

struct EvalOptions {
  TruncationPolicy policy;
  int workers = 0;  ///< <= 0: one per core
};

/// value(a, b) = prefactor * sum_{n,m} sign(n,m) chi(n hx, m hp)
///               * exp(i (n f2 b - m f1 a)),  sign = (-1)^{nm} when alternating.
struct LatticeSeries {
  double hx;
  double hp;
  double f1;
  double f2;
  double prefactor;
  bool alternating = true;
};

LatticeSeries zak_gross_series(const TorusGeometry& geometry);
/// |Z_alpha psi(k, q)|^2 with a = q, b = k.
LatticeSeries zak_series(double alpha);
/// Syndrome density with a = s, b = t.
LatticeSeries syndrome_series(const TorusGeometry& geometry);

/// Raw complex series value at one point; throws SingularState, DecayUnknown,
/// NonConvergent.
cplx lattice_series_point(const CvState& state, const LatticeSeries& series, double a,
                          double b, const TruncationPolicy& policy = {});

/// Real parts of the series on a product grid, parallel over the first axis.
/// The imaginary residue is recorded in max_imag.
Grid2 lattice_series_grid(const CvState& state, const LatticeSeries& series,
                          const Axis& first, const Axis& second,
                          const EvalOptions& options = {});

/// Reduces x into [0, period).
double wrap(double x, double period);

/// W(u, v) including its imaginary residue.
cplx zg_point_complex(const TorusGeometry& geometry, const CvState& state, double u, double v,
                      const TruncationPolicy& policy = {});
/// W(u, v); throws NonConvergent when |Im| exceeds 10 * abs_tol.
double zg_point(const TorusGeometry& geometry, const CvState& state, double u, double v,
                const TruncationPolicy& policy = {});

/// Theta-function form for isotropic Gaussians (cov = h I, any mean).
/// Throws DomainError for other covariances.
cplx zg_closed_form_gaussian_complex(const TorusGeometry& geometry, const GaussianState& state,
                                     double u, double v, const TruncationPolicy& policy = {});
double zg_closed_form_gaussian(const TorusGeometry& geometry, const GaussianState& state,
                               double u, double v, const TruncationPolicy& policy = {});

/// Weighted sum of theta functions for superpositions built on the GKP
/// lattice. Throws DomainError when the state carries no matching lattice.
cplx zg_closed_form_approx_gkp_complex(const TorusGeometry& geometry,
                                       const PositionGaussianSuperposition& state, double u,
                                       double v, const TruncationPolicy& policy = {});
double zg_closed_form_approx_gkp(const TorusGeometry& geometry,
                                 const PositionGaussianSuperposition& state, double u, double v,
                                 const TruncationPolicy& policy = {});

enum class GridPath {
  automatic,    ///< closed form for isotropic Gaussians, lattice series otherwise
  lattice,      ///< always the lattice series
  closed_form,  ///< theta forms only; DomainError when none applies
};

struct ZgGridOptions : EvalOptions {
  GridPath path = GridPath::automatic;
  /// Closed-form grids are compared with the lattice series at this many
  /// random nodes; disagreement beyond 1e-8 throws CrossCheckFailed.
  int spot_checks = 16;
  std::uint64_t seed = 0x5eed;
};

/// W on nu x nv torus nodes; nu and nv are first rounded up to multiples of d.
/// Throws SingularState for ideal codewords (see zg_symbolic).
TorusGrid zg_grid(const TorusGeometry& geometry, const CvState& state, int nu, int nv,
                  const ZgGridOptions& options = {});

/// Dirac-comb representation of an ideal codeword: weight W_DV(a, b) at the
/// point (a ell + s, b ell + t).
struct SymbolicLatticeWigner {
  double s;
  double t;
  double ell;
  DvWignerGrid weights;
};

SymbolicLatticeWigner zg_symbolic(const IdealCodeword& state);

/// Zak distribution on the patch q in [0, alpha), k in [0, 2 pi / alpha).
ZakGrid zak_distribution(const CvState& state, double alpha, const Axis& q, const Axis& k,
                         const EvalOptions& options = {});
ZakGrid zak_distribution(const CvState& state, double alpha, int nq, int nk,
                         const EvalOptions& options = {});

/// (1/d) sum_j W(u, v - j ell): the Zak distribution with alpha = d ell,
/// q = u in [0, d ell), k = v in [0, ell).
ZakGrid zg_marginal_row(const TorusGrid& grid);
/// (1/d) sum_j W(u - j ell, v): the Zak distribution with alpha = ell,
/// q = u in [0, ell), k = v in [0, d ell).
ZakGrid zg_marginal_col(const TorusGrid& grid);
/// (1/d) sum_{a,b} W(a ell + s, b ell + t): the syndrome density.
SyndromeGrid zg_double_marginal(const TorusGrid& grid);

struct NegativityReport {
  double value;               ///< Richardson-extrapolated negativity volume
  double coarse;              ///< Riemann sum on nu x nv
  double fine;                ///< Riemann sum on 2nu x 2nv
  double tolerance_estimate;  ///< |fine - coarse|
  int nu;
  int nv;
  bool exact = false;         ///< computed from DV weights, no quadrature
};

/// (1/d) integral of |W| over the torus. Ideal codewords go through the DV
/// negativity of their logical state.
NegativityReport zg_negativity(const TorusGeometry& geometry, const CvState& state, int nu,
                               int nv, const ZgGridOptions& options = {});

struct ThermalSweepRow {
  int d;
  double temperature;  ///< 0 means the vacuum
  double min_value;
  double center_value;  ///< W(d ell / 2, d ell / 2)
  double argmin_u;
  double argmin_v;
  bool center_is_min;  ///< center within one cell of the grid minimum
};

/// Minimum of the thermal Zak-Gross function over an n x n grid, per d and T.
std::vector<ThermalSweepRow> thermal_min_sweep(const std::vector<int>& dimensions,
                                               const std::vector<double>& temperatures,
                                               int n = 256, const EvalOptions& options = {});

}  // namespace zakgross
