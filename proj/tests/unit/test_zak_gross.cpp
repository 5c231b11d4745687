#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zakgross/errors.hpp"
#include "zakgross/zak_gross.hpp"

using namespace zakgross;

namespace {

constexpr double kPi = std::numbers::pi;

// theta((0,0), tau_vacuum(13)) / (2 pi).
constexpr double kVacuum13Origin = 2.06901427139874448;

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

CvState fig4_state(const QuditSystem& sys) {
  return make_approx_gkp(sys, 0, 0.51, 0.4, 1).displaced(sys.ell() / 2.0, sys.ell() / 4.0);
}

}  // namespace

TEST(ZgPoint, VacuumOriginMatchesThetaConstant) {
  const QuditSystem sys(13);
  const CvState vac(GaussianState::vacuum());
  EXPECT_NEAR(zg_point(sys, vac, 0.0, 0.0), kVacuum13Origin, 1e-9);
  EXPECT_NEAR(zg_closed_form_gaussian(sys, GaussianState::vacuum(), 0.0, 0.0), kVacuum13Origin,
              1e-9);
}

TEST(ZgPoint, VacuumNegativeAtTorusCenter) {
  const QuditSystem sys(13);
  const double c = sys.period() / 2.0;
  EXPECT_LT(zg_point(sys, CvState(GaussianState::vacuum()), c, c), 0.0);
}

TEST(ZgPoint, DimensionOneEqualsZakDistribution) {
  const TorusGeometry one(1);
  const CvState vac(GaussianState::vacuum());
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, one.period());
  for (int trial = 0; trial < 10; ++trial) {
    const double a = u(rng);
    const double b = u(rng);
    const cplx zak = lattice_series_point(vac, zak_series(std::sqrt(2.0 * kPi)), a, b);
    EXPECT_NEAR(zg_point(one, vac, a, b), zak.real(), 1e-12);
  }
}

TEST(ZgPoint, ReducesModuloPeriod) {
  const QuditSystem sys(3);
  const CvState state(GaussianState::coherent(0.3, -0.8));
  EXPECT_NEAR(zg_point(sys, state, 0.4 + sys.period(), -0.2),
              zg_point(sys, state, 0.4, sys.period() - 0.2), 1e-12);
  EXPECT_DOUBLE_EQ(wrap(-0.5, 2.0), 1.5);
  EXPECT_DOUBLE_EQ(wrap(4.0, 2.0), 0.0);
}

TEST(ZgPoint, SingularAndNonConvergent) {
  const QuditSystem sys(3);
  const CvState ideal(IdealCodeword(sys, DvState::computational(3, 0), 0.0, 0.0));
  EXPECT_THROW(zg_point(sys, ideal, 0.0, 0.0), SingularState);
  EXPECT_THROW(zg_grid(sys, ideal, 12, 12), SingularState);
  TruncationPolicy tight;
  tight.max_radius = 2;
  EXPECT_THROW(zg_point(sys, CvState(GaussianState::vacuum()), 0.0, 0.0, tight), NonConvergent);
}

TEST(ZgClosedForm, ThermalCenterSignFollowsEnergy) {
  const QuditSystem sys(3);
  const double c = sys.period() / 2.0;
  // <H>(beta = 1) ~ 1.082 < 3/2.
  EXPECT_LT(zg_closed_form_gaussian(sys, GaussianState::thermal(1.0), c, c), 0.0);
  EXPECT_GT(zg_closed_form_gaussian(sys, GaussianState::thermal(0.2), c, c), 0.0);
}

TEST(ZgClosedForm, DisplacedVacuumIsShifted) {
  const QuditSystem sys(5);
  const GaussianState moved = GaussianState::coherent(1.1, -0.6);
  for (double u : {0.0, 1.3, 4.9}) {
    for (double v : {0.2, 3.3}) {
      const double shifted = zg_closed_form_gaussian(sys, GaussianState::vacuum(),
                                                     wrap(u - 1.1, sys.period()),
                                                     wrap(v + 0.6, sys.period()));
      EXPECT_NEAR(zg_closed_form_gaussian(sys, moved, u, v), shifted, 1e-12);
    }
  }
}

TEST(ZgClosedForm, GaussianAgreesWithLatticePath) {
  std::mt19937_64 rng(42);
  for (int d : {1, 3, 13}) {
    const QuditSystem sys(d);
    std::uniform_real_distribution<double> u(0.0, sys.period());
    for (const GaussianState& g :
         {GaussianState::vacuum(), GaussianState::thermal(0.7),
          GaussianState::displaced_thermal(1.0, 0.9, -2.0)}) {
      for (int trial = 0; trial < 5; ++trial) {
        const double a = u(rng);
        const double b = u(rng);
        EXPECT_NEAR(zg_closed_form_gaussian(sys, g, a, b), zg_point(sys, CvState(g), a, b), 1e-10);
      }
    }
  }
}

TEST(ZgClosedForm, RejectsAnisotropicGaussian) {
  const QuditSystem sys(3);
  const GaussianState squeezed(Eigen::Vector2d::Zero(),
                               Eigen::Vector2d(0.25, 1.0).asDiagonal().toDenseMatrix());
  EXPECT_THROW(zg_closed_form_gaussian(sys, squeezed, 0.0, 0.0), DomainError);
}

TEST(ZgClosedForm, ApproxGkpAgreesWithLatticePath) {
  const QuditSystem sys(3);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, sys.period());
  const auto plain = make_approx_gkp(sys, 0, 0.51, 0.4, 1);
  const auto moved = plain.displaced(0.37, -0.21);
  const auto other = make_approx_gkp(sys, 2, 0.35, 0.3);
  for (const auto* state : {&plain, &moved, &other}) {
    for (int trial = 0; trial < 6; ++trial) {
      const double a = u(rng);
      const double b = u(rng);
      EXPECT_NEAR(zg_closed_form_approx_gkp(sys, *state, a, b), zg_point(sys, CvState(*state), a, b),
                  1e-9);
    }
  }
  EXPECT_THROW(zg_closed_form_approx_gkp(QuditSystem(5), plain, 0.0, 0.0), DomainError);
  const PositionGaussianSuperposition untagged({{1.0, 0.0}}, 0.5);
  EXPECT_THROW(zg_closed_form_approx_gkp(sys, untagged, 0.0, 0.0), DomainError);
}

TEST(ZgClosedForm, ApproxGkpSignStructure) {
  const QuditSystem sys(3);
  const CvState state = fig4_state(sys);
  const auto* sup = state.superposition();
  // Bright positive peaks sit on u = ell / 2 after the displacement.
  double bright = -INFINITY;
  double faint = INFINITY;
  for (int j = 0; j < 96; ++j) {
    const double v = sys.period() * j / 96.0;
    bright = std::max(bright, zg_closed_form_approx_gkp(sys, *sup, sys.ell() / 2.0, v));
    faint = std::min(faint, zg_closed_form_approx_gkp(sys, *sup, 2.0 * sys.ell(), v));
  }
  EXPECT_GT(zg_closed_form_approx_gkp(sys, *sup, sys.ell() / 2.0, sys.ell() / 4.0), 0.0);
  EXPECT_GT(bright, 0.0);
  EXPECT_LT(faint, 0.0);
}

TEST(ZgClosedForm, SinglePeakMatchesSqueezedGaussian) {
  const QuditSystem sys(3);
  const double sigma = 0.6;
  const auto single = make_approx_gkp(sys, 0, sigma, 10.0);
  ASSERT_EQ(single.peaks().size(), 1u);
  const GaussianState squeezed(
      Eigen::Vector2d::Zero(),
      Eigen::Vector2d(0.5 * sigma * sigma, 0.5 / (sigma * sigma)).asDiagonal().toDenseMatrix());
  for (double u : {0.0, 0.7, 2.9}) {
    for (double v : {0.1, 1.9, 4.0}) {
      EXPECT_NEAR(zg_closed_form_approx_gkp(sys, single, u, v),
                  zg_point(sys, CvState(squeezed), u, v), 1e-6);
    }
  }
}

TEST(ZgGrid, RoundsToMultiplesOfD) {
  const QuditSystem sys(13);
  const TorusGrid grid = zg_grid(sys, CvState(GaussianState::vacuum()), 256, 100);
  EXPECT_EQ(grid.samples.first.count, 260);
  EXPECT_EQ(grid.samples.second.count, 104);
  EXPECT_NEAR(grid.samples.first.step * 260, sys.period(), 1e-12);
}

TEST(ZgGrid, PathsAgreeWithPointEvaluation) {
  const QuditSystem sys(3);
  for (const CvState& state :
       {CvState(GaussianState::thermal(1.3)), fig4_state(sys),
        CvState(GaussianState(Eigen::Vector2d(0.2, 0.1),
                              Eigen::Vector2d(0.3, 1.0).asDiagonal().toDenseMatrix()))}) {
    ZgGridOptions lattice;
    lattice.path = GridPath::lattice;
    const TorusGrid a = zg_grid(sys, state, 12, 12, lattice);
    const TorusGrid b = zg_grid(sys, state, 12, 12);
    EXPECT_LT(max_abs_diff(a.samples.values, b.samples.values), 1e-9);
    for (int i = 0; i < 12; i += 5) {
      for (int j = 0; j < 12; j += 4) {
        EXPECT_NEAR(a.samples.values(i, j),
                    zg_point(sys, state, a.samples.first.at(i), a.samples.second.at(j)), 1e-11);
      }
    }
    EXPECT_LT(a.samples.max_imag, 1e-9);
  }
  ZgGridOptions closed;
  closed.path = GridPath::closed_form;
  const TorusGrid c = zg_grid(sys, fig4_state(sys), 6, 6, closed);
  EXPECT_NEAR(c.samples.values(1, 2),
              zg_point(sys, fig4_state(sys), c.samples.first.at(1), c.samples.second.at(2)), 1e-9);
  const CvState squeezed(GaussianState(Eigen::Vector2d::Zero(),
                                       Eigen::Vector2d(0.3, 1.0).asDiagonal().toDenseMatrix()));
  EXPECT_THROW(zg_grid(sys, squeezed, 6, 6, closed), DomainError);
}

TEST(ZgGrid, BitwiseIndependentOfWorkerCount) {
  const QuditSystem sys(3);
  for (GridPath path : {GridPath::lattice, GridPath::automatic}) {
    ZgGridOptions one;
    one.workers = 1;
    one.path = path;
    ZgGridOptions four = one;
    four.workers = 4;
    const CvState state(GaussianState::displaced_thermal(2.0, 0.3, 0.9));
    const TorusGrid a = zg_grid(sys, state, 48, 48, one);
    const TorusGrid b = zg_grid(sys, state, 48, 48, four);
    EXPECT_TRUE((a.samples.values.array() == b.samples.values.array()).all());
  }
}

TEST(ZgAxioms, StandardizationRealityCovarianceLinearity) {
  std::mt19937_64 rng(44);
  for (int d : {1, 3}) {
    const QuditSystem sys(d);
    std::uniform_real_distribution<double> u(0.0, sys.period());
    for (const CvState& state :
         {CvState(GaussianState::vacuum()), CvState(GaussianState::thermal(0.9)),
          CvState(make_approx_gkp(sys, 0, 0.51, 0.4))}) {
      const TorusGrid grid = zg_grid(sys, state, 64, 64);
      EXPECT_NEAR(grid.normalization(), 1.0, 1e-8);
      EXPECT_LT(grid.samples.max_imag, 1e-9);
      const double x = u(rng);
      const double p = u(rng);
      const CvState moved = state.displaced(x, p);
      for (int trial = 0; trial < 3; ++trial) {
        const double a = u(rng);
        const double b = u(rng);
        EXPECT_NEAR(zg_point(sys, moved, a, b), zg_point(sys, state, a - x, b - p), 1e-9);
      }
    }
    const CvState g1(GaussianState::coherent(0.5, 1.5));
    const CvState g2(GaussianState::thermal(0.4));
    const CvState mix = CvState::mixture({0.25, 0.75}, {g1, g2});
    const double a = u(rng);
    const double b = u(rng);
    EXPECT_NEAR(zg_point(sys, mix, a, b),
                0.25 * zg_point(sys, g1, a, b) + 0.75 * zg_point(sys, g2, a, b), 1e-9);
  }
}

TEST(ZgTraciality, GaussianPairMatchesFockOverlap) {
  // (1/d) integral W_rho W_sigma = (1/2pi) sum over the logical lattice of
  // chi_rho(z) chi_sigma(-z), evaluated in a truncated Fock space.
  const QuditSystem sys(3);
  const oracle::Fock fock(60);
  const CvState rho(GaussianState::coherent(0.4, -0.2));
  const CvState sigma(GaussianState::thermal(1.0));
  const TorusGrid wr = zg_grid(sys, rho, 60, 60);
  const TorusGrid ws = zg_grid(sys, sigma, 60, 60);
  const double lhs = (wr.samples.values.array() * ws.samples.values.array()).sum() *
                     wr.samples.cell_area() / sys.d();
  const Eigen::MatrixXcd fr = fock.coherent(0.4, -0.2);
  const Eigen::MatrixXcd fs = fock.thermal(1.0);
  cplx rhs = 0.0;
  for (int n = -6; n <= 6; ++n) {
    for (int m = -6; m <= 6; ++m) {
      const double x = n * sys.ell();
      const double p = m * sys.ell();
      rhs += fock.chi(fr, x, p) * fock.chi(fs, -x, -p);
    }
  }
  rhs /= 2.0 * kPi;
  EXPECT_NEAR(lhs, rhs.real(), 1e-4);
}

TEST(ZgTraciality, IdealCodewordsReduceToDvOverlap) {
  const QuditSystem sys(3);
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 5; ++trial) {
    const DvState a(oracle::random_density(3, rng));
    const DvState b(oracle::random_density(3, rng));
    const auto wa = zg_symbolic(IdealCodeword(sys, a, 0.0, 0.0)).weights;
    const auto wb = zg_symbolic(IdealCodeword(sys, b, 0.0, 0.0)).weights;
    const double overlap = (wa.values.array() * wb.values.array()).sum() / 3.0;
    EXPECT_NEAR(overlap, (a.rho() * b.rho()).trace().real(), 1e-12);
  }
}

TEST(ZgSymbolic, SupportPatterns) {
  const QuditSystem sys(3);
  const auto zero = zg_symbolic(IdealCodeword(sys, DvState::computational(3, 0), 0.0, 0.0));
  EXPECT_DOUBLE_EQ(zero.s, 0.0);
  for (int b = 0; b < 3; ++b) {
    EXPECT_NEAR(zero.weights.values(0, b), 1.0, 1e-12);
    EXPECT_NEAR(zero.weights.values(1, b), 0.0, 1e-12);
    EXPECT_NEAR(zero.weights.values(2, b), 0.0, 1e-12);
  }
  const auto plus = zg_symbolic(IdealCodeword(sys, DvState::fourier(3, 1), 0.0, 0.0));
  for (int a = 0; a < 3; ++a) {
    EXPECT_NEAR(plus.weights.values(a, 1), 1.0, 1e-12);
    EXPECT_NEAR(plus.weights.values(a, 0), 0.0, 1e-12);
  }
  const auto magic = zg_symbolic(IdealCodeword(sys, DvState::magic(3), sys.ell() / 3.0, 0.0));
  EXPECT_LT(magic.weights.values.minCoeff(), 0.0);
  EXPECT_NEAR(magic.s, sys.ell() / 3.0, 1e-15);
}

TEST(ZakDistribution, DimensionOnePatchIsTheTorus) {
  const TorusGeometry one(1);
  const CvState vac(GaussianState::vacuum());
  const TorusGrid grid = zg_grid(one, vac, 32, 32);
  const ZakGrid zak = zak_distribution(vac, std::sqrt(2.0 * kPi), 32, 32);
  EXPECT_LT(max_abs_diff(grid.samples.values, zak.samples.values), 1e-12);
}

TEST(ZakDistribution, IsAProbabilityDensity) {
  std::mt19937_64 rng(46);
  for (double alpha : {1.0, std::sqrt(2.0 * kPi), 3.7}) {
    for (const CvState& state :
         {CvState(GaussianState::vacuum()), CvState(GaussianState::coherent(1.0, -0.5)),
          CvState(GaussianState(Eigen::Vector2d(0.3, 0.0),
                                Eigen::Vector2d(0.2, 1.25).asDiagonal().toDenseMatrix()))}) {
      const ZakGrid zak = zak_distribution(state, alpha, 40, 40);
      EXPECT_GE(zak.samples.values.minCoeff(), -1e-8);
      EXPECT_NEAR(zak.samples.integral(), 1.0, 1e-8);
    }
  }
}

TEST(Marginals, RowAndColumnAreConjugateZakPatches) {
  const QuditSystem sys(3);
  for (const CvState& state : {CvState(GaussianState::vacuum()), fig4_state(sys)}) {
    const TorusGrid grid = zg_grid(sys, state, 96, 96);
    const ZakGrid row = zg_marginal_row(grid);
    EXPECT_NEAR(row.alpha, sys.period(), 1e-15);
    const ZakGrid row_ref = zak_distribution(state, sys.period(), row.samples.first, row.samples.second);
    EXPECT_LT(max_abs_diff(row.samples.values, row_ref.samples.values), 1e-8);
    EXPECT_GE(row.samples.values.minCoeff(), -1e-8);

    const ZakGrid col = zg_marginal_col(grid);
    EXPECT_NEAR(col.alpha, sys.ell(), 1e-15);
    const ZakGrid col_ref = zak_distribution(state, sys.ell(), col.samples.first, col.samples.second);
    EXPECT_LT(max_abs_diff(col.samples.values, col_ref.samples.values), 1e-8);
    EXPECT_GE(col.samples.values.minCoeff(), -1e-8);
  }
}

TEST(Marginals, DimensionOneIsIdentity) {
  const TorusGeometry one(1);
  const TorusGrid grid = zg_grid(one, CvState(GaussianState::thermal(1.0)), 16, 16);
  EXPECT_EQ(zg_marginal_row(grid).samples.values, grid.samples.values);
  EXPECT_EQ(zg_marginal_col(grid).samples.values, grid.samples.values);
  EXPECT_EQ(zg_double_marginal(grid).samples.values, grid.samples.values);
}

TEST(Marginals, IncommensurateGridIsRejected) {
  const QuditSystem sys(3);
  TorusGrid grid = zg_grid(sys, CvState(GaussianState::vacuum()), 9, 9);
  grid.samples.values.conservativeResize(9, 8);
  grid.samples.second.count = 8;
  EXPECT_THROW(zg_marginal_row(grid), GridIncommensurate);
  EXPECT_THROW(zg_marginal_col(grid), GridIncommensurate);
  EXPECT_THROW(zg_double_marginal(grid), GridIncommensurate);
}

TEST(Marginals, DoubleMarginalOfThermalState) {
  const QuditSystem sys(3);
  const TorusGrid grid = zg_grid(sys, CvState(GaussianState::thermal(1.0)), 96, 96);
  const SyndromeGrid syn = zg_double_marginal(grid);
  EXPECT_GE(syn.samples.values.minCoeff(), -1e-9);
  EXPECT_NEAR(syn.samples.integral(), 1.0, 1e-6);
}

TEST(ZgNegativity, ReferenceValues) {
  const TorusGeometry one(1);
  const NegativityReport d1 = zg_negativity(one, CvState(GaussianState::thermal(0.8)), 64, 64);
  EXPECT_NEAR(d1.value, 1.0, 1e-6);

  const QuditSystem sys(3);
  for (int j = 0; j < 3; ++j) {
    for (const DvState& logical : {DvState::computational(3, j), DvState::fourier(3, j)}) {
      const NegativityReport ideal =
          zg_negativity(sys, CvState(IdealCodeword(sys, logical, 0.0, 0.0)), 64, 64);
      EXPECT_TRUE(ideal.exact);
      EXPECT_NEAR(ideal.value, 1.0, 1e-12);
    }
  }
  const NegativityReport magic =
      zg_negativity(sys, CvState(IdealCodeword(sys, DvState::magic(3), 0.0, 0.0)), 64, 64);
  EXPECT_NEAR(magic.value, 5.0 / 3.0, 1e-12);

  const QuditSystem big(13);
  const NegativityReport vac = zg_negativity(big, CvState(GaussianState::vacuum()), 256, 256);
  EXPECT_GT(vac.value, 1.0);
  // Frozen from a 512 x 512 Richardson run (1.994418087).
  EXPECT_NEAR(vac.value, 1.9944181, 1e-5);
  EXPECT_LT(vac.tolerance_estimate, 1e-3);
}

TEST(ThermalSweep, ThresholdsAndDimensions) {
  const auto rows = thermal_min_sweep({1, 2, 3}, {0.0, 0.5, 1.0, 2.0}, 64);
  ASSERT_EQ(rows.size(), 12u);
  for (const auto& row : rows) {
    if (row.d == 1) EXPECT_GE(row.min_value, -1e-9);
  }
  EXPECT_EQ(rows[4].d, 2);
  // T = 0 is the vacuum.
  const QuditSystem three(3);
  const double c = three.period() / 2.0;
  EXPECT_NEAR(rows[8].center_value, zg_closed_form_gaussian(three, GaussianState::vacuum(), c, c),
              1e-14);
  EXPECT_THROW(thermal_min_sweep({3}, {-1.0}, 16), DomainError);

  auto beta_of = [](double nbar) { return std::log1p(1.0 / nbar); };
  EXPECT_LT(zg_closed_form_gaussian(three, GaussianState::thermal(beta_of(0.95)), c, c), 0.0);
  EXPECT_GT(zg_closed_form_gaussian(three, GaussianState::thermal(beta_of(1.05)), c, c), 0.0);
}
