#include "zakgross/qudit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zakgross/errors.hpp"

namespace zakgross {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr double kTraceTol = 1e-9;

}  // namespace

QuditSystem::QuditSystem(int d) : d_(d) {
  if (d < 1 || d % 2 == 0) {
    std::ostringstream msg;
    msg << "qudit dimension must be odd and >= 1, got " << d;
    throw DomainError(msg.str());
  }
  ell_ = std::sqrt(2.0 * std::numbers::pi / d);
  omega_ = std::polar(1.0, 2.0 * std::numbers::pi / d);
}

int QuditSystem::mod(long long k) const {
  const long long r = k % d_;
  return static_cast<int>(r < 0 ? r + d_ : r);
}

cplx QuditSystem::omega_pow(long long k) const {
  return std::polar(1.0, 2.0 * std::numbers::pi * mod(k) / d_);
}

TorusGeometry::TorusGeometry(int dim) : d(dim) {
  if (dim < 1) throw DomainError("torus dimension must be >= 1");
  ell = std::sqrt(2.0 * std::numbers::pi / dim);
}

TorusGeometry::TorusGeometry(const QuditSystem& sys) : d(sys.d()), ell(sys.ell()) {}

DvState::DvState(Eigen::MatrixXcd rho, Check check) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw DomainError("density matrix must be square and non-empty");
  }
  if (!rho_.allFinite()) throw DomainError("density matrix has non-finite entries");
  const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (deviation " << asym << ")";
    throw DomainError(msg.str());
  }
  if (check == Check::hermitian) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -kPsdTol) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (eigenvalue " << lowest << ")";
    throw DomainError(msg.str());
  }
  const double tr = trace();
  if (tr < -kTraceTol || tr > 1.0 + kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace " << tr << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

DvState DvState::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw DomainError("state vector must be non-zero");
  const Eigen::VectorXcd unit = psi / norm;
  return DvState(unit * unit.adjoint());
}

DvState DvState::computational(int d, int j) {
  if (j < 0 || j >= d) throw DomainError("basis index out of range");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  psi(j) = 1.0;
  return pure(psi);
}

DvState DvState::fourier(int d, int j) {
  if (j < 0 || j >= d) throw DomainError("basis index out of range");
  Eigen::VectorXcd psi(d);
  for (int k = 0; k < d; ++k) {
    psi(k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) * k / d);
  }
  return pure(psi);
}

DvState DvState::maximally_mixed(int d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  return DvState(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

DvState DvState::magic(int d) {
  if (d < 3) throw DomainError("magic preset needs d >= 3");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  psi(1) = 1.0;
  psi(2) = -1.0;
  return pure(psi);
}

double DvWignerGrid::trace() const { return values.sum() / dimension(); }

Eigen::MatrixXcd dv_displacement(const QuditSystem& sys, long long a, long long b) {
  const int d = sys.d();
  const int ar = sys.mod(a);
  const int br = sys.mod(b);
  const cplx prefactor = sys.omega_pow(static_cast<long long>(sys.two_inv()) * ar * br);
  // X^a Z^b |j> = omega^(b j) |j + a>.
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    out(sys.mod(j + ar), j) = prefactor * sys.omega_pow(static_cast<long long>(br) * j);
  }
  return out;
}

Eigen::MatrixXcd dv_parity(const QuditSystem& sys, long long a, long long b) {
  const int d = sys.d();
  const int ar = sys.mod(a);
  const int br = sys.mod(b);
  // Pi(a, b)|j> = omega^(2 b (a - j)) |2a - j>.
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    out(sys.mod(2LL * ar - j), j) = sys.omega_pow(2LL * br * (ar - j));
  }
  return out;
}

DvWignerGrid gross_wigner(const QuditSystem& sys, const DvState& state) {
  const int d = sys.d();
  if (state.dimension() != d) throw DomainError("state dimension does not match the system");
  const auto& rho = state.rho();
  DvWignerGrid grid{Eigen::MatrixXd(d, d)};
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      // Tr[Pi rho] = sum_j <2a-j| rho |j> omega^(2b(a-j)).
      cplx acc = 0.0;
      for (int j = 0; j < d; ++j) {
        acc += sys.omega_pow(2LL * b * (a - j)) * rho(j, sys.mod(2LL * a - j));
      }
      grid.values(a, b) = acc.real();
    }
  }
  return grid;
}

Eigen::MatrixXcd dv_char(const QuditSystem& sys, const DvState& state) {
  const int d = sys.d();
  if (state.dimension() != d) throw DomainError("state dimension does not match the system");
  Eigen::MatrixXcd out(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      out(a, b) = (dv_displacement(sys, a, b) * state.rho()).trace();
    }
  }
  return out;
}

DvState dv_reconstruct(const QuditSystem& sys, const DvWignerGrid& grid) {
  const int d = sys.d();
  if (grid.dimension() != d || grid.values.cols() != d) {
    throw DomainError("Wigner grid dimension does not match the system");
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double w = grid.values(a, b);
      for (int j = 0; j < d; ++j) {
        rho(sys.mod(2LL * a - j), j) += w * sys.omega_pow(2LL * b * (a - j));
      }
    }
  }
  rho /= static_cast<double>(d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DvState(rho, DvState::Check::hermitian);
}

double dv_negativity(const DvWignerGrid& grid) {
  return grid.values.cwiseAbs().sum() / grid.dimension();
}

}  // namespace zakgross
