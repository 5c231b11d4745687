#pragma once

// Odd-dimensional qudit phase space: Weyl displacements, parity operators,
// the Gross Wigner function and its negativity volume.

#include <Eigen/Dense>

#include "zakgross/theta.hpp"

namespace zakgross {

class QuditSystem {
 public:
  /// Throws DomainError unless d is odd and >= 1.
  explicit QuditSystem(int d);

  int d() const { return d_; }
  /// Logical step sqrt(2 pi / d).
  double ell() const { return ell_; }
  /// Stabilizer step d * ell, the side of the phase-space torus.
  double period() const { return d_ * ell_; }
  cplx omega() const { return omega_; }
  /// Multiplicative inverse of 2 mod d, (d + 1) / 2.
  int two_inv() const { return (d_ + 1) / 2; }
  /// omega^k for any integer k.
  cplx omega_pow(long long k) const;
  /// Nonnegative representative of k mod d.
  int mod(long long k) const;

 private:
  int d_;
  double ell_;
  cplx omega_;
};

/// Phase-space torus [0, d ell)^2 of a square GKP code. Unlike QuditSystem
/// this admits even d, for evaluations without an underlying qudit.
struct TorusGeometry {
  explicit TorusGeometry(int d);
  TorusGeometry(const QuditSystem& sys);  // NOLINT(google-explicit-constructor)

  int d;
  double ell;
  double period() const { return d * ell; }
};

class DvState {
 public:
  enum class Check { state, hermitian };

  /// state: Hermitian, eigenvalues >= -1e-9, 0 <= trace <= 1 + 1e-9.
  /// hermitian: Hermitian only (used for intermediate operators).
  explicit DvState(Eigen::MatrixXcd rho, Check check = Check::state);

  const Eigen::MatrixXcd& rho() const { return rho_; }
  int dimension() const { return static_cast<int>(rho_.rows()); }
  double trace() const { return rho_.trace().real(); }

  static DvState pure(const Eigen::VectorXcd& psi);
  static DvState computational(int d, int j);
  static DvState fourier(int d, int j);
  static DvState maximally_mixed(int d);
  /// (|1> - |2>)/sqrt(2) for d >= 3.
  static DvState magic(int d);

 private:
  Eigen::MatrixXcd rho_;
};

/// Gross Wigner values, values(a, b) for (a, b) in Z_d^2.
struct DvWignerGrid {
  Eigen::MatrixXd values;

  int dimension() const { return static_cast<int>(values.rows()); }
  /// (1/d) sum of all entries.
  double trace() const;
};

Eigen::MatrixXcd dv_displacement(const QuditSystem& sys, long long a, long long b);
Eigen::MatrixXcd dv_parity(const QuditSystem& sys, long long a, long long b);
DvWignerGrid gross_wigner(const QuditSystem& sys, const DvState& state);
/// chi(a, b) = Tr[D(a, b) rho].
Eigen::MatrixXcd dv_char(const QuditSystem& sys, const DvState& state);
/// rho = (1/d) sum W(a, b) Pi(a, b); the result is checked as Hermitian only.
DvState dv_reconstruct(const QuditSystem& sys, const DvWignerGrid& grid);
/// (1/d) sum |W|.
double dv_negativity(const DvWignerGrid& grid);

}  // namespace zakgross
