#pragma once

// Lattice Gaussian sums: one- and N-dimensional theta functions and a
// generic 2-D weighted lattice summation engine with envelope-driven
// truncation.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace zakgross {

using cplx = std::complex<double>;

struct TruncationPolicy {
  double abs_tol = 1e-10;  ///< bound on the discarded tail
  int max_radius = 2000;   ///< hard cap on the sup-norm of any summation index

  /// Throws DomainError unless abs_tol > 0 and max_radius >= 1.
  void validate() const;
};

/// Argument of an N-dimensional theta function: z in C^N, tau in the
/// Siegel upper half-space (symmetric, positive-definite imaginary part).
class ThetaArg {
 public:
  ThetaArg(Eigen::VectorXcd z, Eigen::MatrixXcd tau);

  const Eigen::VectorXcd& z() const { return z_; }
  const Eigen::MatrixXcd& tau() const { return tau_; }
  int dimension() const { return static_cast<int>(z_.size()); }

 private:
  Eigen::VectorXcd z_;
  Eigen::MatrixXcd tau_;
};

/// Throws DomainError unless tau is symmetric (1e-12) with Im(tau) positive
/// definite. Returns the smallest eigenvalue of Im(tau).
double check_siegel(const Eigen::MatrixXcd& tau);

/// Smallest R such that every lattice point outside the sup-norm box of
/// radius R around the Gaussian peak contributes less than abs_tol in total,
/// given the peak magnitude exp(log_peak) and the decay rate
/// exp(-pi * lambda_min * |n - c|^2).
int theta_truncation_radius(int dimension, double lambda_min, double log_peak,
                            double abs_tol);

/// sum_n exp(2 pi i n z) exp(i pi n^2 tau).
cplx theta_1d(cplx z, cplx tau, const TruncationPolicy& policy = {});

/// sum_n exp(2 pi i (n+v1)(z+v2)) exp(i pi (n+v1)^2 tau).
cplx theta_1d_char(double v1, double v2, cplx z, cplx tau,
                   const TruncationPolicy& policy = {});

/// sum_{n in Z^N} exp(2 pi i n.z) exp(i pi n.tau.n).
cplx theta_nd(const ThetaArg& arg, const TruncationPolicy& policy = {});

/// exp(log_scale) * theta_nd(arg), summed in a way that stays finite when the
/// scale and the series magnitude are individually out of range. abs_tol
/// bounds the tail of the scaled sum.
cplx theta_nd_scaled(const ThetaArg& arg, double log_scale,
                     const TruncationPolicy& policy = {});

/// Theta function with a fixed tau evaluated at many z. Quadratic phase
/// factors for real z are tabulated once.
class ThetaSeries {
 public:
  ThetaSeries(Eigen::MatrixXcd tau, TruncationPolicy policy);

  int dimension() const { return static_cast<int>(tau_.rows()); }
  /// Truncation radius used for purely real z.
  int real_radius() const { return real_radius_; }

  cplx operator()(const Eigen::VectorXcd& z) const;

  /// N == 2 only. Evaluates theta((z1[j], z2[i]), tau) for real arguments on
  /// the outer product of two coordinate lists; result(i, j).
  /// Rows are independent and may be spread over `workers` threads; the
  /// result does not depend on the worker count.
  Eigen::MatrixXcd evaluate_real_grid(const std::vector<double>& z2_values,
                                      const std::vector<double>& z1_values,
                                      int workers = 1) const;

 private:
  cplx evaluate_general(const Eigen::VectorXcd& z) const;
  cplx evaluate_real(const Eigen::VectorXd& x) const;

  Eigen::MatrixXcd tau_;
  Eigen::MatrixXd im_tau_inverse_;
  TruncationPolicy policy_;
  double lambda_min_;
  int real_radius_;
  std::vector<cplx> quadratic_;  // exp(i pi n.tau.n) over the real-z box
};

// ---------------------------------------------------------------------------
// Weighted 2-D lattice sums.

/// |term(k)| <= exp(-rate * max(0, |k| - plateau)^2) along one index.
struct AxisDecay {
  double rate = 0.0;
  double plateau = 0.0;
};

/// Separable decay envelope of a 2-D lattice term:
/// |term(n, m)| <= amplitude * decay_n(n) * decay_m(m).
struct LatticeEnvelope {
  double amplitude = 1.0;
  AxisDecay first;   // index n
  AxisDecay second;  // index m
};

struct LatticeBox {
  int radius_n = 0;
  int radius_m = 0;
};

/// Smallest symmetric box whose complement carries less than abs_tol.
/// Throws DecayUnknown for non-positive rates, NonConvergent past max_radius.
LatticeBox lattice_box(const LatticeEnvelope& envelope,
                       const TruncationPolicy& policy);

struct LatticeSumResult {
  cplx value;
  LatticeBox box;
  std::size_t terms = 0;
};

using LatticeTerm = std::function<cplx(int n, int m)>;

/// Sums term(n, m) over Z^2 in shells of increasing sup-norm radius, with
/// extended-precision accumulation. Throws DecayUnknown when no envelope is
/// supplied.
LatticeSumResult weighted_lattice_sum_2d(const LatticeTerm& term,
                                         const std::optional<LatticeEnvelope>& envelope,
                                         const TruncationPolicy& policy = {});

}  // namespace zakgross
