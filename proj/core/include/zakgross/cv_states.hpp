#pragma once

// Single-mode bosonic states described by their characteristic function
// chi(x, p) = Tr[D(x, p) rho], with D(x, p) = exp(i (p x^ - x p^)).

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "zakgross/qudit.hpp"
#include "zakgross/theta.hpp"

namespace zakgross {

/// |chi(x, p)| <= amplitude * exp(-x.rate * max(0, |x| - x.plateau)^2)
///                          * exp(-p.rate * max(0, |p| - p.plateau)^2).
struct CharEnvelope {
  double amplitude = 1.0;
  AxisDecay x;
  AxisDecay p;

  /// The same bound on the lattice (n * hx, m * hp).
  LatticeEnvelope on_lattice(double hx, double hp) const;
};

/// <H> = coth(beta / 2) / 2 for a thermal state at inverse temperature beta.
double thermal_energy(double beta);

class GaussianState {
 public:
  /// Throws DomainError unless cov is symmetric and sqrt(det cov) >= 1/2.
  GaussianState(Eigen::Vector2d mean, Eigen::Matrix2d cov);

  static GaussianState vacuum();
  static GaussianState coherent(double x, double p);
  /// Throws DomainError unless beta > 0 is finite.
  static GaussianState thermal(double beta);
  static GaussianState displaced_thermal(double beta, double x, double p);

  const Eigen::Vector2d& mean() const { return mean_; }
  const Eigen::Matrix2d& cov() const { return cov_; }
  double symplectic_eigenvalue() const { return std::sqrt(cov_.determinant()); }
  /// cov = h * I up to 1e-14 relative; returns h.
  std::optional<double> isotropic_energy() const;

  cplx chi(double x, double p) const;
  CharEnvelope envelope() const;
  GaussianState displaced(double x, double p) const;

 private:
  Eigen::Vector2d mean_;
  Eigen::Matrix2d cov_;
};

struct GaussianPeak {
  double weight = 1.0;
  double center = 0.0;
};

/// Peaks placed on the GKP lattice j * ell + d * ell * k of logical index j.
struct GkpLattice {
  int d = 1;
  int j = 0;
  std::vector<int> k;  // lattice index of each peak, aligned with peaks()
};

/// psi(y) = sum_k c_k exp(-(y - mu_k)^2 / (2 sigma^2)), optionally displaced
/// by D(x0, p0) afterwards.
class PositionGaussianSuperposition {
 public:
  PositionGaussianSuperposition(std::vector<GaussianPeak> peaks, double sigma,
                                bool normalize = true);

  const std::vector<GaussianPeak>& peaks() const { return peaks_; }
  double sigma() const { return sigma_; }
  bool normalized() const { return normalized_; }
  /// <psi|psi> of the unnormalized peak sum.
  double self_overlap() const { return self_overlap_; }
  double trace() const { return normalized_ ? 1.0 : self_overlap_; }
  const Eigen::Vector2d& displacement() const { return displacement_; }
  const std::optional<GkpLattice>& gkp() const { return gkp_; }

  cplx chi(double x, double p) const;
  CharEnvelope envelope() const;
  PositionGaussianSuperposition displaced(double x, double p) const;

 private:
  friend PositionGaussianSuperposition make_approx_gkp(const QuditSystem&, int, double,
                                                       double, std::optional<int>);

  struct Pair {
    double delta;       // mu_k - mu_k'
    double mean;        // (mu_k + mu_k') / 2
    double weight;      // c_k c_k'
  };

  std::vector<GaussianPeak> peaks_;
  double sigma_;
  bool normalized_;
  double self_overlap_;
  double scale_;  // sqrt(pi) sigma, divided by the self-overlap when normalized
  Eigen::Vector2d displacement_ = Eigen::Vector2d::Zero();
  std::optional<GkpLattice> gkp_;
  std::vector<Pair> pairs_;  // sorted by delta
};

/// Peak cutoff K keeping |k| <= K; by default the smallest K whose dropped
/// peaks all weigh less than 1e-12 of the largest.
PositionGaussianSuperposition make_approx_gkp(const QuditSystem& sys, int j, double sigma,
                                              double kappa,
                                              std::optional<int> peak_cutoff = std::nullopt);

/// Ideal GKP codeword in the code space displaced by the syndrome (s, t).
class IdealCodeword {
 public:
  /// Throws DomainError unless the logical state matches d and 0 <= s, t < ell.
  IdealCodeword(const QuditSystem& sys, DvState logical, double s, double t);

  int d() const { return d_; }
  const DvState& logical() const { return logical_; }
  double s() const { return s_; }
  double t() const { return t_; }

 private:
  int d_;
  DvState logical_;
  double s_;
  double t_;
};

struct Mixture;

/// Any supported state. Everything except ideal codewords exposes chi with a
/// decay envelope; ideal codewords are singular and refuse numeric sampling.
class CvState {
 public:
  enum class Kind { gaussian, superposition, ideal_codeword, mixture };

  CvState(GaussianState state);
  CvState(PositionGaussianSuperposition state);
  CvState(IdealCodeword state);
  /// sum_i weights[i] * parts[i], mixed at the level of chi.
  static CvState mixture(std::vector<double> weights, std::vector<CvState> parts);

  Kind kind() const;
  bool singular() const { return kind() == Kind::ideal_codeword; }

  const GaussianState* gaussian() const { return std::get_if<GaussianState>(&value_); }
  const PositionGaussianSuperposition* superposition() const {
    return std::get_if<PositionGaussianSuperposition>(&value_);
  }
  const IdealCodeword* ideal_codeword() const { return std::get_if<IdealCodeword>(&value_); }

  /// Throws SingularState for ideal codewords.
  cplx chi(double x, double p) const;
  CharEnvelope envelope() const;
  double trace() const;
  CvState displaced(double x, double p) const;

 private:
  std::variant<GaussianState, PositionGaussianSuperposition, IdealCodeword,
               std::shared_ptr<const Mixture>>
      value_;
};

struct Mixture {
  std::vector<double> weights;
  std::vector<CvState> parts;
};

}  // namespace zakgross
