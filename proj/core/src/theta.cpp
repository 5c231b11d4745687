#include "zakgross/theta.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zakgross/errors.hpp"
#include "zakgross/parallel.hpp"

namespace zakgross {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSymmetryTol = 1e-12;
constexpr double kDefiniteTol = 1e-12;
// Extra e-folds of tail suppression on top of the requested tolerance.
constexpr double kSafety = 5.0;

void require_radius(int radius, const TruncationPolicy& policy) {
  if (radius > policy.max_radius) {
    std::ostringstream msg;
    msg << "theta sum needs radius " << radius << " > max_radius " << policy.max_radius;
    throw NonConvergent(msg.str());
  }
}

// Calls visit(n) for every n in the sup-norm box of the given radius around
// center, in lexicographic order.
template <typename Visit>
void for_each_in_box(const Eigen::VectorXi& center, int radius, Visit&& visit) {
  const auto dim = center.size();
  Eigen::VectorXi n = center.array() - radius;
  while (true) {
    visit(n);
    Eigen::Index k = dim - 1;
    while (k >= 0 && n(k) == center(k) + radius) {
      n(k) = center(k) - radius;
      --k;
    }
    if (k < 0) break;
    ++n(k);
  }
}

}  // namespace

void TruncationPolicy::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw DomainError("truncation policy needs abs_tol > 0");
  }
  if (max_radius < 1) throw DomainError("truncation policy needs max_radius >= 1");
}

double check_siegel(const Eigen::MatrixXcd& tau) {
  if (tau.rows() != tau.cols() || tau.rows() == 0) {
    throw DomainError("tau must be a non-empty square matrix");
  }
  if (((tau - tau.transpose()).cwiseAbs().array() > kSymmetryTol).any()) {
    throw DomainError("tau must be symmetric");
  }
  const Eigen::MatrixXd im = tau.imag();
  const Eigen::MatrixXd sym = 0.5 * (im + im.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  const double lambda_min = solver.eigenvalues().minCoeff();
  if (!(lambda_min > kDefiniteTol)) {
    std::ostringstream msg;
    msg << "Im(tau) is not positive definite (smallest eigenvalue " << lambda_min << ")";
    throw DomainError(msg.str());
  }
  return lambda_min;
}

ThetaArg::ThetaArg(Eigen::VectorXcd z, Eigen::MatrixXcd tau)
    : z_(std::move(z)), tau_(std::move(tau)) {
  if (tau_.rows() != z_.size()) throw DomainError("z and tau dimensions differ");
  check_siegel(tau_);
}

int theta_truncation_radius(int dimension, double lambda_min, double log_peak,
                            double abs_tol) {
  if (!(lambda_min > 0.0)) throw DomainError("theta decay rate must be positive");
  // Points at sup-distance r from the rounded peak lie at Euclidean distance
  // at least r - 1/2 from the true peak; shell r holds
  // (2r+1)^N - (2r-1)^N points.
  const double log_tol = std::log(abs_tol) - kSafety;
  auto log_shell = [&](int r) {
    const double count = std::pow(2.0 * r + 1.0, dimension) - std::pow(2.0 * r - 1.0, dimension);
    const double dist = r - 0.5;
    return log_peak + std::log(count) - kPi * lambda_min * dist * dist;
  };
  // The shell bound is eventually decreasing; start past its maximum.
  int radius = 0;
  while (true) {
    double tail = 0.0;
    for (int r = radius + 1;; ++r) {
      const double lt = log_shell(r) - log_tol;
      if (r > radius + 1 && lt < -60.0) break;
      tail += std::exp(lt);
      if (tail > 1.0) break;
    }
    if (tail <= 1.0) return radius;
    ++radius;
    if (radius > 1'000'000) throw NonConvergent("theta truncation radius diverges");
  }
}

namespace {

cplx theta_general(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& tau,
                   double lambda_min, const Eigen::MatrixXd& im_tau_inverse,
                   const TruncationPolicy& policy, double log_scale = 0.0) {
  const Eigen::VectorXd y = z.imag();
  const Eigen::VectorXd peak = -im_tau_inverse * y;
  const double log_peak = log_scale + kPi * y.dot(im_tau_inverse * y);
  const int radius = theta_truncation_radius(static_cast<int>(z.size()), lambda_min,
                                             log_peak, policy.abs_tol);
  require_radius(radius, policy);
  Eigen::VectorXi center(z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    center(k) = static_cast<int>(std::lround(peak(k)));
  }
  std::complex<long double> acc = 0;
  for_each_in_box(center, radius, [&](const Eigen::VectorXi& n) {
    const Eigen::VectorXcd nc = n.cast<cplx>();
    const cplx exponent = log_scale + cplx(0.0, 2.0 * kPi) * nc.dot(z) +
                          cplx(0.0, kPi) * nc.dot(tau * nc);
    // Eigen's dot conjugates the first argument; n is real so this is n.z.
    acc += std::complex<long double>(std::exp(exponent));
  });
  return cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

}  // namespace

cplx theta_nd(const ThetaArg& arg, const TruncationPolicy& policy) {
  policy.validate();
  const double lambda_min = check_siegel(arg.tau());
  const Eigen::MatrixXd im_inv = Eigen::MatrixXd(arg.tau().imag()).inverse();
  return theta_general(arg.z(), arg.tau(), lambda_min, im_inv, policy);
}

cplx theta_nd_scaled(const ThetaArg& arg, double log_scale, const TruncationPolicy& policy) {
  policy.validate();
  if (!std::isfinite(log_scale)) throw DomainError("theta scale must be finite");
  const double lambda_min = check_siegel(arg.tau());
  const Eigen::MatrixXd im_inv = Eigen::MatrixXd(arg.tau().imag()).inverse();
  return theta_general(arg.z(), arg.tau(), lambda_min, im_inv, policy, log_scale);
}

cplx theta_1d(cplx z, cplx tau, const TruncationPolicy& policy) {
  if (!(tau.imag() > 0.0)) throw DomainError("theta_1d needs Im(tau) > 0");
  Eigen::VectorXcd zv(1);
  zv << z;
  Eigen::MatrixXcd tv(1, 1);
  tv << tau;
  return theta_nd(ThetaArg(zv, tv), policy);
}

cplx theta_1d_char(double v1, double v2, cplx z, cplx tau, const TruncationPolicy& policy) {
  policy.validate();
  if (!(tau.imag() > 0.0)) throw DomainError("theta_1d_char needs Im(tau) > 0");
  // Terms have magnitude exp(-2 pi k y - pi k^2 Y) in k = n + v1.
  const double y = z.imag();
  const double im_t = tau.imag();
  const double peak_k = -y / im_t;
  const double log_peak = kPi * y * y / im_t;
  const int radius = theta_truncation_radius(1, im_t, log_peak, policy.abs_tol);
  require_radius(radius, policy);
  const long center = std::lround(peak_k - v1);
  const cplx shifted = z + v2;
  std::complex<long double> acc = 0;
  for (long n = center - radius; n <= center + radius; ++n) {
    const double k = static_cast<double>(n) + v1;
    const cplx exponent = cplx(0.0, 2.0 * kPi) * k * shifted + cplx(0.0, kPi) * k * k * tau;
    acc += std::complex<long double>(std::exp(exponent));
  }
  return cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

ThetaSeries::ThetaSeries(Eigen::MatrixXcd tau, TruncationPolicy policy)
    : tau_(std::move(tau)), policy_(policy) {
  policy_.validate();
  lambda_min_ = check_siegel(tau_);
  im_tau_inverse_ = Eigen::MatrixXd(tau_.imag()).inverse();
  real_radius_ = theta_truncation_radius(dimension(), lambda_min_, 0.0, policy_.abs_tol);
  require_radius(real_radius_, policy_);
  const Eigen::VectorXi origin = Eigen::VectorXi::Zero(dimension());
  for_each_in_box(origin, real_radius_, [&](const Eigen::VectorXi& n) {
    const Eigen::VectorXcd nc = n.cast<cplx>();
    quadratic_.push_back(std::exp(cplx(0.0, kPi) * nc.dot(tau_ * nc)));
  });
}

cplx ThetaSeries::operator()(const Eigen::VectorXcd& z) const {
  if (z.size() != dimension()) throw DomainError("z has the wrong dimension");
  if ((z.imag().array() == 0.0).all()) return evaluate_real(z.real());
  return evaluate_general(z);
}

cplx ThetaSeries::evaluate_general(const Eigen::VectorXcd& z) const {
  return theta_general(z, tau_, lambda_min_, im_tau_inverse_, policy_);
}

cplx ThetaSeries::evaluate_real(const Eigen::VectorXd& x) const {
  const Eigen::VectorXi origin = Eigen::VectorXi::Zero(dimension());
  std::complex<long double> acc = 0;
  std::size_t idx = 0;
  for_each_in_box(origin, real_radius_, [&](const Eigen::VectorXi& n) {
    const double phase = 2.0 * kPi * n.cast<double>().dot(x);
    acc += std::complex<long double>(quadratic_[idx++] * std::polar(1.0, phase));
  });
  return cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

Eigen::MatrixXcd ThetaSeries::evaluate_real_grid(const std::vector<double>& z2_values,
                                                 const std::vector<double>& z1_values,
                                                 int workers) const {
  if (dimension() != 2) throw DomainError("evaluate_real_grid needs a 2-D theta series");
  const int r = real_radius_;
  const int width = 2 * r + 1;
  // quadratic_ is lexicographic in (n1, n2): index (n1 + r) * width + (n2 + r).
  Eigen::MatrixXcd phase1(static_cast<Eigen::Index>(z1_values.size()), width);
  for (std::size_t j = 0; j < z1_values.size(); ++j) {
    for (int n1 = -r; n1 <= r; ++n1) {
      phase1(static_cast<Eigen::Index>(j), n1 + r) = std::polar(1.0, 2.0 * kPi * n1 * z1_values[j]);
    }
  }
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(z2_values.size()),
                       static_cast<Eigen::Index>(z1_values.size()));
  parallel_for(static_cast<int>(z2_values.size()), workers, [&](int row) {
    const auto i = static_cast<std::size_t>(row);
    std::vector<cplx> phase2(width);
    std::vector<cplx> partial(width);
    for (int n2 = -r; n2 <= r; ++n2) {
      phase2[n2 + r] = std::polar(1.0, 2.0 * kPi * n2 * z2_values[i]);
    }
    for (int a = 0; a < width; ++a) {
      cplx s = 0.0;
      for (int b = 0; b < width; ++b) s += quadratic_[a * width + b] * phase2[b];
      partial[a] = s;
    }
    for (std::size_t j = 0; j < z1_values.size(); ++j) {
      cplx s = 0.0;
      for (int a = 0; a < width; ++a) s += partial[a] * phase1(static_cast<Eigen::Index>(j), a);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  });
  return out;
}

}  // namespace zakgross
