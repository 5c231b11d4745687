#include "zakgross/cv_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zakgross/errors.hpp"

namespace zakgross {

namespace {

constexpr double kPi = std::numbers::pi;
// Pair terms with (delta - x)^2 / (4 sigma^2) beyond this are below e^-45.
constexpr double kPairCutoff = 45.0;

}  // namespace

LatticeEnvelope CharEnvelope::on_lattice(double hx, double hp) const {
  LatticeEnvelope out;
  out.amplitude = amplitude;
  out.first = {x.rate * hx * hx, x.plateau / hx};
  out.second = {p.rate * hp * hp, p.plateau / hp};
  return out;
}

double thermal_energy(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("inverse temperature must be positive and finite");
  }
  return 0.5 / std::tanh(0.5 * beta);
}

// ---------------------------------------------------------------------------

GaussianState::GaussianState(Eigen::Vector2d mean, Eigen::Matrix2d cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (!mean_.allFinite() || !cov_.allFinite()) {
    throw DomainError("Gaussian state parameters must be finite");
  }
  if (std::abs(cov_(0, 1) - cov_(1, 0)) > 1e-12 * cov_.cwiseAbs().maxCoeff()) {
    throw DomainError("covariance matrix must be symmetric");
  }
  cov_(1, 0) = cov_(0, 1);
  if (!(cov_(0, 0) > 0.0) || !(cov_.determinant() >= 0.0) ||
      std::sqrt(cov_.determinant()) < 0.5 - 1e-9) {
    std::ostringstream msg;
    msg << "covariance violates the uncertainty relation (det " << cov_.determinant() << ")";
    throw DomainError(msg.str());
  }
}

GaussianState GaussianState::vacuum() {
  return GaussianState(Eigen::Vector2d::Zero(), 0.5 * Eigen::Matrix2d::Identity());
}

GaussianState GaussianState::coherent(double x, double p) {
  return GaussianState(Eigen::Vector2d(x, p), 0.5 * Eigen::Matrix2d::Identity());
}

GaussianState GaussianState::thermal(double beta) {
  return GaussianState(Eigen::Vector2d::Zero(),
                       thermal_energy(beta) * Eigen::Matrix2d::Identity());
}

GaussianState GaussianState::displaced_thermal(double beta, double x, double p) {
  return thermal(beta).displaced(x, p);
}

std::optional<double> GaussianState::isotropic_energy() const {
  const double h = cov_(0, 0);
  if (std::abs(cov_(1, 1) - h) > 1e-14 * h || std::abs(cov_(0, 1)) > 1e-14 * h) {
    return std::nullopt;
  }
  return h;
}

cplx GaussianState::chi(double x, double p) const {
  const double quad = p * p * cov_(0, 0) - 2.0 * x * p * cov_(0, 1) + x * x * cov_(1, 1);
  return std::polar(std::exp(-0.5 * quad), p * mean_(0) - x * mean_(1));
}

CharEnvelope GaussianState::envelope() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(cov_, Eigen::EigenvaluesOnly);
  const double rate = 0.5 * solver.eigenvalues().minCoeff();
  return {1.0, {rate, 0.0}, {rate, 0.0}};
}

GaussianState GaussianState::displaced(double x, double p) const {
  return GaussianState(mean_ + Eigen::Vector2d(x, p), cov_);
}

// ---------------------------------------------------------------------------

PositionGaussianSuperposition::PositionGaussianSuperposition(std::vector<GaussianPeak> peaks,
                                                             double sigma, bool normalize)
    : peaks_(std::move(peaks)), sigma_(sigma), normalized_(normalize) {
  if (peaks_.empty()) throw DomainError("superposition needs at least one peak");
  if (!(sigma_ > 0.0) || !std::isfinite(sigma_)) throw DomainError("sigma must be positive");
  for (const auto& peak : peaks_) {
    if (!std::isfinite(peak.weight) || !std::isfinite(peak.center)) {
      throw DomainError("peak weights and centers must be finite");
    }
  }
  const double root = std::sqrt(kPi) * sigma_;
  long double overlap = 0;
  pairs_.reserve(peaks_.size() * peaks_.size());
  for (const auto& a : peaks_) {
    for (const auto& b : peaks_) {
      const double delta = a.center - b.center;
      const double w = a.weight * b.weight;
      overlap += w * std::exp(-delta * delta / (4.0 * sigma_ * sigma_));
      pairs_.push_back({delta, 0.5 * (a.center + b.center), w});
    }
  }
  self_overlap_ = root * static_cast<double>(overlap);
  if (!(self_overlap_ > 0.0)) throw DomainError("superposition has zero norm");
  scale_ = normalized_ ? root / self_overlap_ : root;
  std::stable_sort(pairs_.begin(), pairs_.end(),
                   [](const Pair& l, const Pair& r) { return l.delta < r.delta; });
}

cplx PositionGaussianSuperposition::chi(double x, double p) const {
  const double cut = 2.0 * sigma_ * std::sqrt(kPairCutoff);
  const auto lo = std::lower_bound(pairs_.begin(), pairs_.end(), x - cut,
                                   [](const Pair& pair, double v) { return pair.delta < v; });
  const double inv4s2 = 1.0 / (4.0 * sigma_ * sigma_);
  cplx acc = 0.0;
  for (auto it = lo; it != pairs_.end() && it->delta <= x + cut; ++it) {
    const double off = it->delta - x;
    acc += it->weight * std::polar(std::exp(-off * off * inv4s2), p * it->mean);
  }
  const double damping = std::exp(-0.25 * p * p * sigma_ * sigma_);
  const cplx shift = std::polar(1.0, p * displacement_(0) - x * displacement_(1));
  return scale_ * damping * acc * shift;
}

CharEnvelope PositionGaussianSuperposition::envelope() const {
  double total = 0.0;
  double span = 0.0;
  for (const auto& pair : pairs_) {
    total += std::abs(pair.weight);
    span = std::max(span, std::abs(pair.delta));
  }
  return {scale_ * total,
          {1.0 / (4.0 * sigma_ * sigma_), span},
          {0.25 * sigma_ * sigma_, 0.0}};
}

PositionGaussianSuperposition PositionGaussianSuperposition::displaced(double x,
                                                                       double p) const {
  PositionGaussianSuperposition out = *this;
  out.displacement_ += Eigen::Vector2d(x, p);
  return out;
}

PositionGaussianSuperposition make_approx_gkp(const QuditSystem& sys, int j, double sigma,
                                              double kappa, std::optional<int> peak_cutoff) {
  if (j < 0 || j >= sys.d()) throw DomainError("logical index out of range");
  if (!(sigma > 0.0) || !(kappa > 0.0) || !std::isfinite(sigma) || !std::isfinite(kappa)) {
    throw DomainError("sigma and kappa must be positive and finite");
  }
  const double ell = sys.ell();
  const double step = sys.period();
  auto center = [&](int k) { return j * ell + step * k; };
  auto weight = [&](int k) {
    const double c = center(k);
    return std::exp(-0.5 * kappa * kappa * c * c);
  };
  int cutoff = 0;
  if (peak_cutoff) {
    if (*peak_cutoff < 0) throw DomainError("peak cutoff must be >= 0");
    cutoff = *peak_cutoff;
  } else {
    const double largest = std::max(weight(0), weight(-1));
    while (std::max(weight(cutoff + 1), weight(-cutoff - 1)) >= 1e-12 * largest) {
      if (++cutoff > 100000) throw DomainError("kappa too small for a finite peak cutoff");
    }
  }
  std::vector<GaussianPeak> peaks;
  GkpLattice lattice{sys.d(), j, {}};
  for (int k = -cutoff; k <= cutoff; ++k) {
    peaks.push_back({weight(k), center(k)});
    lattice.k.push_back(k);
  }
  PositionGaussianSuperposition out(std::move(peaks), sigma, true);
  out.gkp_ = std::move(lattice);
  return out;
}

// ---------------------------------------------------------------------------

IdealCodeword::IdealCodeword(const QuditSystem& sys, DvState logical, double s, double t)
    : d_(sys.d()), logical_(std::move(logical)), s_(s), t_(t) {
  if (logical_.dimension() != d_) throw DomainError("logical state dimension must equal d");
  if (!(s >= 0.0 && s < sys.ell()) || !(t >= 0.0 && t < sys.ell())) {
    throw DomainError("syndrome offsets must lie in [0, ell)");
  }
}

// ---------------------------------------------------------------------------

CvState::CvState(GaussianState state) : value_(std::move(state)) {}
CvState::CvState(PositionGaussianSuperposition state) : value_(std::move(state)) {}
CvState::CvState(IdealCodeword state) : value_(std::move(state)) {}

CvState CvState::mixture(std::vector<double> weights, std::vector<CvState> parts) {
  if (weights.size() != parts.size() || parts.empty()) {
    throw DomainError("mixture needs one weight per component");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!std::isfinite(weights[i])) throw DomainError("mixture weights must be finite");
    if (parts[i].singular()) throw SingularState("ideal codewords cannot be mixed numerically");
  }
  CvState out(GaussianState::vacuum());
  out.value_ = std::make_shared<const Mixture>(Mixture{std::move(weights), std::move(parts)});
  return out;
}

CvState::Kind CvState::kind() const {
  switch (value_.index()) {
    case 0:
      return Kind::gaussian;
    case 1:
      return Kind::superposition;
    case 2:
      return Kind::ideal_codeword;
    default:
      return Kind::mixture;
  }
}

cplx CvState::chi(double x, double p) const {
  return std::visit(
      [&](const auto& s) -> cplx {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IdealCodeword>) {
          throw SingularState("ideal codewords have no numeric characteristic function");
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Mixture>>) {
          cplx acc = 0.0;
          for (std::size_t i = 0; i < s->parts.size(); ++i) {
            acc += s->weights[i] * s->parts[i].chi(x, p);
          }
          return acc;
        } else {
          return s.chi(x, p);
        }
      },
      value_);
}

CharEnvelope CvState::envelope() const {
  return std::visit(
      [&](const auto& s) -> CharEnvelope {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IdealCodeword>) {
          throw SingularState("ideal codewords have no decay envelope");
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Mixture>>) {
          CharEnvelope out{0.0, {INFINITY, 0.0}, {INFINITY, 0.0}};
          for (std::size_t i = 0; i < s->parts.size(); ++i) {
            const CharEnvelope e = s->parts[i].envelope();
            out.amplitude += std::abs(s->weights[i]) * e.amplitude;
            out.x.rate = std::min(out.x.rate, e.x.rate);
            out.x.plateau = std::max(out.x.plateau, e.x.plateau);
            out.p.rate = std::min(out.p.rate, e.p.rate);
            out.p.plateau = std::max(out.p.plateau, e.p.plateau);
          }
          return out;
        } else {
          return s.envelope();
        }
      },
      value_);
}

double CvState::trace() const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IdealCodeword>) {
          return s.logical().trace();
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Mixture>>) {
          double acc = 0.0;
          for (std::size_t i = 0; i < s->parts.size(); ++i) {
            acc += s->weights[i] * s->parts[i].trace();
          }
          return acc;
        } else if constexpr (std::is_same_v<T, GaussianState>) {
          return 1.0;
        } else {
          return s.trace();
        }
      },
      value_);
}

CvState CvState::displaced(double x, double p) const {
  return std::visit(
      [&](const auto& s) -> CvState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IdealCodeword>) {
          throw SingularState("displacing ideal codewords is not supported");
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Mixture>>) {
          std::vector<CvState> parts;
          for (const auto& part : s->parts) parts.push_back(part.displaced(x, p));
          return mixture(s->weights, std::move(parts));
        } else {
          return CvState(s.displaced(x, p));
        }
      },
      value_);
}

}  // namespace zakgross
