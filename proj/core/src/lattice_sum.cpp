#include <cmath>
#include <numbers>
#include <sstream>

#include "zakgross/errors.hpp"
#include "zakgross/theta.hpp"

namespace zakgross {

namespace {

void check_decay(const AxisDecay& axis) {
  if (!(axis.rate > 0.0) || !std::isfinite(axis.rate) || !(axis.plateau >= 0.0) ||
      !std::isfinite(axis.plateau)) {
    throw DecayUnknown("lattice envelope needs a positive finite rate and plateau >= 0");
  }
}

// Upper bound on sum over all k of exp(-rate * max(0, |k| - plateau)^2).
double axis_total(const AxisDecay& axis) {
  const double half_gauss = 0.5 * std::sqrt(std::numbers::pi / axis.rate);
  return 2.0 * std::floor(axis.plateau) + 1.0 + 2.0 * (1.0 + half_gauss);
}

// Upper bound on the same sum restricted to |k| > radius, radius >= plateau.
double axis_tail(const AxisDecay& axis, int radius) {
  const double half_gauss = 0.5 * std::sqrt(std::numbers::pi / axis.rate);
  return 2.0 * half_gauss * std::erfc(std::sqrt(axis.rate) * (radius - axis.plateau));
}

int axis_radius(const AxisDecay& axis, double budget, int max_radius) {
  int radius = static_cast<int>(std::ceil(axis.plateau));
  while (axis_tail(axis, radius) > budget) {
    ++radius;
    if (radius > max_radius) {
      std::ostringstream msg;
      msg << "lattice sum needs radius > max_radius " << max_radius;
      throw NonConvergent(msg.str());
    }
  }
  if (radius > max_radius) {
    std::ostringstream msg;
    msg << "lattice sum plateau " << axis.plateau << " exceeds max_radius " << max_radius;
    throw NonConvergent(msg.str());
  }
  return radius;
}

}  // namespace

LatticeBox lattice_box(const LatticeEnvelope& envelope, const TruncationPolicy& policy) {
  policy.validate();
  check_decay(envelope.first);
  check_decay(envelope.second);
  if (!(envelope.amplitude >= 0.0) || !std::isfinite(envelope.amplitude)) {
    throw DecayUnknown("lattice envelope amplitude must be finite and >= 0");
  }
  if (envelope.amplitude == 0.0) return {};
  // Tail outside the box <= A (T_n S_m + S_n T_m); give each half the budget.
  const double half = 0.5 * policy.abs_tol / envelope.amplitude;
  LatticeBox box;
  box.radius_n = axis_radius(envelope.first, half / axis_total(envelope.second), policy.max_radius);
  box.radius_m = axis_radius(envelope.second, half / axis_total(envelope.first), policy.max_radius);
  return box;
}

LatticeSumResult weighted_lattice_sum_2d(const LatticeTerm& term,
                                         const std::optional<LatticeEnvelope>& envelope,
                                         const TruncationPolicy& policy) {
  if (!envelope) throw DecayUnknown("lattice sum requested without a decay envelope");
  const LatticeBox box = lattice_box(*envelope, policy);
  std::complex<long double> acc = 0;
  std::size_t terms = 0;
  auto add = [&](int n, int m) {
    acc += std::complex<long double>(term(n, m));
    ++terms;
  };
  const int shells = std::max(box.radius_n, box.radius_m);
  for (int r = 0; r <= shells; ++r) {
    for (int n = -r; n <= r; ++n) {
      if (std::abs(n) > box.radius_n) continue;
      if (std::abs(n) == r) {
        const int mm = std::min(r, box.radius_m);
        for (int m = -mm; m <= mm; ++m) add(n, m);
      } else if (r <= box.radius_m) {
        add(n, -r);
        if (r != 0) add(n, r);
      }
    }
  }
  return {cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag())), box, terms};
}

}  // namespace zakgross
