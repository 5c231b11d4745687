#include "zakgross/gkp_code.hpp"

#include <cmath>

#include "zakgross/errors.hpp"

namespace zakgross {

namespace {

void check_spec(const SyndromeGridSpec& spec) {
  if (spec.ns < 1 || spec.nt < 1) throw DomainError("syndrome grid must be non-empty");
  if (!(spec.offset >= 0.0 && spec.offset < 1.0)) {
    throw DomainError("syndrome grid offset must lie in [0, 1)");
  }
}

// W on all points (a ell + s_i, b ell + t_j) at once: the union of the d
// shifted copies of a syndrome axis is itself a uniform axis.
Grid2 lattice_restrictions(const QuditSystem& sys, const CvState& state,
                           const SyndromeGridSpec& spec, const EvalOptions& options) {
  const Axis s = cell_axis(sys.ell(), spec.ns, spec.offset);
  const Axis t = cell_axis(sys.ell(), spec.nt, spec.offset);
  const Axis u{s.start, s.step, spec.ns * sys.d()};
  const Axis v{t.start, t.step, spec.nt * sys.d()};
  return lattice_series_grid(state, zak_gross_series(sys), u, v, options);
}

DvWignerGrid restriction_at(const QuditSystem& sys, const Grid2& w, const SyndromeGridSpec& spec,
                            int i, int j) {
  const int d = sys.d();
  DvWignerGrid out{Eigen::MatrixXd(d, d)};
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) out.values(a, b) = w.values(i + a * spec.ns, j + b * spec.nt);
  }
  return out;
}

}  // namespace

SyndromeGrid syndrome_distribution(const QuditSystem& sys, const CvState& state,
                                   const SyndromeGridSpec& spec, const EvalOptions& options) {
  check_spec(spec);
  if (state.singular()) {
    throw SingularState("the syndrome distribution of an ideal codeword is a delta function");
  }
  const Axis s = cell_axis(sys.ell(), spec.ns, spec.offset);
  const Axis t = cell_axis(sys.ell(), spec.nt, spec.offset);
  return {TorusGeometry(sys), lattice_series_grid(state, syndrome_series(sys), s, t, options)};
}

DvState error_correct(const QuditSystem& sys, const CvState& state, double s, double t,
                      const EvalOptions& options) {
  const double ell = sys.ell();
  if (!(s >= 0.0 && s < ell) || !(t >= 0.0 && t < ell)) {
    throw DomainError("syndrome must lie in [0, ell)^2");
  }
  if (const IdealCodeword* codeword = state.ideal_codeword()) {
    if (codeword->d() != sys.d()) throw DomainError("codeword dimension does not match");
    if (std::abs(codeword->s() - s) <= 1e-12 && std::abs(codeword->t() - t) <= 1e-12) {
      return codeword->logical();
    }
    return DvState(Eigen::MatrixXcd::Zero(sys.d(), sys.d()));
  }
  const Axis u{s, ell, sys.d()};
  const Axis v{t, ell, sys.d()};
  const Grid2 w = lattice_series_grid(state, zak_gross_series(sys), u, v, options);
  return dv_reconstruct(sys, DvWignerGrid{w.values});
}

Eigen::MatrixXd LogicalFamily::traces() const {
  Eigen::MatrixXd out(s.count, t.count);
  for (int i = 0; i < s.count; ++i) {
    for (int j = 0; j < t.count; ++j) out(i, j) = at(i, j).trace();
  }
  return out;
}

LogicalFamily logical_family(const QuditSystem& sys, const CvState& state,
                             const SyndromeGridSpec& spec, const EvalOptions& options) {
  check_spec(spec);
  if (state.singular()) {
    throw SingularState("an ideal codeword occupies a single displaced code space");
  }
  const Grid2 w = lattice_restrictions(sys, state, spec, options);
  LogicalFamily family{cell_axis(sys.ell(), spec.ns, spec.offset),
                       cell_axis(sys.ell(), spec.nt, spec.offset),
                       {}};
  family.members.reserve(static_cast<std::size_t>(spec.ns) * spec.nt);
  for (int i = 0; i < spec.ns; ++i) {
    for (int j = 0; j < spec.nt; ++j) {
      family.members.push_back(dv_reconstruct(sys, restriction_at(sys, w, spec, i, j)));
    }
  }
  return family;
}

CorollaryReport corollary_check(const QuditSystem& sys, const CvState& state, int nu, int nv,
                                const SyndromeGridSpec& syndrome, const ZgGridOptions& options) {
  check_spec(syndrome);
  const NegativityReport lhs = zg_negativity(sys, state, nu, nv, options);
  if (lhs.exact) return {lhs.value, lhs.value, 0.0, 0.0};

  // Pr(s, t) N_DV(corrected state) = (1/d) sum |W(a ell + s, b ell + t)|.
  auto average = [&](const SyndromeGridSpec& spec) {
    const Grid2 w = lattice_restrictions(sys, state, spec, options);
    double acc = 0.0;
    for (int i = 0; i < spec.ns; ++i) {
      for (int j = 0; j < spec.nt; ++j) acc += dv_negativity(restriction_at(sys, w, spec, i, j));
    }
    const double ell = sys.ell();
    return acc * (ell / spec.ns) * (ell / spec.nt);
  };
  const double coarse = average(syndrome);
  const double fine = average({2 * syndrome.ns, 2 * syndrome.nt, syndrome.offset});
  return {lhs.value, fine + (fine - coarse) / 3.0, lhs.tolerance_estimate,
          std::abs(fine - coarse)};
}

}  // namespace zakgross
