#pragma once

// GKP syndrome statistics and the error-correction map onto the logical
// qudit.

#include <vector>

#include "zakgross/cv_states.hpp"
#include "zakgross/grid.hpp"
#include "zakgross/qudit.hpp"
#include "zakgross/zak_gross.hpp"

namespace zakgross {

/// ns x nt cells over [0, ell)^2 sampled at (i + offset) ell / ns.
struct SyndromeGridSpec {
  int ns = 64;
  int nt = 64;
  double offset = 0.5;  ///< 0.5: cell midpoints, 0: cell corners
};

/// Syndrome density Pr[(s, t)] of a non-singular state, summed directly over
/// the stabilizer lattice. Throws SingularState for ideal codewords.
SyndromeGrid syndrome_distribution(const QuditSystem& sys, const CvState& state,
                                   const SyndromeGridSpec& spec = {},
                                   const EvalOptions& options = {});

/// Sub-normalized logical state after correcting syndrome (s, t): its Gross
/// Wigner function is W restricted to (a ell + s, b ell + t) and its trace is
/// the syndrome density there. Ideal codewords return their logical state at
/// their own syndrome and the zero operator elsewhere.
DvState error_correct(const QuditSystem& sys, const CvState& state, double s, double t,
                      const EvalOptions& options = {});

/// Corrected logical states on a syndrome grid, members[i * nt + j] at
/// (s.at(i), t.at(j)).
struct LogicalFamily {
  Axis s;
  Axis t;
  std::vector<DvState> members;

  const DvState& at(int i, int j) const {
    return members[static_cast<std::size_t>(i) * t.count + j];
  }
  /// Trace of every member, laid out like a SyndromeGrid.
  Eigen::MatrixXd traces() const;
};

LogicalFamily logical_family(const QuditSystem& sys, const CvState& state,
                             const SyndromeGridSpec& spec = {},
                             const EvalOptions& options = {});

/// Negativity of the Zak-Gross function against the syndrome-averaged DV
/// negativity of the corrected logical states.
struct CorollaryReport {
  double lhs;
  double rhs;
  double lhs_tolerance;
  double rhs_tolerance;
};

CorollaryReport corollary_check(const QuditSystem& sys, const CvState& state, int nu, int nv,
                                const SyndromeGridSpec& syndrome = {},
                                const ZgGridOptions& options = {});

}  // namespace zakgross
