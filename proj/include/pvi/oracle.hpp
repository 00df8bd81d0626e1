#pragma once

#include <iosfwd>
#include <vector>

#include "pvi/elliptic_core.hpp"

namespace pvi {

// Picard's solution (alpha = beta = gamma = 1 - 2 delta = 0): v = 0 and
// y = wp(nu1 w1 + nu2 w2) + (1+t)/3 in the local variable t of x.base, with
// the same conventions as y_eval (nu1 enters with a minus sign at x = 1).
YValue picard_solution_full(cplx nu1, cplx nu2, const CoveringPoint& x);
cplx picard_solution(cplx nu1, cplx nu2, const CoveringPoint& x);

ThetaVector picard_theta();

struct TrajectorySample {
  CoveringPoint x;
  cplx y, dy;  // y and dy/dx in the original variable
  // y, 1 - y or y/x for the base of x, kept without cancellation near 1;
  // zero means "derive from y"
  cplx yLocal = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  ThetaVector theta;
  double tolerance = 0.0;  // largest accepted local error estimate, relative
  int steps = 0;
  int rejected = 0;

  const TrajectorySample& back() const { return samples.back(); }
  // columns rho, phi, Re y, Im y, Re y', Im y'
  void write_csv(std::ostream& os) const;
};

// Integrates PVI from start through the path vertices. A segment between two
// points with the same base is a straight line in (ln|t|, arg t) and is
// integrated in the local frame of that point (t = 1 - x with 1 - y, or
// t = 1/x with y/x); a segment changing base is a straight line in x.
// Throws PoleEncountered when y comes within 1e-6 of 0, 1, x or infinity,
// measured on the scale min(1, |t|, |1-t|) of the local frame.
Trajectory integrate_pvi(const ThetaVector& theta, const TrajectorySample& start,
                         const std::vector<CoveringPoint>& path, double tol = 1e-10);

struct FitOptions {
  double tailMax = 1e-2;   // use samples with tailMin <= |t| < tailMax
  double tailMin = 0.0;
  int minSamples = 8;
  double maxResidual = 1e-2;  // rms of the linear fit above which the tail is not a power law
};

struct PowerFit {
  cplx exponent, coefficient;
  double confidence;  // rms residual of ln F against the fitted line
  int used;
};

// Least squares of ln F against ln(variable): F = y at 0, y - 1 against
// 1 - x at 1, y against x at infinity (exponent in x, as in AsymptoticForm).
PowerFit fit_behavior(const Trajectory& traj, Point point, FitOptions opt = {});

}  // namespace pvi
