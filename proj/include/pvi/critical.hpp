#pragma once

#include <vector>

#include "pvi/elliptic_core.hpp"

namespace pvi {

// Leading behaviour of a transcendent near a critical point.
// powerLaw:  y = c x^e (at 0), 1 + c (1-x)^e (at 1), c x^e (at infinity).
// sine2/invSine2 are kept in the local variable t (x, 1-x or 1/x):
//   s = lnCoeff ln(t/16) + shift + f1Coeff (F1/F + 4 ln 2)(t) + sum_m phase[m-1] Y^m,
//   Y = monoPrefactor (t/16)^monoExp,
//   sine2: ty = t sin^2 s,   invSine2: ty = t/2 + sin^-2 s,
// and y is ty, 1 - ty or ty/t.
struct AsymptoticForm {
  enum class Kind { powerLaw, sine2, invSine2 };
  Kind kind = Kind::powerLaw;
  Point point = Point::at0;
  cplx coefficient = 0.0, exponent = 0.0;
  cplx lnCoeff = 0.0, shift = 0.0, f1Coeff = 0.0;
  std::vector<cplx> phase;
  cplx monoPrefactor = 0.0, monoExp = 0.0;
  double gap = 1.0;  // relative error is O(|t|^gap) along the path

  cplx argument(const CoveringPoint& t) const;
  cplx eval(const CoveringPoint& t) const;
};

const char* kind_name(AsymptoticForm::Kind k);

struct PathSpec {
  CoveringPoint anchor;
  double V = 0.5;
  EllipticParams params;
};

// Point of the path with ln|t| = lnAbsT, t the local variable of the anchor.
CoveringPoint path_point(const PathSpec& p, double lnAbsT);

AsymptoticForm behavior_at_0(const EllipticParams& params, const SeriesTable& table, double V);
AsymptoticForm behavior_at_1(const EllipticParams& params, const SeriesTable& table, double V);
AsymptoticForm behavior_at_inf(const EllipticParams& params, const SeriesTable& table, double V);
// dispatches on params.point
AsymptoticForm behavior(const EllipticParams& params, const SeriesTable& table, double V);

AsymptoticForm picard_behavior(cplx nu1, cplx nu2, int N, double V);

EllipticParams loop_continuation(const EllipticParams& params);
EllipticParams loop_continuation_inverse(const EllipticParams& params);

}  // namespace pvi
