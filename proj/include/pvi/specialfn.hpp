#pragma once

#include "pvi/common.hpp"

namespace pvi {

cplx gamma_complex(cplx z);
cplx digamma(cplx z);

struct SeriesValue {
  cplx value;
  double tail = 0.0;  // |last term| / (1 - |x|)
};

// Partial sums of F(x) = 2F1(1/2,1/2;1;x) and of its companion F1(x) whose
// coefficients carry the extra factor 2[psi(n+1/2) - psi(n+1)].
SeriesValue hyper_F(const CoveringPoint& x, int order = 64);
SeriesValue hyper_F1(const CoveringPoint& x, int order = 64);

// F, F1 and their x-derivatives to machine precision for |x| < 1 or
// |1-x| < 1 (principal branches, cut along [1, inf)). For Re x > 1/2 the
// connection formula through 1-x is used.
struct HyperPair {
  cplx F, dF, F1, dF1;
  cplx Fm1;  // F - 1 without cancellation for small x
};
HyperPair hyper_pair(cplx x);

struct PeriodPair {
  cplx omega1, omega2, tau;
  Point point = Point::at0;
};

// Half-periods in the local representation named by x.base. The local
// variable must satisfy |t| < 1.
PeriodPair periods(const CoveringPoint& x);
// d(omega1)/dx and d(omega2)/dx with respect to the original variable x.
PeriodPair periods_dx(const CoveringPoint& x);

// h(x)^C = exp(C (F1/F + 4 ln 2)), so that exp(i pi C tau) = h^C (x/16)^C.
cplx h_factor(const CoveringPoint& x, cplx C);

}  // namespace pvi
