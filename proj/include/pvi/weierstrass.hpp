#pragma once

#include "pvi/specialfn.hpp"

namespace pvi {

struct LatticeFrame {
  PeriodPair periods;
  cplx g2, g3;
  cplx e1, e2, e3;  // wp(w1), wp(w1 + w2), wp(w2)
};

// The PVI lattice at x: periods in the representation x.base, invariants from x.
LatticeFrame frame_at(const CoveringPoint& x);
// Arbitrary lattice; invariants from the Eisenstein q-series.
LatticeFrame frame_from_periods(cplx omega1, cplx omega2);

struct WpValue {
  cplx value;
  double tail = 0.0;
};

// Fourier (q-series) evaluation. Requires Im tau > |Im(z / 2 w1)| after
// orienting the frame so that Im tau > 0.
WpValue wp_series(cplx z, const LatticeFrame& f, int nterms = 40);
cplx wp(cplx z, const LatticeFrame& f, int nterms = 40);
cplx wp_prime(cplx z, const LatticeFrame& f, int nterms = 40);

// wp(z) = kappa2 * (S - 1/3) with kappa2 = (pi / 2 w1)^2; lets callers add
// constants without cancellation.
struct WpParts {
  cplx kappa2, S;
};
WpParts wp_parts(cplx z, const LatticeFrame& f, int nterms = 40);

struct Shift {
  int eps1 = 0, eps2 = 0, N2 = 0;
};
// d/du wp(u/2 + eps1 w1 + (eps2 + 2 N2) w2) from the q-expansion in
// A = exp(i pi u / 2w1) (-1)^eps1 exp(i pi (eps2 + 2 N2) tau).
cplx wp_du(cplx u, const LatticeFrame& f, Shift s, int nterms = 40);

// d/dx of wp(z(x); w1(x), w2(x)), the lattice moving with x. Needs
// 0 < Im(w2/w1) up to orientation; z is reduced by 2 w2 shifts.
cplx wp_dx(cplx z, cplx dz, cplx w1, cplx w2, cplx dw1, cplx dw2, int nterms = 40);

// Same functions on any lattice: basis and argument are reduced first.
cplx wp_reduced(cplx z, cplx omega1, cplx omega2);
cplx wp_prime_reduced(cplx z, cplx omega1, cplx omega2);

// distance from z to the lattice 2 w1 Z + 2 w2 Z
double lattice_distance(cplx z, cplx omega1, cplx omega2);

}  // namespace pvi
