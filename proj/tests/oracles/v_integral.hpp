#pragma once
// Independent check of the v series: integrate the v equation as a Volterra
// equation along a ray where |x|, |Y1|, |Y2| all decay, using only the
// numerical q-expansion of wp'. No series algebra is shared with the library.

#include <vector>

#include "pvi/elliptic_core.hpp"

namespace testutil {

using namespace pvi;

struct IntegralOracle {
  ThetaVector theta;
  cplx nu1, nu2;  // generic, 0 < Re nu2 < 1, Im nu2 != 0
  double sigmaMin = -60.0;

  // v at x = exp(s0), by Picard iteration on a grid of step h in sigma,
  // along ln t = s0 + sigma (1 + i kappa), sigma in [sigmaMin, 0]
  cplx solve(cplx s0, double h) const {
    double kappa = (nu2.real() - 0.5) / nu2.imag();
    cplx c(1.0, kappa);
    int N = int(std::lround(-sigmaMin / h));
    std::vector<cplx> v(N + 1, 0.0), dv(N + 1, 0.0), G(N + 1);
    std::vector<LatticeFrame> frames;
    frames.reserve(N + 1);
    for (int j = 0; j <= N; ++j) {
      double sg = sigmaMin + j * h;
      frames.push_back(frame_at(CoveringPoint::from_log(s0 + sg * c, Point::at0)));
    }
    cplx w00 = 2.0 * theta.alpha(), w01 = -2.0 * theta.beta(), w10 = 2.0 * theta.gamma(),
         w11 = 1.0 - 2.0 * theta.delta();
    cplx prev = 1e300;
    for (int it = 0; it < 60; ++it) {
      for (int j = 0; j <= N; ++j) {
        const LatticeFrame& f = frames[j];
        cplx x = CoveringPoint::from_log(s0 + (sigmaMin + j * h) * c).local();
        cplx u = 2.0 * (nu1 * f.periods.omega1 + nu2 * f.periods.omega2 + v[j]);
        cplx R = w00 * wp_du(u, f, {0, 0, 0}) + w01 * wp_du(u, f, {0, 1, 0}) + w10 * wp_du(u, f, {1, 0, 0}) +
                 w11 * wp_du(u, f, {1, 1, 0});
        cplx thv = dv[j] / c;
        G[j] = c * c * (x * (thv + v[j] / 4.0) / (1.0 - x) + R / (4.0 * (1.0 - x) * (1.0 - x)));
      }
      dv[0] = v[0] = 0.0;
      for (int j = 1; j <= N; ++j) dv[j] = dv[j - 1] + 0.5 * h * (G[j] + G[j - 1]);
      for (int j = 1; j <= N; ++j) v[j] = v[j - 1] + 0.5 * h * (dv[j] + dv[j - 1]);
      if (std::abs(v[N] - prev) < 1e-15 * (1.0 + std::abs(v[N]))) break;
      prev = v[N];
    }
    return v[N];
  }

  cplx value(cplx s0, double h = 0.01) const {
    cplx a = solve(s0, h), b = solve(s0, 2 * h);
    return (4.0 * a - b) / 3.0;
  }
};

}  // namespace testutil
