#pragma once

#include "pvi/monodromy.hpp"

namespace pvi {

// Monodromy triple for theta = (0, 0, 0, 2 mu): 2 - x_i^2 are the pairwise traces.
struct Triple {
  cplx x0 = 0.0, x1 = 0.0, xInf = 0.0, mu = 0.0;

  // x0^2 + x1^2 + xInf^2 - x0 x1 xInf - 4 sin^2(pi mu)
  cplx constraint_residual() const;
  bool admissible(double buffer = 1e-8) const;
  // throws AdmissibilityError naming the violated condition
  void require_admissible() const;
  // equal up to a sign change of exactly two entries
  bool equivalent(const Triple& o, double tol = 1e-9) const;

  // the root xInf of the constraint nearest to hint (default: the one with Re >= 0)
  static Triple from_x0_x1(cplx x0, cplx x1, cplx mu, std::optional<cplx> hint = std::nullopt);
};

enum class LimitCase { none, I, II1, II2, II3, II4 };
const char* limit_name(LimitCase c);

struct AOfResult {
  cplx a;
  LimitCase limit = LimitCase::none;
};
// a(sigma; x0, x1, xInf), with the limit branches within 1e-8 of sigma = 0, +-2mu + 2m
AOfResult a_of_full(cplx sigma, const Triple& t);
cplx a_of(cplx sigma, const Triple& t);

struct TripleOfResult {
  Triple t;
  LimitCase limit = LimitCase::none;
};
TripleOfResult triple_of_full(cplx sigma, cplx a, cplx mu);
Triple triple_of(cplx sigma, cplx a, cplx mu);

// e^{i pi nu1} (low) or e^{-i pi nu1} (high) from the triple
struct Nu1Result {
  cplx nu1;        // principal value; nu1 + 2k is equivalent
  cplx expFactor;  // the exponential the formula produces
  bool numericLimit = false;
};
Nu1Result nu1_of_triple_full(cplx nu2, const Triple& t, NuBranch branch);
cplx nu1_of_triple(cplx nu2, const Triple& t, NuBranch branch);

// (x0, x1, xInf) -> (x1, x0, x0 x1 - xInf) and (xInf, -x1, x0 - x1 xInf)
Triple triple_to_x1(const Triple& t);
Triple triple_to_xinf(const Triple& t);

// e^{i pi nu1}|_{nu2 + 2n} = e^{i pi nu1}|_{nu2} K(nu2, n)
cplx K_shift(cplx nu2, int n, cplx mu);

// canonical sigma with cos(pi sigma) = 1 - x^2/2
cplx sigma_of_x(cplx x);

// Parameters of the transcendent at one critical point
struct PointData {
  Point point;
  cplx sigma, a;
  EllipticParams params;  // nu1, nu2 on the low branch
  LimitCase limit = LimitCase::none;
  bool numericLimit = false;
};
struct Connection {
  Triple triple;
  PointData at0, at1, atInf;
};
// sigma, a and (nu1, nu2) at 0, 1 and infinity for the transcendent y(x; x0, x1, xInf)
Connection nongeneric_connection(const Triple& t);

}  // namespace pvi
