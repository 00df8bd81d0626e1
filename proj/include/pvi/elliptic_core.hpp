#pragma once

#include <map>
#include <optional>
#include <string>

#include "pvi/graded_series.hpp"
#include "pvi/weierstrass.hpp"

namespace pvi {

struct ThetaVector {
  cplx theta0 = 0.0, thetaX = 0.0, theta1 = 0.0, thetaInf = 0.0;

  cplx alpha() const { return 0.5 * (thetaInf - 1.0) * (thetaInf - 1.0); }
  cplx beta() const { return -0.5 * theta0 * theta0; }
  cplx gamma() const { return 0.5 * theta1 * theta1; }
  cplx delta() const { return 0.5 * (1.0 - thetaX * thetaX); }

  // Re theta >= 0 (tie: Im >= 0) for theta0, thetaX, theta1; Re thetaInf >= 1
  ThetaVector canonical() const;
  static ThetaVector from_abcd(cplx alpha, cplx beta, cplx gamma, cplx delta);
};

// theta seen from the local variable of the given point (t = 1-x swaps
// theta0 and theta1, t = 1/x swaps thetaX and theta1)
ThetaVector local_theta(const ThetaVector& th, Point p);

enum class SeriesCase { genericA, genericB, specialBeta, specialAlphaGamma, picard };
const char* case_name(SeriesCase c);
SeriesCase case_from_name(const std::string& s);

struct EllipticParams {
  cplx nu1 = 0.0;
  cplx nu2 = 0.0;  // normalized: Re in [0,2), or [-1,1) for special-alpha-gamma
  Point point = Point::at0;
  int branchN = 0;
  SeriesCase kind = SeriesCase::genericA;

  cplx nu2_eff() const { return nu2 + 2.0 * double(branchN); }
};

// Normalizes nu2 by even translation (recorded in branchN) and classifies the
// case from theta unless one is forced. The input nu2 equals nu2 + 2 branchN.
EllipticParams make_params(const ThetaVector& th, cplx nu1, cplx nu2, Point point = Point::at0,
                           std::optional<SeriesCase> forced = std::nullopt);

// Shape of the expansion: Y2 = e^{i pi nu1} (t/16)^p, Y1 = e^{-i pi nu1} (t/16)^(L-p)
struct CaseShape {
  int L = 1;
  cplx p = 0.0;
};
CaseShape case_shape(const EllipticParams& params);
// nu1 as it enters the local problem in t (sign flips at x = 1)
cplx local_nu1(const EllipticParams& params);

struct Monomials {
  cplx x, Y1, Y2;
};
Monomials monomials(const EllipticParams& params, const CoveringPoint& t);

struct DomainSpec {
  double r = 0.05;
  EllipticParams params;
};

bool domain_contains(const DomainSpec& d, const CoveringPoint& x);

// Right-hand side of theta^2 v = x(theta v + v/4)/(1-x) + R/(4(1-x)^2) at v = 0,
// expanded in x, Y1, Y2. R = 2a P00 - 2b P01 + 2c P10 + (1-2d) P11.
struct RhsSeries {
  GradedSeries phi;
  CaseShape shape;
  SeriesCase kind;
};
RhsSeries rhs_series(const ThetaVector& theta, const EllipticParams& params, int maxDegree);

struct SeriesTable {
  GradedSeries coeffs;  // v in the local variable
  int maxDegree = 0;
  EllipticParams params;
  ThetaVector theta;    // global theta; the table is built for local_theta(theta, point)
  CaseShape shape;
  double radius = 0.05;
  bool convergenceWarning = false;

  cplx a(int n) const { return coeffs.get(n, 0); }
  cplx b(int n, int m) const { return coeffs.get(n, -m); }
  cplx c(int n, int m) const { return coeffs.get(n, m); }
};

SeriesTable v_coefficients(const ThetaVector& theta, const EllipticParams& params, int maxDegree);

struct TableOptions {
  int maxDegree = 12;
  int cap = 24;
  double target = 1e-10;
  bool adaptive = true;
};
// v_coefficients with the default radius policy and adaptive doubling
SeriesTable build_table(const ThetaVector& theta, const EllipticParams& params, TableOptions opt = {});
double choose_radius(const SeriesTable& t);
// size of the top-grade terms at radius r
double top_grade_size(const SeriesTable& t, double r, int grade);

struct VValue {
  cplx v;       // v in the representation at the table's point
  cplx thetaV;  // t dv/dt of the local series
  cplx local;   // the local series value
  double M;     // |v_local| / (|t| + |Y1| + |Y2|)
};
VValue v_eval_full(const CoveringPoint& x, const SeriesTable& table, cplx nu1, bool checkDomain = true);
cplx v_eval(const CoveringPoint& x, const SeriesTable& table, cplx nu1);

struct YValue {
  cplx y, dy;  // dy/dx in the original variable
};
YValue y_eval_full(const CoveringPoint& x, const EllipticParams& params, const SeriesTable& table,
                   bool checkDomain = true);
cplx y_eval(const CoveringPoint& x, const EllipticParams& params, const SeriesTable& table);

cplx pvi_residual(const CoveringPoint& x, cplx y, cplx dy, cplx d2y, const ThetaVector& theta);
// the right-hand side y'' = f(x, y, y')
cplx pvi_rhs(cplx x, cplx y, cplx dy, const ThetaVector& theta);

// Residual of the Fuchsian form 2x(1-x) L(u) = sum w P with u = 2(nu1 w1 + nu2 w2 + v),
// L applied termwise to the series and the P evaluated numerically at u.
struct FuchsResidual {
  cplx residual;
  double scale;
};
FuchsResidual fuchs_residual(const CoveringPoint& x, const EllipticParams& params, const SeriesTable& table);

}  // namespace pvi
