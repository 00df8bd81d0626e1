#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pvi/elliptic_core.hpp"

namespace pvi {

using Mat2 = Eigen::Matrix2cd;

// Monodromy data: theta plus T0 = tr(M0 Mx), T1 = tr(M1 Mx), TInf = tr(M0 M1).
struct MonodromyData {
  ThetaVector theta;
  cplx T0 = 0.0, T1 = 0.0, TInf = 0.0;
};

// sigma, theta's not integer, (+-sigma +- theta1 +- thetaInf)/2 and
// (+-sigma +- theta0 +- thetaX)/2 not integer
bool is_generic(cplx sigma, const ThetaVector& th, double buffer = 1e-8);
void require_generic(cplx sigma, const ThetaVector& th, const char* who);

struct SigmaA {
  cplx sigma = 0.0, a = 0.0;
  Point point = Point::at0;
};

// Solution of 2 cos(pi sigma) = T with 0 <= Re sigma <= 1, Im sigma >= 0 on the edges.
cplx sigma_from_trace(cplx T);
// the aliases +-sigma + 2n, |n| <= nmax
std::vector<cplx> sigma_aliases(cplx sigma, int nmax);

Mat2 connection_C01(cplx sigma, cplx theta1, cplx thetaInf);
Mat2 connection_Cinf0(cplx sigma, cplx theta0, cplx thetaX);
Mat2 connection_Cinf1(cplx sigma, cplx theta0, cplx thetaX);

struct MMatrices {
  Mat2 m0, mx, m1;
};
MMatrices m_matrices(cplx sigma, const ThetaVector& th, cplx s);

// Laurent coefficients tr(m1 m0) = F1/s + F2 + F3 s,
// tr(mx m1) = -e^{-i pi sigma} F1/s + F4 - e^{i pi sigma} F3 s, fitted from three s samples
struct LaurentF {
  cplx F1, F2, F3, F4;
  double mismatch;  // relative disagreement of the cross-relations
};
LaurentF laurent_F(cplx sigma, const ThetaVector& th, cplx s0 = 1.0);

MonodromyData traces_from_params(cplx sigma, const ThetaVector& th, cplx s);
cplx s_from_traces(const MonodromyData& data, cplx sigma);
cplx a_from_s(cplx sigma, const ThetaVector& th, cplx s);
// the inverse of a_from_s
cplx s_from_a(cplx sigma, const ThetaVector& th, cplx a);

// data seen from t = 1-x (theta0 <-> theta1) and t = 1/x (thetaX <-> theta1)
MonodromyData transform_to_x1(const MonodromyData& d);
MonodromyData transform_to_xinf(const MonodromyData& d);

// (sigma, a) of the transcendent at the point named in d after the transform
SigmaA sigma_a_from_data(const MonodromyData& d, Point p);

enum class NuBranch { low, high };

// nu2 = 1 - sigma with e^{i pi nu1} = -4 a 16^{-sigma} (low), or nu2 = 1 + sigma
// with e^{-i pi nu1} = -4 a 16^{-sigma} (high). At x = 1 the sign of i pi nu1 flips.
// nu1 is the principal value; nu1 + 2k gives the same transcendent.
EllipticParams sigma_a_to_nu(const SigmaA& sa, NuBranch branch, const ThetaVector& th);
SigmaA nu_to_sigma_a(const EllipticParams& p);

struct FuchsianSystem {
  Mat2 Lambda, A0, Ax, A1, G0;
};
FuchsianSystem fuchsian_system_matrices(cplx sigma, const ThetaVector& th, cplx r, cplx s);

}  // namespace pvi
