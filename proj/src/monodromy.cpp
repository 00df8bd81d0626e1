#include "pvi/monodromy.hpp"

#include <array>

#include "pvi/specialfn.hpp"

namespace pvi {

namespace {

bool near_int(cplx z, double buf) {
  return std::abs(z.imag()) < buf && std::abs(z.real() - std::round(z.real())) < buf;
}

cplx G(cplx z, const char* who, const char* what) {
  if (near_int(z, 1e-10) && z.real() < 0.5)
    throw GammaPoleError(std::string(who) + ": Gamma(" + what + ") at a pole");
  return gamma_complex(z);
}

Mat2 mat(cplx a, cplx b, cplx c, cplx d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

Mat2 expdiag(cplx th) { return mat(std::exp(I * pi * th), 0.0, 0.0, std::exp(-I * pi * th)); }

}  // namespace

bool is_generic(cplx sigma, const ThetaVector& th, double buffer) {
  for (cplx v : {sigma, th.theta0, th.thetaX, th.theta1, th.thetaInf})
    if (near_int(v, buffer)) return false;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) {
        if (near_int((double(a) * sigma + double(b) * th.theta1 + double(c) * th.thetaInf) / 2.0, buffer))
          return false;
        if (near_int((double(a) * sigma + double(b) * th.theta0 + double(c) * th.thetaX) / 2.0, buffer))
          return false;
      }
  return true;
}

void require_generic(cplx sigma, const ThetaVector& th, const char* who) {
  if (!is_generic(sigma, th)) throw CaseError(std::string(who) + ": parameters are not generic");
}

cplx sigma_from_trace(cplx T) {
  cplx s = std::acos(T / 2.0) / pi;
  if (s.real() < 0) s = -s;
  if (std::abs(s.real()) < 1e-14 && s.imag() < 0) s = -s;
  if (std::abs(s.real() - 1.0) < 1e-14 && s.imag() < 0) s = 2.0 - s;
  return s;
}

std::vector<cplx> sigma_aliases(cplx sigma, int nmax) {
  std::vector<cplx> out;
  for (int n = -nmax; n <= nmax; ++n) {
    out.push_back(sigma + 2.0 * double(n));
    out.push_back(-sigma + 2.0 * double(n));
  }
  return out;
}

Mat2 connection_C01(cplx sigma, cplx theta1, cplx thetaInf) {
  const char* w = "connection_C01";
  cplx a = (thetaInf + theta1 + sigma) / 2.0, b = 1.0 + (-thetaInf + theta1 + sigma) / 2.0, c = sigma + 1.0;
  cplx g1 = G(c - a - b, w, "gamma0-alpha0-beta0"), g2 = G(a + b - c, w, "alpha0+beta0-gamma0");
  cplx gc = G(c, w, "gamma0"), g2c = G(2.0 - c, w, "2-gamma0");
  return mat(g1 * gc / (G(c - a, w, "gamma0-alpha0") * G(c - b, w, "gamma0-beta0")),
             g1 * g2c / (G(1.0 - a, w, "1-alpha0") * G(1.0 - b, w, "1-beta0")),
             g2 * gc / (G(a, w, "alpha0") * G(b, w, "beta0")),
             g2 * g2c / (G(a + 1.0 - c, w, "alpha0+1-gamma0") * G(b + 1.0 - c, w, "beta0+1-gamma0")));
}

Mat2 connection_Cinf0(cplx sigma, cplx theta0, cplx thetaX) {
  const char* w = "connection_Cinf0";
  cplx a = (-sigma + theta0 + thetaX) / 2.0, b = 1.0 + (sigma + theta0 + thetaX) / 2.0, c = 1.0 + theta0;
  cplx gab = G(1.0 + a - b, w, "1+alpha0-beta0"), gba = G(1.0 + b - a, w, "1+beta0-alpha0");
  cplx g1c = G(1.0 - c, w, "1-gamma0"), gc1 = G(c - 1.0, w, "gamma0-1");
  return mat(std::exp(-I * pi * a) * gab * g1c / (G(1.0 - b, w, "1-beta0") * G(1.0 + a - c, w, "1+alpha0-gamma0")),
             std::exp(-I * pi * b) * gba * g1c / (G(1.0 - a, w, "1-alpha0") * G(1.0 + b - c, w, "1+beta0-gamma0")),
             std::exp(I * pi * (c - 1.0 - a)) * gab * gc1 / (G(a, w, "alpha0") * G(c - b, w, "gamma0-beta0")),
             std::exp(I * pi * (c - 1.0 - b)) * gba * gc1 / (G(b, w, "beta0") * G(c - a, w, "gamma0-alpha0")));
}

Mat2 connection_Cinf1(cplx sigma, cplx theta0, cplx thetaX) {
  const char* w = "connection_Cinf1";
  cplx a = (-sigma + theta0 + thetaX) / 2.0, b = 1.0 + (sigma + theta0 + thetaX) / 2.0, c = 1.0 + theta0;
  cplx gab = G(1.0 + a - b, w, "1+alpha0-beta0"), gba = G(1.0 + b - a, w, "1+beta0-alpha0");
  cplx g1 = G(c - a - b, w, "gamma0-alpha0-beta0"), g2 = G(a + b - c, w, "alpha0+beta0-gamma0");
  cplx ph = std::exp(I * pi * (c - a - b));
  return mat(g1 * gab / (G(1.0 - b, w, "1-beta0") * G(c - b, w, "gamma0-beta0")),
             g1 * gba / (G(1.0 - a, w, "1-alpha0") * G(c - a, w, "gamma0-alpha0")),
             ph * g2 * gab / (G(1.0 + a - c, w, "1+alpha0-gamma0") * G(a, w, "alpha0")),
             ph * g2 * gba / (G(1.0 + b - c, w, "1+beta0-gamma0") * G(b, w, "beta0")));
}

MMatrices m_matrices(cplx sigma, const ThetaVector& th, cplx s) {
  if (s == cplx(0.0)) throw DomainError("m_matrices: s = 0");
  require_generic(sigma, th, "m_matrices");
  Mat2 D = mat(1.0, 0.0, 0.0, s / (1.0 + sigma));
  Mat2 P0 = connection_Cinf0(sigma, th.theta0, th.thetaX) * D;
  Mat2 P1 = connection_Cinf1(sigma, th.theta0, th.thetaX) * D;
  Mat2 C = connection_C01(sigma, th.theta1, th.thetaInf);
  return {P0.inverse() * expdiag(th.theta0) * P0, P1.inverse() * expdiag(th.thetaX) * P1,
          C.inverse() * expdiag(th.theta1) * C};
}

LaurentF laurent_F(cplx sigma, const ThetaVector& th, cplx s0) {
  std::array<cplx, 3> ss{s0 / 2.0, s0, s0 * 2.0};
  Eigen::Matrix3cd A;
  Eigen::Vector3cd r10, rx1;
  for (int i = 0; i < 3; ++i) {
    auto m = m_matrices(sigma, th, ss[i]);
    A(i, 0) = 1.0 / ss[i];
    A(i, 1) = 1.0;
    A(i, 2) = ss[i];
    r10(i) = (m.m1 * m.m0).trace();
    rx1(i) = (m.mx * m.m1).trace();
  }
  auto lu = A.partialPivLu();
  Eigen::Vector3cd c = lu.solve(r10), d = lu.solve(rx1);
  cplx e = std::exp(I * pi * sigma);
  LaurentF f{c(0), c(1), c(2), d(1), 0.0};
  double scale = std::abs(d(0)) + std::abs(d(2)) + std::abs(c(0)) + std::abs(c(2)) + 1e-300;
  f.mismatch = (std::abs(d(0) + c(0) / e) + std::abs(d(2) + e * c(2))) / scale;
  if (f.mismatch > 1e-8)
    throw ConsistencyError("laurent_F: tr(mx m1) does not reuse F1, F3 (mismatch " + std::to_string(f.mismatch) + ")");
  return f;
}

MonodromyData traces_from_params(cplx sigma, const ThetaVector& th, cplx s) {
  auto f = laurent_F(sigma, th, s);
  cplx e = std::exp(I * pi * sigma);
  MonodromyData d;
  d.theta = th;
  d.T0 = 2.0 * std::cos(pi * sigma);
  d.TInf = f.F1 / s + f.F2 + f.F3 * s;
  d.T1 = -f.F1 / (e * s) + f.F4 - e * f.F3 * s;
  return d;
}

cplx s_from_traces(const MonodromyData& d, cplx sigma) {
  auto f = laurent_F(sigma, d.theta);
  cplx e = std::exp(I * pi * sigma);
  // e TInf + T1 = (e - 1/e) F1 / s + e F2 + F4
  cplx num = (e - 1.0 / e) * f.F1;
  if (std::abs(num) < 1e-12) throw DegenerateError("s_from_traces: (e^{i pi sigma} - e^{-i pi sigma}) F1 vanishes");
  cplx den = e * d.TInf + d.T1 - e * f.F2 - f.F4;
  if (std::abs(den) < 1e-14 * std::abs(num)) throw DegenerateError("s_from_traces: traces give s = infinity");
  return num / den;
}

namespace {
cplx a_factor(cplx sigma, const ThetaVector& th) {
  if (std::abs(sigma) < 1e-14) throw ZeroSigmaError("a_from_s: sigma = 0");
  cplx t0 = th.theta0, tx = th.thetaX;
  return (t0 + tx + sigma) * (-t0 + tx + sigma) * (t0 + tx - sigma) * (t0 - tx + sigma) /
         (16.0 * sigma * sigma * sigma);
}
}  // namespace

cplx a_from_s(cplx sigma, const ThetaVector& th, cplx s) {
  if (s == cplx(0.0)) throw DomainError("a_from_s: s = 0");
  return a_factor(sigma, th) / s;
}

cplx s_from_a(cplx sigma, const ThetaVector& th, cplx a) {
  if (a == cplx(0.0)) throw DomainError("s_from_a: a = 0");
  return a_factor(sigma, th) / a;
}

MonodromyData transform_to_x1(const MonodromyData& d) {
  const auto& t = d.theta;
  MonodromyData r;
  r.theta = {t.theta1, t.thetaX, t.theta0, t.thetaInf};
  r.T0 = d.T1;
  r.T1 = d.T0;
  r.TInf = 4.0 * (std::cos(pi * t.thetaInf) * std::cos(pi * t.thetaX) + std::cos(pi * t.theta0) * std::cos(pi * t.theta1)) -
           (d.TInf + d.T0 * d.T1);
  return r;
}

MonodromyData transform_to_xinf(const MonodromyData& d) {
  const auto& t = d.theta;
  MonodromyData r;
  r.theta = {t.theta0, t.theta1, t.thetaX, t.thetaInf};
  r.T0 = d.TInf;
  r.T1 = d.T1;
  r.TInf = 4.0 * (std::cos(pi * t.thetaInf) * std::cos(pi * t.theta1) + std::cos(pi * t.thetaX) * std::cos(pi * t.theta0)) -
           (d.T0 + d.T1 * d.TInf);
  return r;
}

SigmaA sigma_a_from_data(const MonodromyData& d, Point p) {
  MonodromyData l = p == Point::at0 ? d : p == Point::at1 ? transform_to_x1(d) : transform_to_xinf(d);
  cplx sigma = sigma_from_trace(l.T0);
  cplx s = s_from_traces(l, sigma);
  return {sigma, a_from_s(sigma, l.theta, s), p};
}

EllipticParams sigma_a_to_nu(const SigmaA& sa, NuBranch branch, const ThetaVector& th) {
  if (sa.a == cplx(0.0)) throw DomainError("sigma_a_to_nu: a = 0");
  cplx w = -4.0 * sa.a * std::pow(16.0, -sa.sigma);
  // w = e^{s i pi nu1}
  int sgn = (branch == NuBranch::low) ? 1 : -1;
  if (sa.point == Point::at1) sgn = -sgn;
  cplx nu1 = std::log(w) / (double(sgn) * I * pi);
  cplx nu2 = branch == NuBranch::low ? 1.0 - sa.sigma : 1.0 + sa.sigma;
  return make_params(th, nu1, nu2, sa.point);
}

SigmaA nu_to_sigma_a(const EllipticParams& p) {
  cplx nu2 = p.nu2_eff();
  cplx nu1 = p.nu1;
  nu2 -= 2.0 * std::floor(nu2.real() / 2.0);
  // nu1 -> -nu1 with nu2 -> 2 - nu2 keeps the transcendent
  if (nu2.real() > 1.0 || (nu2.real() == 1.0 && nu2.imag() > 0)) nu2 = 2.0 - nu2, nu1 = -nu1;
  cplx sigma = 1.0 - nu2;
  cplx e = std::exp((p.point == Point::at1 ? -1.0 : 1.0) * I * pi * nu1);
  return {sigma, -0.25 * e * std::pow(16.0, sigma), p.point};
}

FuchsianSystem fuchsian_system_matrices(cplx sigma, const ThetaVector& th, cplx r, cplx s) {
  if (sigma == cplx(0.0) || th.thetaInf == cplx(0.0) || r * s == cplx(0.0))
    throw DegenerateError("fuchsian_system_matrices: needs sigma, thetaInf, r, s nonzero");
  cplx a = (-sigma + th.theta0 + th.thetaX) / 2.0, b = (sigma + th.theta0 + th.thetaX) / 2.0, g = 1.0 + th.theta0;
  cplx A = (th.thetaInf + th.theta1 + sigma) / 2.0, B = (-th.thetaInf + th.theta1 + sigma) / 2.0, C = 1.0 + sigma;
  Mat2 id = Mat2::Identity();
  FuchsianSystem m;
  m.G0 = mat(1.0, 1.0, A * (1.0 + B - C) / (B - A) / r, (A * (1.0 + B - C) / (B - A) + 1.0 - C) / r);
  Mat2 Gi = m.G0.inverse();
  cplx l21 = a * b * (b + 1.0 - g) * (g - 1.0 - a) / ((a - b) * (a - b)) / s;
  m.A0 = m.G0 * mat(a * (b + 1.0 - g) / (a - b), s, l21, b * (g - a - 1.0) / (a - b)) * Gi + th.theta0 / 2.0 * id;
  m.Ax = m.G0 * mat(a * (g - a - 1.0) / (a - b), -s, -l21, b * (b + 1.0 - g) / (a - b)) * Gi + th.thetaX / 2.0 * id;
  cplx L21 = A * B * (B + 1.0 - C) * (C - 1.0 - A) / ((A - B) * (A - B)) / r;
  m.Lambda = mat(A * (B + 1.0 - C) / (A - B), r, L21, B * (C - A - 1.0) / (A - B)) + sigma / 2.0 * id;
  m.A1 = mat(A * (C - A - 1.0) / (A - B), -r, -L21, B * (B + 1.0 - C) / (A - B)) + th.theta1 / 2.0 * id;
  return m;
}

}  // namespace pvi
