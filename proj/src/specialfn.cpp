#include "pvi/specialfn.hpp"

#include <array>

namespace pvi {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;

// Lanczos coefficients, g = 7, n = 9
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(cplx z, double tol) {
  if (z.real() > 0.5) return false;
  double n = std::round(z.real());
  return std::abs(z - cplx(n, 0.0)) < tol;
}

cplx gamma_lanczos(cplx z) {
  z -= 1.0;
  cplx x = lanczos_c[0];
  for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (z + double(i));
  cplx t = z + lanczos_g + 0.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

void check_disc(const CoveringPoint& x, const char* what) {
  if (x.rho >= 0.0)
    throw DomainError(std::string(what) + ": |x| >= 1 outside the convergence disc");
}

// coefficient ratio ((n+1/2)/(n+1))^2
double f_ratio(int n) {
  double r = (n + 0.5) / (n + 1.0);
  return r * r;
}

// psi(n+1/2) - psi(n+1) updated by the recurrence
double next_dpsi(double d, int n) { return d + 1.0 / (n + 0.5) - 1.0 / (n + 1.0); }

constexpr double dpsi0 = -2.0 * 0.69314718055994530942;  // psi(1/2) - psi(1)

struct DirectSums {
  cplx F, dF, F1, dF1, Fm1;
};

DirectSums direct_sums(cplx x) {
  double ax = std::abs(x);
  DirectSums s{};
  double c = 1.0, d = dpsi0;
  cplx xn = 1.0, xnm1 = 0.0;  // x^n, x^(n-1)
  for (int n = 0; n < 20000; ++n) {
    s.F += c * xn;
    if (n > 0) s.Fm1 += c * xn;
    s.F1 += 2.0 * c * d * xn;
    if (n > 0) {
      s.dF += double(n) * c * xnm1;
      s.dF1 += 2.0 * double(n) * c * d * xnm1;
    }
    if (n > 8 && (n + 1) * std::pow(ax, n) * std::max(1.0, std::abs(d)) < 1e-18) break;
    xnm1 = xn;
    xn *= x;
    c *= f_ratio(n);
    d = next_dpsi(d, n);
  }
  return s;
}

}  // namespace

cplx gamma_complex(cplx z) {
  if (near_nonpositive_integer(z, 1e-12))
    throw PoleError("gamma: argument near non-positive integer");
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * gamma_lanczos(1.0 - z));
  return gamma_lanczos(z);
}

cplx digamma(cplx z) {
  if (near_nonpositive_integer(z, 1e-12))
    throw PoleError("digamma: argument near non-positive integer");
  if (z.real() < 0.0) return digamma(1.0 - z) - pi / std::tan(pi * z);
  cplx acc = 0.0;
  while (z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  cplx w = 1.0 / (z * z);
  // Bernoulli terms B_{2k}/(2k)
  cplx series = w * (1.0 / 12 - w * (1.0 / 120 - w * (1.0 / 252 - w * (1.0 / 240 - w * (1.0 / 132 - w * (691.0 / 32760 - w / 12.0))))));
  return acc + std::log(z) - 0.5 / z - series;
}

SeriesValue hyper_F(const CoveringPoint& x, int order) {
  check_disc(x, "hyper_F");
  cplx t = x.local();
  cplx sum = 0.0, xn = 1.0, term = 0.0;
  double c = 1.0;
  for (int n = 0; n <= order; ++n) {
    term = c * xn;
    sum += term;
    xn *= t;
    c *= f_ratio(n);
  }
  return {sum, std::abs(term) / (1.0 - x.modulus())};
}

SeriesValue hyper_F1(const CoveringPoint& x, int order) {
  check_disc(x, "hyper_F1");
  cplx t = x.local();
  cplx sum = 0.0, xn = 1.0, term = 0.0;
  double c = 1.0, d = dpsi0;
  for (int n = 0; n <= order; ++n) {
    term = 2.0 * c * d * xn;
    sum += term;
    xn *= t;
    c *= f_ratio(n);
    d = next_dpsi(d, n);
  }
  return {sum, std::abs(term) / (1.0 - x.modulus())};
}

HyperPair hyper_pair(cplx x) {
  bool near1 = std::abs(1.0 - x) < 1.0;
  if (std::abs(x) >= 1.0 && !near1) throw DomainError("hyper_pair: x outside |x| < 1 and |1-x| < 1");
  if (x.real() <= 0.5 && std::abs(x) < 1.0) {
    auto s = direct_sums(x);
    return {s.F, s.dF, s.F1, s.dF1, s.Fm1};
  }
  // -pi F(1-x) = F(x) ln x + F1(x), and the same relation with x <-> 1-x
  cplx t = 1.0 - x;
  auto s = direct_sums(t);
  cplx lt = std::log(t), lx = std::log(x);
  HyperPair h;
  h.F = -(s.F * lt + s.F1) / pi;
  h.dF = (s.dF * lt + s.F / t + s.dF1) / pi;
  h.F1 = -pi * s.F - h.F * lx;
  h.dF1 = pi * s.dF - h.dF * lx - h.F / x;
  h.Fm1 = h.F - 1.0;
  return h;
}

namespace {

struct LocalPeriods {
  cplx w1, w2, dw1, dw2;  // derivatives with respect to the local variable
};

LocalPeriods local_periods(const CoveringPoint& x) {
  if (x.rho >= 0.0) throw DomainError("periods: local variable outside |t| < 1");
  cplx t = x.local();
  cplx lt = x.log();
  HyperPair h = hyper_pair(t);
  cplx g = h.F * lt + h.F1;
  cplx dg = h.dF * lt + h.F / t + h.dF1;
  LocalPeriods p;
  switch (x.base) {
    case Point::at0:
      p = {0.5 * pi * h.F, -0.5 * I * g, 0.5 * pi * h.dF, -0.5 * I * dg};
      break;
    case Point::at1:
      p = {0.5 * I * pi * h.F, -0.5 * g, 0.5 * I * pi * h.dF, -0.5 * dg};
      break;
    case Point::atInf: {
      cplx r = x.power(0.5);
      cplx w1 = 0.5 * pi * h.F, w2 = -0.5 * I * g;
      cplx dw1 = 0.5 * pi * h.dF, dw2 = -0.5 * I * dg;
      p = {r * w1, r * w2, r * (dw1 + w1 / (2.0 * t)), r * (dw2 + w2 / (2.0 * t))};
      break;
    }
  }
  return p;
}

}  // namespace

PeriodPair periods(const CoveringPoint& x) {
  auto p = local_periods(x);
  return {p.w1, p.w2, p.w2 / p.w1, x.base};
}

PeriodPair periods_dx(const CoveringPoint& x) {
  auto p = local_periods(x);
  cplx t = x.local();
  cplx dtdx = 1.0;
  if (x.base == Point::at1) dtdx = -1.0;
  if (x.base == Point::atInf) dtdx = -t * t;
  return {p.dw1 * dtdx, p.dw2 * dtdx, 0.0, x.base};
}

cplx h_factor(const CoveringPoint& x, cplx C) {
  if (x.rho >= 0.0) throw DomainError("h_factor: |x| >= 1");
  if (C == 0.0) return 1.0;
  HyperPair h = hyper_pair(x.local());
  return std::exp(C * (h.F1 / h.F + 4.0 * std::log(2.0)));
}

}  // namespace pvi
