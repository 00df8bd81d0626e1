#include "pvi/weierstrass.hpp"

#include <algorithm>

namespace pvi {

namespace {

constexpr double pole_tol = 1e-8;

// frame data with Im tau > 0
struct Oriented {
  cplx w1, tau, q;
  double sign2;  // +1 or -1: how omega2 was flipped
};

Oriented orient(const PeriodPair& p) {
  Oriented o{p.omega1, p.tau, 0.0, 1.0};
  if (o.tau.imag() < 0) {
    o.tau = -o.tau;
    o.sign2 = -1.0;
  }
  o.q = std::exp(2.0 * pi * I * o.tau);
  return o;
}

void check_pole(cplx z, const PeriodPair& p) {
  if (lattice_distance(z, p.omega1, p.omega2) < pole_tol * std::abs(p.omega1))
    throw LatticePoleError("wp: argument within 1e-8 of a lattice point");
}

// exp(z) - 1 without cancellation for small z
cplx expm1c(cplx z) {
  double a = z.real(), b = z.imag();
  double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// E = exp(2 i w) with w = pi z / (2 w1), folded to |E| <= 1 by evenness.
// Returns the folding sign for odd quantities.
double fold(cplx z, const Oriented& o, cplx& E, cplx& Em1) {
  cplx w = pi * z / (2.0 * o.w1);
  double sgn = 1.0;
  if (w.imag() < 0) {
    w = -w;
    sgn = -1.0;
  }
  Em1 = expm1c(2.0 * I * w);
  E = std::exp(2.0 * I * w);
  return sgn;
}

void check_strip(cplx E, const Oriented& o) {
  if (std::abs(o.q / E) >= 1.0)
    throw StripError("wp: strip condition Im tau > |Im(z/2w1)| violated");
}

}  // namespace

double lattice_distance(cplx z, cplx omega1, cplx omega2) {
  cplx p1 = 2.0 * omega1, p2 = 2.0 * omega2;
  // real coordinates of z in the basis (p1, p2)
  double det = p1.real() * p2.imag() - p1.imag() * p2.real();
  double a = (z.real() * p2.imag() - z.imag() * p2.real()) / det;
  double b = (p1.real() * z.imag() - p1.imag() * z.real()) / det;
  double best = std::abs(z);
  double ra = std::floor(a), rb = std::floor(b);
  for (int i = -1; i <= 2; ++i)
    for (int j = -1; j <= 2; ++j)
      best = std::min(best, std::abs(z - (ra + i) * p1 - (rb + j) * p2));
  return best;
}

LatticeFrame frame_at(const CoveringPoint& x) {
  LatticeFrame f;
  f.periods = periods(x);
  cplx X = x.x();
  f.g2 = 4.0 / 3.0 * (1.0 - X + X * X);
  f.g3 = 4.0 / 27.0 * (X - 2.0) * (2.0 * X - 1.0) * (1.0 + X);
  cplx a = (2.0 - X) / 3.0, b = (2.0 * X - 1.0) / 3.0, c = -(1.0 + X) / 3.0;
  // labels follow the half-periods of the chosen representation
  switch (x.base) {
    case Point::at0: f.e1 = a, f.e2 = b, f.e3 = c; break;
    case Point::at1: f.e1 = c, f.e2 = b, f.e3 = a; break;
    case Point::atInf: f.e1 = b, f.e2 = a, f.e3 = c; break;
  }
  return f;
}

LatticeFrame frame_from_periods(cplx omega1, cplx omega2) {
  LatticeFrame f;
  f.periods = {omega1, omega2, omega2 / omega1, Point::at0};
  Oriented o = orient(f.periods);
  cplx k = pi / (2.0 * omega1);
  cplx s3 = 0.0, s5 = 0.0, qn = 1.0;
  for (int n = 1; n < 200; ++n) {
    qn *= o.q;
    cplx r = qn / (1.0 - qn);
    s3 += std::pow(double(n), 3) * r;
    s5 += std::pow(double(n), 5) * r;
    if (std::abs(qn) * std::pow(double(n), 5) < 1e-18) break;
  }
  f.g2 = std::pow(k, 4) * (4.0 / 3.0) * (1.0 + 240.0 * s3);
  f.g3 = std::pow(k, 6) * (8.0 / 27.0) * (1.0 - 504.0 * s5);
  f.e1 = wp_reduced(omega1, omega1, omega2);
  f.e2 = wp_reduced(omega1 + omega2, omega1, omega2);
  f.e3 = wp_reduced(omega2, omega1, omega2);
  return f;
}

WpParts wp_parts(cplx z, const LatticeFrame& f, int nterms) {
  check_pole(z, f.periods);
  Oriented o = orient(f.periods);
  cplx E, Em1;
  fold(z, o, E, Em1);
  check_strip(E, o);
  cplx S = -4.0 * E / (Em1 * Em1);
  cplx qn = 1.0, qE = 1.0, qoE = 1.0;
  for (int n = 1; n <= nterms; ++n) {
    qn *= o.q;
    qE *= o.q * E;
    qoE *= o.q / E;
    S += 8.0 * double(n) / (1.0 - qn) * (qn - 0.5 * qE - 0.5 * qoE);
    if (std::abs(qoE) < 1e-300) break;
  }
  return {std::pow(pi / (2.0 * o.w1), 2), S};
}

WpValue wp_series(cplx z, const LatticeFrame& f, int nterms) {
  WpParts p = wp_parts(z, f, nterms);
  Oriented o = orient(f.periods);
  cplx E, Em1;
  fold(z, o, E, Em1);
  // first omitted term dominates the tail
  double r = std::abs(o.q / E);
  double tail = std::abs(p.kappa2) * 8.0 * (nterms + 1) * std::pow(r, nterms + 1) / (1.0 - r);
  return {p.kappa2 * (p.S - 1.0 / 3.0), tail};
}

cplx wp(cplx z, const LatticeFrame& f, int nterms) { return wp_series(z, f, nterms).value; }

cplx wp_dx(cplx z, cplx dz, cplx w1, cplx w2, cplx dw1, cplx dw2, int nterms) {
  cplx tau = w2 / w1;
  if (tau.imag() < 0) {
    w2 = -w2;
    dw2 = -dw2;
    tau = -tau;
  }
  cplx q = std::exp(2.0 * I * pi * tau);
  // |q| < |E| < 1/|q| after shifting z by 2 k w2
  double lq = std::log(std::abs(q));
  double lE = (I * pi * z / w1).real();
  int k = int(std::lround(lE / lq));
  z -= 2.0 * double(k) * w2;
  dz -= 2.0 * double(k) * dw2;
  cplx E = std::exp(I * pi * z / w1);
  cplx Em1 = E - 1.0;
  if (std::abs(Em1) < 1e-12) throw LatticePoleError("wp_dx: argument at a lattice point");
  cplx S = -4.0 * E / (Em1 * Em1);
  cplx SE = 4.0 * E * (1.0 + E) / (Em1 * Em1 * Em1);
  cplx Sq = 0.0;
  cplx qn = 1.0, qE = 1.0, qoE = 1.0;
  for (int n = 1; n <= nterms; ++n) {
    qn *= q;
    qE *= q * E;
    qoE *= q / E;
    cplx d = 1.0 - qn;
    S += 8.0 * double(n) / d * (qn - 0.5 * qE - 0.5 * qoE);
    SE += 4.0 * double(n) * double(n) / d * (qoE - qE);
    Sq += 8.0 * double(n) * double(n) / (d * d) * (qn - 0.5 * qE - 0.5 * qoE);
    if (std::abs(qoE) + std::abs(qE) < 1e-300) break;
  }
  cplx k2 = std::pow(pi / (2.0 * w1), 2);
  cplx dk2 = -2.0 * k2 * dw1 / w1;
  cplx dlnE = I * pi * (dz * w1 - z * dw1) / (w1 * w1);
  cplx dlnq = 2.0 * I * pi * (dw2 * w1 - w2 * dw1) / (w1 * w1);
  return dk2 * (S - 1.0 / 3.0) + k2 * (SE * dlnE + Sq * dlnq);
}

cplx wp_prime(cplx z, const LatticeFrame& f, int nterms) {
  check_pole(z, f.periods);
  Oriented o = orient(f.periods);
  cplx E, Em1;
  double sgn = fold(z, o, E, Em1);
  check_strip(E, o);
  cplx s = 8.0 * I * E * (E + 1.0) / (Em1 * Em1 * Em1);
  cplx qn = 1.0, qE = 1.0, qoE = 1.0;
  for (int n = 1; n <= nterms; ++n) {
    qn *= o.q;
    qE *= o.q * E;
    qoE *= o.q / E;
    s -= 8.0 * I * double(n) * double(n) * (qE - qoE) / (1.0 - qn);
    if (std::abs(qoE) < 1e-300) break;
  }
  return sgn * std::pow(pi / (2.0 * o.w1), 3) * s;
}

cplx wp_du(cplx u, const LatticeFrame& f, Shift sh, int nterms) {
  Oriented o = orient(f.periods);
  double c = o.sign2 * (sh.eps2 + 2 * sh.N2);
  cplx A = std::exp(I * pi * u / (2.0 * o.w1) + I * pi * double(sh.eps1) + I * pi * c * o.tau);
  // the closed form is odd under A -> 1/A and valid for |q| < |A| < 1/|q|
  if (std::abs(A) <= std::abs(o.q) || std::abs(A) >= 1.0 / std::abs(o.q))
    throw StripError("wp_du: exp(if) outside the strip |q| < |A| < 1/|q|");
  if (std::abs(A - 1.0) < 1e-8) throw LatticePoleError("wp_du: argument at a lattice point");
  double sgn = 1.0;
  if (std::abs(A) > 1.0) {
    A = 1.0 / A;
    sgn = -1.0;
  }
  cplx s = A * (A + 1.0) / std::pow(A - 1.0, 3);
  cplx qn = 1.0, qA = 1.0, qoA = 1.0;
  for (int n = 1; n <= nterms; ++n) {
    qn *= o.q;
    qA *= o.q * A;
    qoA *= o.q / A;
    s -= double(n) * double(n) * (qA - qoA) / (1.0 - qn);
    if (std::abs(qoA) < 1e-300) break;
  }
  return sgn * I * std::pow(pi, 3) / (2.0 * std::pow(o.w1, 3)) * s;
}

namespace {

struct Reduced {
  LatticeFrame frame;
  cplx z;
};

Reduced reduce(cplx z, cplx omega1, cplx omega2) {
  cplx p1 = 2.0 * omega1, p2 = 2.0 * omega2;
  if (std::abs(p2) < std::abs(p1)) std::swap(p1, p2);
  for (int it = 0; it < 100; ++it) {
    double m = std::round((p2 / p1).real());
    p2 -= m * p1;
    if (std::abs(p2) < std::abs(p1)) {
      std::swap(p1, p2);
    } else {
      break;
    }
  }
  if ((p2 / p1).imag() < 0) p2 = -p2;
  double det = p1.real() * p2.imag() - p1.imag() * p2.real();
  double a = (z.real() * p2.imag() - z.imag() * p2.real()) / det;
  double b = (p1.real() * z.imag() - p1.imag() * z.real()) / det;
  z -= std::round(a) * p1 + std::round(b) * p2;
  Reduced r;
  r.frame.periods = {p1 / 2.0, p2 / 2.0, p2 / p1, Point::at0};
  r.z = z;
  return r;
}

}  // namespace

cplx wp_reduced(cplx z, cplx omega1, cplx omega2) {
  Reduced r = reduce(z, omega1, omega2);
  return wp(r.z, r.frame, 60);
}

cplx wp_prime_reduced(cplx z, cplx omega1, cplx omega2) {
  Reduced r = reduce(z, omega1, omega2);
  return wp_prime(r.z, r.frame, 60);
}

}  // namespace pvi
