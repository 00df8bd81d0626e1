#include "pvi/nongeneric.hpp"

#include <algorithm>
#include <functional>

#include "pvi/specialfn.hpp"

namespace pvi {

namespace {

constexpr double kLimit = 1e-8;
constexpr int kMMax = 8;

bool near_int(cplx z, double buf) {
  return std::abs(z.imag()) < buf && std::abs(z.real() - std::round(z.real())) < buf;
}

// 1/Gamma, zero at the poles
cplx rgamma(cplx z) {
  if (near_int(z, 1e-13) && z.real() < 0.5) return 0.0;
  return 1.0 / gamma_complex(z);
}

cplx gam(cplx z, const char* who) {
  if (near_int(z, 1e-13) && z.real() < 0.5) throw ResonanceError(std::string(who) + ": Gamma at a pole");
  return gamma_complex(z);
}

cplx sin2(cplx mu) { return std::pow(std::sin(pi * mu), 2); }

// which limit point sigma sits on: returns the case family and m
struct Near {
  int sign = 0;  // 0: sigma = 0; +1: 2mu + 2m; -1: -2mu + 2m; 2: none
  int m = 0;
};
Near locate(cplx sigma, cplx mu, double radius) {
  if (std::abs(sigma) < radius) return {0, 0};
  for (int m = -kMMax; m <= kMMax; ++m) {
    if (std::abs(sigma - (2.0 * mu + 2.0 * double(m))) < radius) return {1, m};
    if (std::abs(sigma - (-2.0 * mu + 2.0 * double(m))) < radius) return {-1, m};
  }
  return {2, 0};
}

bool close(cplx a, cplx b) { return std::abs(a - b) <= 1e-6 * (std::abs(a) + std::abs(b)) + 1e-14; }

cplx a_main(cplx sigma, const Triple& t) {
  cplx den = t.x1 * t.x1 + t.xInf * t.xInf - t.x0 * t.x1 * t.xInf;
  double scale = std::abs(t.x1 * t.x1) + std::abs(t.xInf * t.xInf) + std::abs(t.x0 * t.x1 * t.xInf);
  if (std::abs(den) <= 1e-12 * scale)
    throw DenominatorError("a_of: x1^2 + xInf^2 - x0 x1 xInf vanishes outside a limit case");
  cplx sn = std::sin(pi * sigma);
  if (std::abs(sn) < 1e-14) throw DenominatorError("a_of: sin(pi sigma) = 0 outside a limit case");
  cplx f = (4.0 - t.x0 * t.x0) / den;
  cplx e = std::exp(-I * pi * sigma);
  cplx g = gam((sigma + 1.0) / 2.0, "a_of");
  cplx r = rgamma(1.0 - t.mu + sigma / 2.0) * rgamma(t.mu + sigma / 2.0);
  return I * std::pow(16.0, sigma) * std::pow(g, 4) * r * r / (8.0 * sn) *
         (2.0 * (1.0 + e) - f * (t.xInf * t.xInf + e * t.x1 * t.x1)) * f;
}

// the exponential of cambiolavoro-type formulas, low branch, as a function of nu2
cplx exp_low(cplx nu2, const Triple& t) {
  cplx den = t.x1 * t.x1 + t.xInf * t.xInf - t.x0 * t.x1 * t.xInf;
  cplx f = (4.0 - t.x0 * t.x0) / den;
  cplx e = std::exp(I * pi * nu2);
  cplx g = gam(1.0 - nu2 / 2.0, "nu1_of_triple");
  cplx r = rgamma(1.5 - t.mu - nu2 / 2.0) * rgamma(0.5 + t.mu - nu2 / 2.0);
  return -I * std::pow(g, 4) * r * r / (2.0 * std::sin(pi * nu2)) * (2.0 * (1.0 - e) - f * (t.xInf * t.xInf - e * t.x1 * t.x1)) * f;
}

cplx exp_high(cplx nu2, const Triple& t) {
  cplx den = t.x1 * t.x1 + t.xInf * t.xInf - t.x0 * t.x1 * t.xInf;
  cplx f = (4.0 - t.x0 * t.x0) / den;
  cplx e = std::exp(-I * pi * nu2);
  cplx g = gam(nu2 / 2.0, "nu1_of_triple");
  cplx r = rgamma(0.5 - t.mu + nu2 / 2.0) * rgamma(-0.5 + t.mu + nu2 / 2.0);
  return I * std::pow(g, 4) * r * r / (2.0 * std::sin(pi * nu2)) * (2.0 * (1.0 - e) - f * (t.xInf * t.xInf - e * t.x1 * t.x1)) * f;
}

}  // namespace

cplx Triple::constraint_residual() const {
  return x0 * x0 + x1 * x1 + xInf * xInf - x0 * x1 * xInf - 4.0 * sin2(mu);
}

bool Triple::admissible(double buffer) const {
  try {
    Triple c = *this;
    (void)buffer;
    c.require_admissible();
    return true;
  } catch (const AdmissibilityError&) {
    return false;
  }
}

void Triple::require_admissible() const {
  const char* names[3] = {"x0", "x1", "xInf"};
  cplx xs[3] = {x0, x1, xInf};
  int zeros = 0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(xs[i] - 2.0) < 1e-8 || std::abs(xs[i] + 2.0) < 1e-8)
      throw AdmissibilityError(std::string("triple: ") + names[i] + " = +-2");
    if (std::abs(xs[i]) < 1e-8) ++zeros;
  }
  if (zeros > 1) throw AdmissibilityError("triple: more than one x_i = 0");
  double scale = 1.0 + std::norm(x0) + std::norm(x1) + std::norm(xInf);
  if (std::abs(constraint_residual()) > 1e-8 * scale)
    throw AdmissibilityError("triple: x0^2 + x1^2 + xInf^2 - x0 x1 xInf != 4 sin^2(pi mu)");
}

bool Triple::equivalent(const Triple& o, double tol) const {
  if (std::abs(mu - o.mu) > tol) return false;
  auto eq = [&](cplx a, cplx b) { return std::abs(a - b) <= tol * (1.0 + std::abs(a)); };
  for (int flip : {0, 1, 2, 3}) {
    // 0: none, 1: x0 x1, 2: x0 xInf, 3: x1 xInf
    double s0 = (flip == 1 || flip == 2) ? -1 : 1, s1 = (flip == 1 || flip == 3) ? -1 : 1,
           si = (flip == 2 || flip == 3) ? -1 : 1;
    if (eq(s0 * x0, o.x0) && eq(s1 * x1, o.x1) && eq(si * xInf, o.xInf)) return true;
  }
  return false;
}

Triple Triple::from_x0_x1(cplx x0, cplx x1, cplx mu, std::optional<cplx> hint) {
  cplx b = -x0 * x1, c = x0 * x0 + x1 * x1 - 4.0 * sin2(mu);
  cplx d = std::sqrt(b * b - 4.0 * c);
  cplx r1 = (-b + d) / 2.0, r2 = (-b - d) / 2.0;
  cplx r;
  if (hint)
    r = std::abs(r1 - *hint) <= std::abs(r2 - *hint) ? r1 : r2;
  else
    r = r1.real() >= r2.real() ? r1 : r2;
  return {x0, x1, r, mu};
}

const char* limit_name(LimitCase c) {
  switch (c) {
    case LimitCase::none: return "none";
    case LimitCase::I: return "I";
    case LimitCase::II1: return "II1";
    case LimitCase::II2: return "II2";
    case LimitCase::II3: return "II3";
    case LimitCase::II4: return "II4";
  }
  return "?";
}

AOfResult a_of_full(cplx sigma, const Triple& t) {
  const cplx mu = t.mu;
  Near n = locate(sigma, mu, kLimit);
  cplx x1s = t.x1 * t.x1, xis = t.xInf * t.xInf;
  cplx em = std::exp(-2.0 * pi * I * mu), ep = std::exp(2.0 * pi * I * mu);
  if (n.sign == 0) {
    if (std::abs(t.x1) < 1e-12 || std::abs(t.xInf) < 1e-12)
      throw DenominatorError("a_of: case I needs x1, xInf nonzero");
    return {xis / (x1s + xis), LimitCase::I};
  }
  double m = double(n.m);
  cplx c4 = std::pow(std::cos(pi * mu), 4) / (4.0 * std::pow(pi, 4));
  if (n.sign == 1) {
    cplx s = 2.0 * mu + 2.0 * m;
    if (n.m >= 0 && close(xis, -x1s * em))
      return {-1.0 / (4.0 * x1s) * std::pow(16.0, s) * std::pow(gam(mu + m + 0.5, "a_of"), 4) *
                  std::pow(rgamma(m + 1.0) * rgamma(2.0 * mu + m), 2),
              LimitCase::II1};
    if (n.m <= -1 && close(xis, -x1s * ep))
      return {-c4 * std::pow(16.0, s) * std::pow(gam(mu + m + 0.5, "a_of"), 4) *
                  std::pow(gam(-2.0 * mu - m + 1.0, "a_of") * gam(-m, "a_of"), 2) * x1s,
              LimitCase::II2};
  } else if (n.sign == -1) {
    cplx s = -2.0 * mu + 2.0 * m;
    if (n.m >= 1 && close(xis, -x1s * ep))
      return {-1.0 / (4.0 * x1s) * std::pow(16.0, s) * std::pow(gam(-mu + m + 0.5, "a_of"), 4) *
                  std::pow(rgamma(m - 2.0 * mu + 1.0) * rgamma(m), 2),
              LimitCase::II3};
    if (n.m <= 0 && close(xis, -x1s * em))
      return {-c4 * std::pow(16.0, s) * std::pow(gam(-mu + m + 0.5, "a_of"), 4) *
                  std::pow(gam(2.0 * mu - m, "a_of") * gam(1.0 - m, "a_of"), 2) * x1s,
              LimitCase::II4};
  }
  return {a_main(sigma, t), LimitCase::none};
}

cplx a_of(cplx sigma, const Triple& t) { return a_of_full(sigma, t).a; }

TripleOfResult triple_of_full(cplx sigma, cplx a, cplx mu) {
  if (std::abs(a) == 0.0) throw DomainError("triple_of: a = 0");
  cplx sa = std::sqrt(a);
  Near n = locate(sigma, mu, kLimit);
  cplx s2 = std::sin(pi * mu);
  double m = double(n.m);
  cplx c2 = 2.0 * I * pi * pi / std::pow(std::cos(pi * mu), 2);
  if (n.sign == 0) {
    // x1^2 + xInf^2 = 4 sin^2(pi mu), a = xInf^2 / (x1^2 + xInf^2)
    return {{0.0, 2.0 * s2 * std::sqrt(1.0 - a), 2.0 * s2 * sa, mu}, LimitCase::I};
  }
  if (n.sign == 1 && n.m >= 0) {
    cplx x1 = -0.5 * I * std::pow(16.0, mu + m) * std::pow(gam(mu + m + 0.5, "triple_of"), 2) * rgamma(m + 1.0) *
              rgamma(2.0 * mu + m) / sa;
    return {{2.0 * s2, x1, I * x1 * std::exp(-I * pi * mu), mu}, LimitCase::II1};
  }
  if (n.sign == 1 && n.m <= -1) {
    cplx x1 = c2 * std::pow(16.0, -(mu + m)) * std::pow(rgamma(mu + m + 0.5), 2) * rgamma(-2.0 * mu - m + 1.0) *
              rgamma(-m) * sa;
    return {{2.0 * s2, x1, -I * x1 * std::exp(I * pi * mu), mu}, LimitCase::II2};
  }
  if (n.sign == -1 && n.m >= 1) {
    cplx x1 = -0.5 * I * std::pow(16.0, -mu + m) * std::pow(gam(-mu + m + 0.5, "triple_of"), 2) *
              rgamma(m - 2.0 * mu + 1.0) * rgamma(m) / sa;
    return {{-2.0 * s2, x1, I * x1 * std::exp(I * pi * mu), mu}, LimitCase::II3};
  }
  if (n.sign == -1 && n.m <= 0) {
    cplx x1 = c2 * std::pow(16.0, -(-mu + m)) * std::pow(rgamma(-mu + m + 0.5), 2) * rgamma(2.0 * mu - m) *
              rgamma(1.0 - m) * sa;
    return {{-2.0 * s2, x1, -I * x1 * std::exp(-I * pi * mu), mu}, LimitCase::II4};
  }
  cplx f = 2.0 * std::pow(std::cos(pi * sigma / 2.0), 2) / (std::cos(pi * sigma) - std::cos(2.0 * pi * mu));
  cplx G = std::pow(4.0, sigma) * std::pow(gam((sigma + 1.0) / 2.0, "triple_of"), 2) *
           rgamma(1.0 - mu + sigma / 2.0) * rgamma(mu + sigma / 2.0) / 2.0;
  if (std::abs(G) == 0.0) throw ResonanceError("triple_of: G(sigma, mu) = 0");
  cplx e = std::exp(I * pi * sigma / 2.0);
  Triple t{2.0 * std::sin(pi * sigma / 2.0), I * (sa / (f * G) - G / sa), e * sa / (f * G) + G / (e * sa), mu};
  return {t, LimitCase::none};
}

Triple triple_of(cplx sigma, cplx a, cplx mu) { return triple_of_full(sigma, a, mu).t; }

Nu1Result nu1_of_triple_full(cplx nu2, const Triple& t, NuBranch branch) {
  cplx want = t.x0 * t.x0 / 2.0 - 1.0;
  if (std::abs(std::cos(pi * nu2) - want) > 1e-8 * (1.0 + std::abs(want)))
    throw ConsistencyError("nu1_of_triple: cos(pi nu2) != x0^2/2 - 1");
  if (near_int(nu2, 1e-10) && std::abs(nu2 - 1.0) > 1e-10)
    throw ResonanceError("nu1_of_triple: nu2 is an integer other than 1");
  bool low = branch == NuBranch::low;
  cplx sigma = low ? 1.0 - nu2 : nu2 - 1.0;
  Nu1Result r{};
  Near n = locate(sigma, t.mu, kLimit);
  if (n.sign == 0) {
    // nu2 = 1: 0/0 in the formula, limit in nu2 at the fixed triple
    auto F = [&](cplx v) { return low ? exp_low(v, t) : exp_high(v, t); };
    double h = 1e-6;
    auto g = [&](double hh) { return 0.5 * (F(nu2 + hh) + F(nu2 - hh)); };
    r.expFactor = (4.0 * g(h / 2) - g(h)) / 3.0;
    r.numericLimit = true;
  } else if (n.sign != 2) {
    // f diverges on this locus; the limit branches of a(sigma) carry the value
    r.expFactor = -4.0 * a_of(sigma, t) * std::pow(16.0, -sigma);
  } else {
    r.expFactor = low ? exp_low(nu2, t) : exp_high(nu2, t);
  }
  r.nu1 = std::log(r.expFactor) / ((low ? 1.0 : -1.0) * I * pi);
  return r;
}

cplx nu1_of_triple(cplx nu2, const Triple& t, NuBranch branch) { return nu1_of_triple_full(nu2, t, branch).nu1; }

Triple triple_to_x1(const Triple& t) { return {t.x1, t.x0, t.x0 * t.x1 - t.xInf, t.mu}; }
Triple triple_to_xinf(const Triple& t) { return {t.xInf, -t.x1, t.x0 - t.x1 * t.xInf, t.mu}; }

cplx K_shift(cplx nu2, int n, cplx mu) {
  cplx K = 1.0;
  auto chk = [](cplx d) {
    if (std::abs(d) < 1e-10) throw ResonanceError("K_shift: vanishing denominator");
    return d;
  };
  for (int k = 1; k <= std::abs(n); ++k) {
    double dk = double(k);
    if (n > 0)
      K *= std::pow(nu2 - 1.0 + 2.0 * mu + 2.0 * (dk - 1.0), 2) * std::pow(nu2 - 1.0 - 2.0 * mu + 2.0 * dk, 2) /
           chk(std::pow(nu2 + 2.0 * dk - 2.0, 4));
    else
      K *= std::pow(nu2 - 2.0 * dk, 4) /
           chk(std::pow(nu2 - 1.0 + 2.0 * mu - 2.0 * dk, 2) * std::pow(nu2 - 1.0 - 2.0 * mu - 2.0 * (dk - 1.0), 2));
  }
  return K;
}

cplx sigma_of_x(cplx x) { return sigma_from_trace(2.0 - x * x); }

Connection nongeneric_connection(const Triple& t) {
  t.require_admissible();
  ThetaVector th{0.0, 0.0, 0.0, 2.0 * t.mu};
  auto one = [&](const Triple& tt, Point p) {
    PointData d{};
    d.point = p;
    d.sigma = sigma_of_x(tt.x0);
    auto ar = a_of_full(d.sigma, tt);
    d.a = ar.a;
    d.limit = ar.limit;
    cplx nu2 = 1.0 - d.sigma;
    auto nr = nu1_of_triple_full(nu2, tt, NuBranch::low);
    d.numericLimit = nr.numericLimit;
    // at x = 1 the formula gives e^{-i pi nu1}
    cplx nu1 = p == Point::at1 ? -nr.nu1 : nr.nu1;
    d.params = make_params(th, nu1, nu2, p);
    return d;
  };
  return {t, one(t, Point::at0), one(triple_to_x1(t), Point::at1), one(triple_to_xinf(t), Point::atInf)};
}

}  // namespace pvi
