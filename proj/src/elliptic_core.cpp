#include "pvi/elliptic_core.hpp"

#include <functional>

namespace pvi {

namespace {

constexpr double weight_tol = 1e-12;
constexpr double eps_int = 1e-8;
const double ln16 = std::log(16.0);

bool is_zero(cplx z) { return std::abs(z) < weight_tol; }

cplx canon_sign(cplx z) {
  if (z.real() < 0 || (z.real() == 0 && z.imag() < 0)) return -z;
  return z;
}

struct Weights {
  cplx w00, w01, w10, w11;  // 2a, -2b, 2c, 1-2d
};

Weights weights(const ThetaVector& th) {
  return {2.0 * th.alpha(), -2.0 * th.beta(), 2.0 * th.gamma(), 1.0 - 2.0 * th.delta()};
}

std::vector<cplx> x_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> r(a.size(), 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<cplx> x_inv(const std::vector<cplx>& a) {
  std::vector<cplx> r(a.size(), 0.0);
  r[0] = 1.0 / a[0];
  for (size_t n = 1; n < a.size(); ++n) {
    cplx s = 0.0;
    for (size_t k = 1; k <= n; ++k) s += a[k] * r[n - k];
    r[n] = -s / a[0];
  }
  return r;
}

struct Family {
  int eps1, eps2, N2;
  cplx weight;
  GradedSeries a, b;  // A = a E, B = b / E
};

// Everything in the recursion that does not depend on v.
struct Builder {
  int L = 1, G = 0;
  CaseShape shape;
  SeriesCase kind;
  GradedSeries invF, invF3, xo1mx, inv4omx2;
  std::vector<GradedSeries> geo;  // geo[n] = 1/(1 - q^n)
  std::vector<Family> fam;

  cplx mu(int n, int m) const {
    if (m >= 0) return double(n) + double(m) * shape.p;
    return double(n) + double(-m) * (double(L) - shape.p);
  }

  Builder(const ThetaVector& th, const EllipticParams& params, int maxDegree) {
    kind = params.kind;
    shape = case_shape(params);
    L = shape.L;
    G = maxDegree;
    int nmax = L == 1 ? G / 2 : G;
    int N = nmax + 1;
    std::vector<cplx> Fc(N), F1c(N);
    double c = 1.0, d = -2.0 * std::log(2.0);
    for (int n = 0; n < N; ++n) {
      Fc[n] = c;
      F1c[n] = 2.0 * c * d;
      double r = (n + 0.5) / (n + 1.0);
      c *= r * r;
      d += 1.0 / (n + 0.5) - 1.0 / (n + 1.0);
    }
    auto iF = x_inv(Fc);
    auto iF3 = x_mul(iF, x_mul(iF, iF));
    auto s = x_mul(F1c, iF);
    s[0] = 0.0;  // F1(0)/F(0) + 4 ln 2
    std::vector<cplx> xo(N, 1.0), i4(N);
    xo[0] = 0.0;
    for (int n = 0; n < N; ++n) i4[n] = 0.25 * double(n + 1);
    invF = GradedSeries::from_x(L, G, iF);
    invF3 = GradedSeries::from_x(L, G, iF3);
    xo1mx = GradedSeries::from_x(L, G, xo);
    inv4omx2 = GradedSeries::from_x(L, G, i4);
    GradedSeries sx = GradedSeries::from_x(L, G, s);
    auto hpow = [&](cplx e) { return (sx * e).exp_series(); };
    GradedSeries x16 = GradedSeries::monomial(L, G, 1, 0, 1.0 / 16.0);
    GradedSeries q = hpow(2.0).mul(x16.mul(x16));
    geo.assign(G + 1, GradedSeries(L, G));
    GradedSeries qn = GradedSeries::monomial(L, G, 0, 0, 1.0);
    for (int n = 1; n <= G; ++n) {
      qn = qn.mul(q);
      // 1/(1 - q^n) = sum_j q^(nj)
      GradedSeries acc = GradedSeries::monomial(L, G, 0, 0, 1.0), pw = acc;
      for (int j = 1; j * 2 * n <= G * 2; ++j) {
        pw = pw.mul(qn);
        if (pw.min_grade() > G) break;
        acc += pw;
      }
      geo[n] = acc;
    }

    Weights w = weights(th);
    std::vector<std::tuple<int, int, cplx>> list;
    switch (kind) {
      case SeriesCase::genericA:
      case SeriesCase::genericB:
        list = {{0, 0, w.w00}, {0, 1, w.w01}, {1, 0, w.w10}, {1, 1, w.w11}};
        break;
      case SeriesCase::specialBeta:
        list = {{0, 0, w.w00}, {1, 0, w.w10}};
        break;
      case SeriesCase::specialAlphaGamma:
        list = {{0, 1, w.w01}, {1, 1, w.w11}};
        break;
      case SeriesCase::picard:
        break;
    }
    cplx nu2 = params.nu2_eff();
    for (auto [e1, e2, wt] : list) {
      // choose N2 so that the power of x/16 in A is in {0, .., 2-L}
      cplx base = nu2 + double(e2) - shape.p;
      int kA0 = int(std::lround(base.real()));
      int N2 = 0;
      int kA = kA0;
      while (kA < 0) kA += 2, ++N2;
      while (kA > 2 - L) kA -= 2, --N2;
      int kB = 2 - L - kA;
      cplx cexp = nu2 + double(e2 + 2 * N2);
      double sign = e1 ? -1.0 : 1.0;
      GradedSeries a = hpow(cexp).mul(GradedSeries::monomial(L, G, kA, 1, sign * std::pow(16.0, -kA)));
      GradedSeries b = hpow(2.0 - cexp).mul(GradedSeries::monomial(L, G, kB, -1, sign * std::pow(16.0, -kB)));
      fam.push_back({e1, e2, N2, wt, a, b});
    }
  }

  GradedSeries theta(const GradedSeries& v) const {
    GradedSeries r(L, G);
    v.for_each([&](int n, int m, cplx c) {
      if (c != cplx(0.0)) r.set(n, m, c * mu(n, m));
    });
    return r;
  }

  // R/(4(1-x)^2) and the full right-hand side, truncated at grade g
  GradedSeries R4(const GradedSeries& v, int g) const {
    GradedSeries w = v.mul(invF, g) * (2.0 * I);
    GradedSeries E = w.exp_series(g), Ei = (w * -1.0).exp_series(g);
    GradedSeries R(L, G);
    for (const auto& f : fam) {
      if (f.weight == cplx(0.0)) continue;
      GradedSeries A = f.a.mul(E, g), B = f.b.mul(Ei, g);
      GradedSeries S(L, G);
      GradedSeries pw = A;
      for (int k = 1; pw.min_grade() <= g; ++k) {
        S += pw * double(k * k);
        pw = pw.mul(A, g);
      }
      GradedSeries A2 = A.mul(A, g);
      GradedSeries Bn = B, A2n = A2;
      GradedSeries one = GradedSeries::monomial(L, G, 0, 0, 1.0);
      for (int n = 1; Bn.min_grade() <= g; ++n) {
        S += Bn.mul(A2n - one, g).mul(geo[n], g) * double(n * n);
        Bn = Bn.mul(B, g);
        A2n = A2n.mul(A2, g);
      }
      R += invF3.mul(S, g) * (-4.0 * I * f.weight);
    }
    return R.mul(inv4omx2, g);
  }

  GradedSeries rhs(const GradedSeries& v, int g) const {
    GradedSeries lin = theta(v) + v * 0.25;
    return xo1mx.mul(lin, g) + R4(v, g);
  }
};

}  // namespace

ThetaVector ThetaVector::canonical() const {
  ThetaVector t = *this;
  t.theta0 = canon_sign(theta0);
  t.thetaX = canon_sign(thetaX);
  t.theta1 = canon_sign(theta1);
  t.thetaInf = 1.0 + canon_sign(thetaInf - 1.0);
  return t;
}

ThetaVector ThetaVector::from_abcd(cplx alpha, cplx beta, cplx gamma, cplx delta) {
  ThetaVector t;
  t.thetaInf = 1.0 + std::sqrt(2.0 * alpha);
  t.theta0 = std::sqrt(-2.0 * beta);
  t.theta1 = std::sqrt(2.0 * gamma);
  t.thetaX = std::sqrt(1.0 - 2.0 * delta);
  return t.canonical();
}

ThetaVector local_theta(const ThetaVector& th, Point p) {
  switch (p) {
    case Point::at0: return th;
    case Point::at1: return {th.theta1, th.thetaX, th.theta0, th.thetaInf};
    case Point::atInf: return {th.theta0, th.theta1, th.thetaX, th.thetaInf};
  }
  return th;
}

const char* case_name(SeriesCase c) {
  switch (c) {
    case SeriesCase::genericA: return "generic-a";
    case SeriesCase::genericB: return "generic-b";
    case SeriesCase::specialBeta: return "special-beta";
    case SeriesCase::specialAlphaGamma: return "special-alpha-gamma";
    case SeriesCase::picard: return "picard";
  }
  return "?";
}

SeriesCase case_from_name(const std::string& s) {
  for (SeriesCase c : {SeriesCase::genericA, SeriesCase::genericB, SeriesCase::specialBeta,
                       SeriesCase::specialAlphaGamma, SeriesCase::picard})
    if (s == case_name(c)) return c;
  throw CaseError("unknown case '" + s + "'");
}

EllipticParams make_params(const ThetaVector& th, cplx nu1, cplx nu2, Point point,
                           std::optional<SeriesCase> forced) {
  ThetaVector lt = local_theta(th, point);
  Weights w = weights(lt);
  bool zb = is_zero(w.w01) && is_zero(w.w11);
  bool zag = is_zero(w.w00) && is_zero(w.w10);
  SeriesCase kind;
  if (zb && zag)
    kind = SeriesCase::picard;
  else if (zb)
    kind = SeriesCase::specialBeta;
  else if (zag)
    kind = SeriesCase::specialAlphaGamma;
  else
    kind = SeriesCase::genericA;
  if (forced) {
    SeriesCase f = *forced;
    bool ok = true;
    if (f == SeriesCase::picard) ok = kind == SeriesCase::picard;
    if (f == SeriesCase::specialBeta) ok = zb;
    if (f == SeriesCase::specialAlphaGamma) ok = zag;
    if (!ok) throw CaseError(std::string("weights inconsistent with case ") + case_name(f));
    kind = f;
  }
  EllipticParams p;
  p.nu1 = nu1;
  p.point = point;
  double lo = kind == SeriesCase::specialAlphaGamma ? -1.0 : 0.0;
  int k = int(std::floor((nu2.real() - lo) / 2.0));
  p.nu2 = nu2 - 2.0 * double(k);
  p.branchN = k;
  if (!forced && kind == SeriesCase::genericA && std::abs(nu2.imag()) < 1e-14 && p.nu2.real() > 1.0)
    kind = SeriesCase::genericB;
  p.kind = kind;
  return p;
}

CaseShape case_shape(const EllipticParams& params) {
  cplx nu2 = params.nu2_eff();
  switch (params.kind) {
    case SeriesCase::genericA: return {1, nu2};
    case SeriesCase::genericB: return {1, nu2 - 1.0};
    case SeriesCase::specialBeta: return {2, nu2};
    case SeriesCase::specialAlphaGamma: return {2, nu2 + 1.0};
    case SeriesCase::picard: return {1, nu2};
  }
  return {1, nu2};
}

cplx local_nu1(const EllipticParams& params) {
  return params.point == Point::at1 ? -params.nu1 : params.nu1;
}

Monomials monomials(const EllipticParams& params, const CoveringPoint& t) {
  CaseShape s = case_shape(params);
  cplx n1 = local_nu1(params);
  cplx l16 = t.log() - ln16;
  cplx y2 = std::exp(I * pi * n1 + s.p * l16);
  cplx y1 = std::exp(-I * pi * n1 + (double(s.L) - s.p) * l16);
  return {t.local(), y1, y2};
}

bool domain_contains(const DomainSpec& d, const CoveringPoint& x) {
  if (x.base != d.params.point) return false;
  if (!(x.modulus() < d.r)) return false;
  if (d.params.kind == SeriesCase::picard) return true;
  cplx nu2 = d.params.nu2_eff();
  // real nu2 inside the case window: the domain reduces to |x| < r
  if (nu2.imag() == 0.0 && d.params.branchN == 0) return true;
  Monomials m = monomials(d.params, x);
  return std::abs(m.Y1) < d.r && std::abs(m.Y2) < d.r;
}

RhsSeries rhs_series(const ThetaVector& theta, const EllipticParams& params, int maxDegree) {
  if (maxDegree < 1) throw DomainError("rhs_series: maxDegree must be >= 1");
  EllipticParams chk = make_params(theta, params.nu1, params.nu2_eff(), params.point, params.kind);
  (void)chk;
  if (params.kind == SeriesCase::picard)
    throw CaseError("rhs_series: picard case has no series");
  Builder b(local_theta(theta, params.point), params, maxDegree);
  GradedSeries zero(b.L, maxDegree);
  return {b.R4(zero, maxDegree), b.shape, params.kind};
}

SeriesTable v_coefficients(const ThetaVector& theta, const EllipticParams& params, int maxDegree) {
  // validates the case against the weights
  make_params(theta, params.nu1, params.nu2_eff(), params.point, params.kind);
  SeriesTable t;
  t.maxDegree = maxDegree;
  t.params = params;
  t.theta = theta;
  t.shape = case_shape(params);
  if (params.kind == SeriesCase::picard) {
    t.coeffs = GradedSeries(1, maxDegree);
    return t;
  }
  Builder b(local_theta(theta, params.point), params, maxDegree);
  GradedSeries v(b.L, maxDegree);
  for (int g = 1; g <= maxDegree; ++g) {
    GradedSeries r = b.rhs(v, g);
    r.for_each([&](int n, int m, cplx c) {
      if (v.grade(n, m) != g) return;
      if (n == 0 && m == 0) return;
      cplx mu = b.mu(n, m);
      if (std::abs(mu) < eps_int)
        throw ResonanceError("v_coefficients: resonant monomial (n=" + std::to_string(n) + ", m=" +
                             std::to_string(m) + ") with exponent near 0");
      v.set(n, m, c / (mu * mu));
    });
  }
  t.coeffs = v;
  return t;
}

double top_grade_size(const SeriesTable& t, double r, int grade) {
  double s = 0.0;
  t.coeffs.for_each([&](int n, int m, cplx c) {
    if (t.coeffs.grade(n, m) == grade) s += std::abs(c) * std::pow(r, n + std::abs(m));
  });
  return s;
}

double choose_radius(const SeriesTable& t) {
  double r = 0.05;
  int G = t.maxDegree;
  int low = 1;
  while (low < G && top_grade_size(t, r, low) == 0.0) ++low;
  if (low >= G) return r;
  for (int i = 0; i < 40; ++i) {
    if (top_grade_size(t, r, G) < 1e-3 * top_grade_size(t, r, low)) break;
    r *= 0.5;
  }
  return r;
}

SeriesTable build_table(const ThetaVector& theta, const EllipticParams& params, TableOptions opt) {
  SeriesTable t = v_coefficients(theta, params, opt.maxDegree);
  t.radius = choose_radius(t);
  if (opt.adaptive && params.kind != SeriesCase::picard) {
    int deg = opt.maxDegree;
    while (top_grade_size(t, t.radius, t.maxDegree) > opt.target && deg < opt.cap) {
      deg = std::min(2 * deg, opt.cap);
      t = v_coefficients(theta, params, deg);
      t.radius = choose_radius(t);
    }
  }
  int G = t.maxDegree;
  // degree capped: give up radius instead of accuracy
  if (opt.adaptive && params.kind != SeriesCase::picard)
    for (int i = 0; i < 40 && top_grade_size(t, t.radius, G) > opt.target; ++i) t.radius *= 0.5;
  if (G >= 2 && top_grade_size(t, t.radius, G) > top_grade_size(t, t.radius, G - 1) &&
      top_grade_size(t, t.radius, G) > 0.0)
    t.convergenceWarning = true;
  return t;
}

VValue v_eval_full(const CoveringPoint& x, const SeriesTable& table, cplx nu1, bool checkDomain) {
  EllipticParams p = table.params;
  p.nu1 = nu1;
  if (x.base != p.point) throw DomainError("v_eval: covering point refers to a different critical point");
  if (checkDomain && !domain_contains({table.radius, p}, x))
    throw DomainError("v_eval: point outside the convergence domain");
  Monomials mono = monomials(p, x);
  const GradedSeries& c = table.coeffs;
  int G = c.maxGrade(), nmax = c.nmax();
  std::vector<cplx> tp(nmax + 1), y1(G + 1), y2(G + 1);
  tp[0] = y1[0] = y2[0] = 1.0;
  for (int n = 1; n <= nmax; ++n) tp[n] = tp[n - 1] * mono.x;
  for (int m = 1; m <= G; ++m) y1[m] = y1[m - 1] * mono.Y1, y2[m] = y2[m - 1] * mono.Y2;
  CaseShape s = table.shape;
  cplx v = 0.0, th = 0.0;
  c.for_each([&](int n, int m, cplx a) {
    if (a == cplx(0.0)) return;
    cplx term = a * tp[n] * (m >= 0 ? y2[m] : y1[-m]);
    cplx mu = m >= 0 ? double(n) + double(m) * s.p : double(n) + double(-m) * (double(s.L) - s.p);
    v += term;
    th += mu * term;
  });
  VValue r;
  r.local = v;
  r.thetaV = th;
  r.M = std::abs(v) / (std::abs(mono.x) + std::abs(mono.Y1) + std::abs(mono.Y2));
  switch (p.point) {
    case Point::at0: r.v = v; break;
    case Point::at1: r.v = -I * v; break;
    case Point::atInf: r.v = x.power(0.5) * v; break;
  }
  return r;
}

cplx v_eval(const CoveringPoint& x, const SeriesTable& table, cplx nu1) {
  return v_eval_full(x, table, nu1).v;
}

YValue y_eval_full(const CoveringPoint& x, const EllipticParams& params, const SeriesTable& table,
                   bool checkDomain) {
  if (x.base != params.point) throw DomainError("y_eval: covering point refers to a different critical point");
  if (std::abs(table.params.nu2_eff() - params.nu2_eff()) > 1e-14 || table.params.kind != params.kind ||
      table.params.point != params.point)
    throw CaseError("y_eval: series table built for different parameters");
  VValue vv = v_eval_full(x, table, params.nu1, checkDomain);
  cplx t = x.local();
  cplx lt = x.log();
  HyperPair h = hyper_pair(t);
  LatticeFrame f = frame_at(CoveringPoint{x.rho, x.phi, Point::at0});
  cplx w1 = f.periods.omega1, w2 = f.periods.omega2;
  cplx n1 = local_nu1(params), n2 = params.nu2_eff();
  cplx Z = n1 * w1 + n2 * w2 + vv.local;
  cplx dw1 = 0.5 * pi * h.dF, dw2 = -0.5 * I * (h.dF * lt + h.F / t + h.dF1);
  cplx dZ = n1 * dw1 + n2 * dw2 + vv.thetaV / t;
  cplx yt, dyt;
  auto shifted = [&](cplx z) {
    // move z by periods 2 w2 to the middle of the strip
    z -= 2.0 * w2 * std::round((pi * z / (2.0 * w1)).imag() / (pi * f.periods.tau.imag()));
    // (1+t)/3 = -e3 in exact arithmetic, written without cancellation
    WpParts pp = wp_parts(z, f);
    return pp.kappa2 * pp.S + (t + h.Fm1 * (h.F + 1.0) / (h.F * h.F)) / 3.0;
  };
  try {
    yt = shifted(Z);
    dyt = wp_dx(Z, dZ, w1, w2, dw1, dw2) + 1.0 / 3.0;
    if (std::abs(yt) * std::abs(yt) < std::abs(t)) {
      // small y: wp(Z) - e3 = (e3-e1)(e3-e2)/(wp(Z-w2) - e3) = t / D
      cplx D = shifted(Z - w2);
      cplx dD = wp_dx(Z - w2, dZ - dw2, w1, w2, dw1, dw2) + 1.0 / 3.0;
      yt = t / D;
      dyt = 1.0 / D - t * dD / (D * D);
    }
  } catch (const LatticePoleError& e) {
    throw PoleError(std::string("y_eval: u/2 at a lattice point (") + e.what() + ")");
  }
  switch (params.point) {
    case Point::at0: return {yt, dyt};
    case Point::at1: return {1.0 - yt, dyt};
    case Point::atInf: return {yt / t, yt - t * dyt};
  }
  return {yt, dyt};
}

cplx y_eval(const CoveringPoint& x, const EllipticParams& params, const SeriesTable& table) {
  return y_eval_full(x, params, table).y;
}

cplx pvi_rhs(cplx x, cplx y, cplx dy, const ThetaVector& th) {
  cplx a = th.alpha(), b = th.beta(), c = th.gamma(), d = th.delta();
  return 0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - x)) * dy * dy -
         (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (y - x)) * dy +
         y * (y - 1.0) * (y - x) / (x * x * (x - 1.0) * (x - 1.0)) *
             (a + b * x / (y * y) + c * (x - 1.0) / ((y - 1.0) * (y - 1.0)) + d * x * (x - 1.0) / ((y - x) * (y - x)));
}

cplx pvi_residual(const CoveringPoint& xp, cplx y, cplx dy, cplx d2y, const ThetaVector& theta) {
  cplx x = xp.x();
  if (std::abs(y) < 1e-10 || std::abs(y - 1.0) < 1e-10 || std::abs(y - x) < 1e-10)
    throw SingularArgumentError("pvi_residual: y within 1e-10 of 0, 1 or x");
  return d2y - pvi_rhs(x, y, dy, theta);
}

FuchsResidual fuchs_residual(const CoveringPoint& x, const EllipticParams& params, const SeriesTable& table) {
  VValue vv = v_eval_full(x, table, params.nu1, false);
  // second theta-derivative of the series, termwise
  Monomials mono = monomials(params, x);
  CaseShape s = table.shape;
  cplx th2 = 0.0;
  table.coeffs.for_each([&](int n, int m, cplx a) {
    if (a == cplx(0.0)) return;
    cplx term = a * std::pow(mono.x, n) * (m >= 0 ? std::pow(mono.Y2, m) : std::pow(mono.Y1, -m));
    cplx mu = m >= 0 ? double(n) + double(m) * s.p : double(n) + double(-m) * (double(s.L) - s.p);
    th2 += mu * mu * term;
  });
  cplx t = x.local();
  cplx v = vv.local, th1 = vv.thetaV;
  cplx lhs = 4.0 * (1.0 - t) * ((1.0 - t) * th2 - t * th1 - t * v / 4.0);
  LatticeFrame f = frame_at(CoveringPoint{x.rho, x.phi, Point::at0});
  cplx u = 2.0 * (local_nu1(params) * f.periods.omega1 + params.nu2_eff() * f.periods.omega2 + v);
  Weights w = weights(local_theta(table.theta, params.point));
  cplx rhs = 0.0;
  double scale = std::abs(lhs);
  const std::tuple<int, int, cplx> fam[] = {{0, 0, w.w00}, {0, 1, w.w01}, {1, 0, w.w10}, {1, 1, w.w11}};
  for (auto [e1, e2, wt] : fam) {
    if (wt == cplx(0.0)) continue;
    // wp is 2 w2 periodic: pick the shift whose expansion converges
    cplx P = 0.0;
    bool done = false;
    for (int N2 : {0, -1, 1, -2, 2}) {
      try {
        P = wt * wp_du(u, f, {e1, e2, N2});
        done = true;
        break;
      } catch (const StripError&) {
      }
    }
    if (!done) throw StripError("fuchs_residual: no period shift brings u into the strip");
    rhs += P;
    scale = std::max(scale, std::abs(P));
  }
  return {lhs - rhs, std::max(scale, 1e-300)};
}

}  // namespace pvi
