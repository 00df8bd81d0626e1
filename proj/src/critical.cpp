#include "pvi/critical.hpp"

namespace pvi {

namespace {

constexpr double edge = 1e-12;
const double ln16 = std::log(16.0);

bool near(double a, double b) { return std::abs(a - b) < edge; }

bool is_real(cplx z) { return std::abs(z.imag()) < 1e-14; }

// Local form in t at the table's point, before mapping back to y.
struct Local {
  AsymptoticForm f;
  cplx cl = 0.0, el = 0.0;  // powerLaw: ty = cl t^el
};

Local power(cplx c, cplx e, double gap) {
  Local l;
  l.f.kind = AsymptoticForm::Kind::powerLaw;
  l.cl = c;
  l.el = e;
  l.f.gap = gap;
  return l;
}

Local sine(AsymptoticForm::Kind k, cplx lnCoeff, cplx nu1) {
  Local l;
  l.f.kind = k;
  l.f.lnCoeff = lnCoeff;
  l.f.shift = pi * nu1 / 2.0;
  l.f.gap = 1.0;
  return l;
}

// -(1/4) e^{i pi nu1} 16^{1-nu2}
cplx lead(cplx nu1, cplx nu2) { return -0.25 * std::exp(I * pi * nu1 + (1.0 - nu2) * ln16); }

void attach(Local& l, const SeriesTable& t, int which, cplx nu1) {
  // which = +1: series in Y2 with c_{0m}; -1: series in Y1 with b_{0m}
  CaseShape s = t.shape;
  l.f.monoPrefactor = std::exp(double(which) * I * pi * nu1);
  l.f.monoExp = which > 0 ? s.p : double(s.L) - s.p;
  for (int m = 1; m <= t.maxDegree; ++m) l.f.phase.push_back(which > 0 ? t.c(0, m) : t.b(0, m));
}

void guard_sin(cplx nu1) {
  if (std::abs(std::sin(pi * nu1 / 2.0)) < edge)
    throw GuardError("sine form with sin(pi nu1 / 2) = 0 (nu1 = 0 is excluded)");
}

Local local_behavior(const EllipticParams& params, const SeriesTable& table, double V) {
  cplx n1 = local_nu1(params), n2 = params.nu2_eff();
  using K = AsymptoticForm::Kind;
  double lo = 0.0, hi = 1.0;
  if (params.kind == SeriesCase::specialBeta) hi = 2.0;
  if (params.kind == SeriesCase::specialAlphaGamma) lo = -1.0;
  if (params.kind == SeriesCase::picard) lo = -2.0, hi = 2.0;
  if (!(V >= lo - edge && V <= hi + edge))
    throw RangeError("V = " + std::to_string(V) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  if (params.kind == SeriesCase::picard) throw CaseError("use picard_behavior for the Picard case");

  if (is_real(n2)) {
    double r = n2.real();
    switch (params.kind) {
      case SeriesCase::genericA:
        return power(lead(n1, n2), n2, std::min(r, 1.0 - r));
      case SeriesCase::genericB:
        return power(1.0 / (16.0 * lead(n1, n2)), 2.0 - n2, std::min(2.0 - r, r - 1.0));
      case SeriesCase::specialBeta:
        if (near(r, 1.0)) {
          guard_sin(n1);
          return sine(K::sine2, 0.0, n1);
        }
        // the wp expansion adds x^(1-nu2) corrections on top of the printed order
        if (r < 1.0) return power(lead(n1, n2), n2, std::min(r, 1.0 - r));
        return power(1.0 / (16.0 * lead(n1, n2)), 2.0 - n2, std::min(2.0 - r, r - 1.0));
      case SeriesCase::specialAlphaGamma:
        if (near(r, 0.0)) {
          guard_sin(n1);
          return sine(K::invSine2, 0.0, n1);
        }
        if (r > 0.0) return power(lead(n1, n2), n2, std::min(r, 1.0 - r));
        // -(1/4) [e^{i pi nu1} 16^{-nu2-1}]^{-1} x^{-nu2}
        return power(-0.25 / std::exp(I * pi * n1 - (n2 + 1.0) * ln16), -n2, std::min(-r, r + 1.0));
      default: break;
    }
  }

  Local l;
  switch (params.kind) {
    case SeriesCase::genericA:
    case SeriesCase::genericB:
      if (near(V, 0.0)) {
        l = sine(K::invSine2, -0.5 * I * n2, n1);
        attach(l, table, +1, n1);
      } else if (near(V, 1.0)) {
        l = sine(K::sine2, 0.5 * I * (1.0 - n2), n1);
        attach(l, table, -1, n1);
      } else {
        l = power(lead(n1, n2), n2, std::min(V, 1.0 - V));
      }
      return l;
    case SeriesCase::specialBeta:
      if (near(V, 0.0)) {
        l = sine(K::invSine2, -0.5 * I * n2, n1);
        attach(l, table, +1, n1);
      } else if (near(V, 1.0)) {
        l = sine(K::sine2, 0.5 * I * (1.0 - n2), n1);
      } else if (near(V, 2.0)) {
        l = sine(K::invSine2, 0.5 * I * (2.0 - n2), n1);
        attach(l, table, -1, n1);
      } else if (V < 1.0) {
        l = power(lead(n1, n2), n2, std::min(V, 1.0 - V));
      } else {
        l = power(1.0 / (16.0 * lead(n1, n2)), 2.0 - n2, std::min(2.0 - V, V - 1.0));
      }
      return l;
    case SeriesCase::specialAlphaGamma:
      if (near(V, 0.0)) {
        l = sine(K::invSine2, -0.5 * I * n2, n1);
      } else if (near(V, 1.0)) {
        l = sine(K::sine2, 0.5 * I * (1.0 - n2), n1);
        attach(l, table, -1, n1);
      } else if (near(V, -1.0)) {
        l = sine(K::sine2, -0.5 * I * (n2 + 1.0), n1);
        attach(l, table, +1, n1);
      } else if (V > 0.0) {
        l = power(lead(n1, n2), n2, std::min(V, 1.0 - V));
      } else {
        l = power(-0.25 / std::exp(I * pi * n1 - (n2 + 1.0) * ln16), -n2, std::min(-V, V + 1.0));
      }
      return l;
    default: break;
  }
  throw CaseError("no critical behaviour for this case");
}

AsymptoticForm finish(Local l, Point p) {
  l.f.point = p;
  if (l.f.kind == AsymptoticForm::Kind::powerLaw) {
    switch (p) {
      case Point::at0: l.f.coefficient = l.cl, l.f.exponent = l.el; break;
      case Point::at1: l.f.coefficient = -l.cl, l.f.exponent = l.el; break;
      case Point::atInf: l.f.coefficient = l.cl, l.f.exponent = 1.0 - l.el; break;
    }
  }
  return l.f;
}

AsymptoticForm at_point(const EllipticParams& params, const SeriesTable& table, double V, Point p) {
  if (params.point != p) throw DomainError(std::string("parameters refer to the point ") + point_name(params.point));
  return finish(local_behavior(params, table, V), p);
}

}  // namespace

const char* kind_name(AsymptoticForm::Kind k) {
  switch (k) {
    case AsymptoticForm::Kind::powerLaw: return "powerLaw";
    case AsymptoticForm::Kind::sine2: return "sine2";
    case AsymptoticForm::Kind::invSine2: return "invSine2";
  }
  return "?";
}

cplx AsymptoticForm::argument(const CoveringPoint& t) const {
  cplx l16 = t.log() - ln16;
  cplx s = lnCoeff * l16 + shift;
  if (f1Coeff != cplx(0.0)) {
    HyperPair h = hyper_pair(t.local());
    s += f1Coeff * (h.F1 / h.F + 4.0 * std::log(2.0));
  }
  if (!phase.empty()) {
    cplx Y = monoPrefactor * std::exp(monoExp * l16), Ym = 1.0;
    for (cplx c : phase) {
      Ym *= Y;
      s += c * Ym;
    }
  }
  return s;
}

cplx AsymptoticForm::eval(const CoveringPoint& t) const {
  if (t.base != point) throw DomainError("AsymptoticForm::eval: point on the wrong cover");
  cplx tv = t.local();
  cplx ty;
  switch (kind) {
    case Kind::powerLaw:
      switch (point) {
        case Point::at0: return coefficient * t.power(exponent);
        case Point::at1: return 1.0 + coefficient * t.power(exponent);
        case Point::atInf: return coefficient * t.power(-exponent);
      }
      break;
    case Kind::sine2: {
      cplx s = std::sin(argument(t));
      ty = tv * s * s;
      break;
    }
    case Kind::invSine2: {
      cplx s = std::sin(argument(t));
      if (std::abs(s) == 0.0) throw PoleError("invSine2 form at a zero of sin");
      ty = 0.5 * tv + 1.0 / (s * s);
      break;
    }
  }
  switch (point) {
    case Point::at0: return ty;
    case Point::at1: return 1.0 - ty;
    case Point::atInf: return ty / tv;
  }
  return ty;
}

CoveringPoint path_point(const PathSpec& p, double lnAbsT) {
  cplx n2 = p.params.nu2_eff();
  CoveringPoint r = p.anchor;
  double d = lnAbsT - p.anchor.rho;
  r.rho = lnAbsT;
  if (!is_real(n2)) r.phi = p.anchor.phi + (n2.real() - p.V) / n2.imag() * d;
  return r;
}

AsymptoticForm behavior_at_0(const EllipticParams& params, const SeriesTable& table, double V) {
  return at_point(params, table, V, Point::at0);
}
AsymptoticForm behavior_at_1(const EllipticParams& params, const SeriesTable& table, double V) {
  return at_point(params, table, V, Point::at1);
}
AsymptoticForm behavior_at_inf(const EllipticParams& params, const SeriesTable& table, double V) {
  return at_point(params, table, V, Point::atInf);
}
AsymptoticForm behavior(const EllipticParams& params, const SeriesTable& table, double V) {
  return at_point(params, table, V, params.point);
}

AsymptoticForm picard_behavior(cplx nu1, cplx nu2, int N, double V) {
  if (!(V >= -2.0 - edge && V <= 2.0 + edge)) throw RangeError("V outside [-2, 2]");
  using K = AsymptoticForm::Kind;
  // negative V: same forms with N -> N + 1 and V -> V + 2
  if (V < -edge) {
    ++N;
    V += 2.0;
  }
  cplx n = nu2 + 2.0 * double(N);
  Local l;
  if (is_real(n)) {
    double r = n.real();
    if (near(r, 1.0)) {
      guard_sin(nu1);
      l = sine(K::sine2, 0.0, nu1);
    } else if (near(r, 0.0) || near(r, 2.0)) {
      guard_sin(nu1);
      l = sine(K::invSine2, 0.0, nu1);
    } else if (r > 0.0 && r < 1.0) {
      l = power(lead(nu1, n), n, std::min(r, 1.0 - r));
    } else if (r > 1.0 && r < 2.0) {
      l = power(1.0 / (16.0 * lead(nu1, n)), 2.0 - n, std::min(2.0 - r, r - 1.0));
    } else {
      throw RangeError("real nu2 + 2N outside [0, 2]");
    }
  } else if (near(V, 1.0)) {
    l = sine(K::sine2, 0.5 * I * (1.0 - n), nu1);
  } else if (near(V, 0.0)) {
    l = sine(K::invSine2, -0.5 * I * n, nu1);
    l.f.f1Coeff = -0.5 * I * n;
  } else if (near(V, 2.0)) {
    l = sine(K::invSine2, 0.5 * I * (2.0 - n), nu1);
    l.f.f1Coeff = 0.5 * I * (2.0 - n);
  } else if (V < 1.0) {
    l = power(lead(nu1, n), n, std::min(V, 1.0 - V));
  } else {
    l = power(1.0 / (16.0 * lead(nu1, n)), 2.0 - n, std::min(2.0 - V, V - 1.0));
  }
  return finish(l, Point::at0);
}

EllipticParams loop_continuation(const EllipticParams& params) {
  EllipticParams r = params;
  cplx n2 = params.nu2_eff();
  r.nu1 = params.point == Point::at1 ? params.nu1 - 2.0 * n2 : params.nu1 + 2.0 * n2;
  return r;
}

EllipticParams loop_continuation_inverse(const EllipticParams& params) {
  EllipticParams r = params;
  cplx n2 = params.nu2_eff();
  r.nu1 = params.point == Point::at1 ? params.nu1 + 2.0 * n2 : params.nu1 - 2.0 * n2;
  return r;
}

}  // namespace pvi
