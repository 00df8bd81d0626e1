#include "pvi/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <functional>
#include <ostream>
#include <sstream>

namespace pvi {

namespace {

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// (y, dy/dx) <-> (yt, dyt/dt) for the local frame of p
std::pair<cplx, cplx> to_local(Point p, cplx x, cplx y, cplx dy) {
  switch (p) {
    case Point::at0: return {y, dy};
    case Point::at1: return {1.0 - y, dy};
    case Point::atInf: return {y / x, y - x * dy};
  }
  return {y, dy};
}

std::pair<cplx, cplx> from_local(Point p, cplx t, cplx yt, cplx dyt) {
  switch (p) {
    case Point::at0: return {yt, dyt};
    case Point::at1: return {1.0 - yt, dyt};
    case Point::atInf: return {yt / t, yt - t * dyt};
  }
  return {yt, dyt};
}

// distance of y to the singular values of the equation, relative to their separation
double singular_distance(cplx t, cplx y) {
  double scale = std::min({1.0, std::abs(t), std::abs(1.0 - t)});
  double d = std::min({std::abs(y), std::abs(y - 1.0), std::abs(y - t)}) / scale;
  return std::min(d, 1.0 / (std::abs(y) * scale));
}

using State = std::array<cplx, 2>;
using Stepper = boost::numeric::odeint::runge_kutta_dopri5<State, double, State, double>;

struct Segment {
  // the independent variable is z(tau) = z0 + u tau, tau in [0, len];
  // logFrame: z = ln t and the state is (y, t dy/dt); otherwise z = x and (y, dy/dx)
  cplx z0, u;
  double len;
  bool logFrame;
  ThetaVector theta;
};

void run_segment(const Segment& seg, State& s, double tol, Trajectory& traj,
                 const std::function<void(cplx z, const State&)>& record) {
  auto sys = [&](const State& st, State& d, double tau) {
    cplx z = seg.z0 + seg.u * tau;
    if (seg.logFrame) {
      cplx t = std::exp(z);
      cplx f = pvi_rhs(t, st[0], st[1] / t, seg.theta);
      d[0] = seg.u * st[1];
      d[1] = seg.u * (st[1] + t * t * f);
    } else {
      d[0] = seg.u * st[1];
      d[1] = seg.u * pvi_rhs(z, st[0], st[1], seg.theta);
    }
  };
  Stepper stepper;
  double tau = 0.0, dt = std::min(seg.len, 0.02);
  const double minStep = 1e-13 * std::max(1.0, seg.len);
  while (tau < seg.len) {
    bool last = false;
    if (tau + dt >= seg.len) {
      dt = seg.len - tau;
      last = true;
    }
    State next = s, err;
    stepper.reset();
    stepper.do_step(sys, next, tau, dt, err);
    double scale = std::max({std::abs(s[0]), std::abs(s[1]), std::abs(next[0]), std::abs(next[1]), 1e-300});
    double e = std::max(std::abs(err[0]), std::abs(err[1])) / (tol * scale);
    if (!std::isfinite(e)) e = 1e10;
    if (e <= 1.0) {
      tau = last ? seg.len : tau + dt;
      s = next;
      ++traj.steps;
      traj.tolerance = std::max(traj.tolerance, e * tol);
      cplx z = seg.z0 + seg.u * tau;
      cplx t = seg.logFrame ? std::exp(z) : z;
      if (singular_distance(t, s[0]) < 1e-6) {
        cplx x = seg.logFrame ? t : z;
        throw PoleEncountered("integrate_pvi: y reaches a singular value near local t = " + fmt(x) +
                              " (ln t = " + fmt(z) + ")");
      }
      record(z, s);
      dt *= std::clamp(0.9 * std::pow(std::max(e, 1e-10), -0.2), 0.2, 5.0);
    } else {
      ++traj.rejected;
      dt *= std::clamp(0.9 * std::pow(e, -0.25), 0.1, 0.9);
      if (dt < minStep) throw StepUnderflow("integrate_pvi: step size underflow at tau = " + std::to_string(tau));
    }
  }
}

}  // namespace

ThetaVector picard_theta() { return {0.0, 0.0, 0.0, 1.0}; }

YValue picard_solution_full(cplx nu1, cplx nu2, const CoveringPoint& x) {
  CoveringPoint loc{x.rho, x.phi, Point::at0};
  if (loc.rho >= 0.0) throw DomainError("picard_solution: |t| >= 1 in the local variable");
  PeriodPair p = periods(loc), dp = periods_dx(loc);
  cplx t = loc.local();
  cplx n1 = x.base == Point::at1 ? -nu1 : nu1;
  cplx Z = n1 * p.omega1 + nu2 * p.omega2;
  cplx dZ = n1 * dp.omega1 + nu2 * dp.omega2;
  if (lattice_distance(Z, p.omega1, p.omega2) < 1e-12 * std::abs(p.omega1))
    throw LatticePoleError("picard_solution: nu1 w1 + nu2 w2 on the lattice");
  cplx yt = wp_reduced(Z, p.omega1, p.omega2) + (1.0 + t) / 3.0;
  cplx dyt = wp_dx(Z, dZ, p.omega1, p.omega2, dp.omega1, dp.omega2) + 1.0 / 3.0;
  if (std::abs(yt) * std::abs(yt) < std::abs(t)) {
    // wp(Z) - e3 = (e3 - e1)(e3 - e2) / (wp(Z - w2) - e3) = t / D, no cancellation
    cplx D = wp_reduced(Z - p.omega2, p.omega1, p.omega2) + (1.0 + t) / 3.0;
    cplx dD = wp_dx(Z - p.omega2, dZ - dp.omega2, p.omega1, p.omega2, dp.omega1, dp.omega2) + 1.0 / 3.0;
    yt = t / D;
    dyt = 1.0 / D - t * dD / (D * D);
  }
  auto [y, dy] = from_local(x.base, t, yt, dyt);
  return {y, dy};
}

cplx picard_solution(cplx nu1, cplx nu2, const CoveringPoint& x) { return picard_solution_full(nu1, nu2, x).y; }

void Trajectory::write_csv(std::ostream& os) const {
  os << "rho,phi,re_y,im_y,re_dy,im_dy\n";
  os.precision(17);
  for (const auto& s : samples)
    os << s.x.rho << ',' << s.x.phi << ',' << s.y.real() << ',' << s.y.imag() << ',' << s.dy.real() << ','
       << s.dy.imag() << '\n';
}

Trajectory integrate_pvi(const ThetaVector& theta, const TrajectorySample& start,
                         const std::vector<CoveringPoint>& path, double tol) {
  if (!(tol > 0.0)) throw DomainError("integrate_pvi: tol must be positive");
  cplx x0 = start.x.x();
  if (std::abs(x0) < 1e-300 || std::abs(x0 - 1.0) < 1e-14 || !std::isfinite(std::abs(x0)))
    throw DomainError("integrate_pvi: start at a critical point");
  {
    double sc = std::max({1.0, std::abs(x0)});
    if (std::abs(start.y) < 1e-14 * sc || std::abs(start.y - 1.0) < 1e-14 * sc || std::abs(start.y - x0) < 1e-14 * sc)
      throw DomainError("integrate_pvi: start with y at a singular value (0, 1 or x)");
  }
  Trajectory traj;
  traj.theta = theta;
  traj.samples.push_back(start);
  if (start.yLocal == 0.0) traj.samples.back().yLocal = to_local(start.x.base, x0, start.y, start.dy).first;

  CoveringPoint cur = start.x;
  cplx y = start.y, dy = start.dy;
  for (const CoveringPoint& nxt : path) {
    if (nxt.base == cur.base) {
      Point b = cur.base;
      cplx t0 = cur.local();
      cplx dyt = to_local(b, cur.x(), y, dy).second;
      State s{traj.samples.back().yLocal, t0 * dyt};
      cplx dz = nxt.log() - cur.log();
      double len = std::abs(dz);
      if (len == 0.0) continue;
      // t = 1 sits at ln t = 2 pi i k
      for (int k = int(std::floor(std::min(cur.phi, nxt.phi) / (2.0 * pi))) - 1;
           k <= int(std::ceil(std::max(cur.phi, nxt.phi) / (2.0 * pi))) + 1; ++k) {
        cplx c(0.0, 2.0 * pi * k);
        double s = std::clamp(((c - cur.log()) * std::conj(dz)).real() / (len * len), 0.0, 1.0);
        if (std::abs(cur.log() + s * dz - c) < 1e-8)
          throw DomainError("integrate_pvi: segment passes through a critical point");
      }
      Segment seg{cur.log(), dz / len, len, true, local_theta(theta, b)};
      run_segment(seg, s, tol, traj, [&](cplx z, const State& st) {
        cplx t = std::exp(z);
        auto [yy, dd] = from_local(b, t, st[0], st[1] / t);
        traj.samples.push_back({CoveringPoint::from_log(z, b), yy, dd, st[0]});
      });
      traj.samples.back().x = nxt;
      traj.samples.back().yLocal = s[0];
      y = traj.samples.back().y;
      dy = traj.samples.back().dy;
    } else {
      // straight in x; intermediate samples keep the base of the starting point
      cplx xa = cur.x(), xb = nxt.x();
      cplx d = xb - xa;
      double len = std::abs(d);
      if (len == 0.0) {
        traj.samples.push_back({nxt, y, dy, to_local(nxt.base, xb, y, dy).first});
        cur = nxt;
        continue;
      }
      for (cplx c : {cplx(0.0), cplx(1.0)}) {
        double s = std::clamp(((c - xa) * std::conj(d)).real() / (len * len), 0.0, 1.0);
        if (std::abs(xa + s * d - c) < 1e-8) throw DomainError("integrate_pvi: segment passes through a critical point");
      }
      State st{y, dy};
      Segment seg{xa, d / len, len, false, theta};
      Point b = cur.base;
      cplx tPrev = cur.local();
      double phi = cur.phi;
      run_segment(seg, st, tol, traj, [&](cplx x, const State& v) {
        CoveringPoint tmp = CoveringPoint::from_x(x, b);
        cplx t = tmp.local();
        phi += std::arg(t / tPrev);
        tPrev = t;
        traj.samples.push_back({CoveringPoint{tmp.rho, phi, b}, v[0], v[1], to_local(b, x, v[0], v[1]).first});
      });
      traj.samples.back().x = nxt;
      traj.samples.back().yLocal = to_local(nxt.base, xb, st[0], st[1]).first;
      y = st[0];
      dy = st[1];
    }
    cur = nxt;
  }
  return traj;
}

PowerFit fit_behavior(const Trajectory& traj, Point point, FitOptions opt) {
  std::vector<cplx> L, F;
  for (const auto& s : traj.samples) {
    if (s.x.base != point) continue;
    double m = s.x.modulus();
    if (!(m < opt.tailMax && m >= opt.tailMin)) continue;
    cplx yl = s.yLocal != 0.0 ? s.yLocal : to_local(point, s.x.x(), s.y, s.dy).first;
    cplx v = yl;
    if (point == Point::at1) v = -yl;
    if (point == Point::atInf) v = yl / s.x.local();
    L.push_back(point == Point::atInf ? -s.x.log() : s.x.log());
    F.push_back(v);
  }
  int n = int(L.size());
  if (n < opt.minSamples)
    throw FitDegenerate("fit_behavior: " + std::to_string(n) + " tail samples at " + point_name(point) + ", need " +
                        std::to_string(opt.minSamples));
  Eigen::MatrixXcd A(n, 2);
  Eigen::VectorXcd b(n);
  double arg = 0.0;
  for (int k = 0; k < n; ++k) {
    if (F[k] == 0.0) throw FitDegenerate("fit_behavior: F vanishes on the tail");
    double a = std::arg(F[k]);
    // continuous branch of ln F along the samples
    if (k > 0) a += 2.0 * pi * std::round((arg - a) / (2.0 * pi));
    arg = a;
    A(k, 0) = 1.0;
    A(k, 1) = L[k];
    b(k) = cplx(std::log(std::abs(F[k])), a);
  }
  Eigen::VectorXcd c = A.colPivHouseholderQr().solve(b);
  double rms = std::sqrt((A * c - b).squaredNorm() / n);
  if (!(rms <= opt.maxResidual)) {
    std::ostringstream os;
    os << "fit_behavior: tail is not a power law at " << point_name(point) << " (rms residual " << rms << ")";
    throw FitDegenerate(os.str());
  }
  return {c(1), std::exp(c(0)), rms, n};
}

}  // namespace pvi
