#include "pvi/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "pvi/acceptance.hpp"
#include "pvi/critical.hpp"
#include "pvi/io.hpp"
#include "pvi/oracle.hpp"

namespace pvi::cli {

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Numbers = std::optional<std::vector<double>>;

struct JobConfig {
  std::string command;
  Numbers theta, abcd, nu, sigmaA, triple, mu;
  std::string point = "0";
  std::optional<double> pathV, anchorPhi, from;
  double to = 1e-8;
  int samples = 9;
  std::optional<int> order;
  double tol = 1e-10;
  std::string format = "json";
  std::string out;
  bool verify = false;
  std::vector<int> criteria;
};

std::vector<double> parse_numbers(const std::string& s, const char* flag) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  return v;
}

std::vector<double> numbers_from_json(const json& j, const char* key) {
  if (j.is_string()) return parse_numbers(j.get<std::string>(), key);
  if (j.is_number()) return {j.get<double>()};
  std::vector<double> v;
  if (!j.is_array()) throw ConfigError(std::string(key) + ": expected a list of numbers");
  for (const auto& e : j) {
    if (e.is_number()) {
      v.push_back(e.get<double>());
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      v.push_back(e[0].get<double>());
      v.push_back(e[1].get<double>());
    } else {
      throw ConfigError(std::string(key) + ": expected numbers or [re, im] pairs");
    }
  }
  return v;
}

// n reals, or 2n values read as (re, im) pairs
std::vector<cplx> complexes(const std::vector<double>& v, size_t n, const char* flag) {
  std::vector<cplx> c;
  if (v.size() == n) {
    for (double x : v) c.emplace_back(x, 0.0);
  } else if (v.size() == 2 * n) {
    for (size_t i = 0; i < n; ++i) c.emplace_back(v[2 * i], v[2 * i + 1]);
  } else {
    throw ConfigError(std::string(flag) + ": expected " + std::to_string(n) + " reals or " + std::to_string(2 * n) +
                      " values (re,im pairs)");
  }
  return c;
}

Point parse_point(const std::string& s) {
  if (s == "0") return Point::at0;
  if (s == "1") return Point::at1;
  if (s == "inf") return Point::atInf;
  throw ConfigError("--point must be 0, 1 or inf, got '" + s + "'");
}

// JSON config: keys mirror the long flags. Values from the file replace flag values.
void merge_config(JobConfig& c, const json& j, const std::map<std::string, bool>& onCli, std::ostream& err) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  static const std::vector<std::string> known = {"command", "theta",   "abcd", "nu",      "sigma-a", "triple",
                                                 "mu",      "point",   "path-V", "anchor-phi", "from",  "to",
                                                 "samples", "order",   "tol",  "format",  "out",     "verify",
                                                 "criteria"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("config: unknown key '" + k + "'");
    auto f = onCli.find(k);
    if (f != onCli.end() && f->second) err << "warning: config file overrides --" << k << "\n";
    const json& v = it.value();
    try {
      if (k == "command") {
        std::string cmd = v.get<std::string>();
        if (cmd != c.command) err << "warning: config file command '" << cmd << "' overrides '" << c.command << "'\n";
        c.command = cmd;
      } else if (k == "theta") c.theta = numbers_from_json(v, "theta");
      else if (k == "abcd") c.abcd = numbers_from_json(v, "abcd");
      else if (k == "nu") c.nu = numbers_from_json(v, "nu");
      else if (k == "sigma-a") c.sigmaA = numbers_from_json(v, "sigma-a");
      else if (k == "triple") c.triple = numbers_from_json(v, "triple");
      else if (k == "mu") c.mu = numbers_from_json(v, "mu");
      else if (k == "point") c.point = v.is_string() ? v.get<std::string>() : std::to_string(v.get<int>());
      else if (k == "path-V") c.pathV = v.get<double>();
      else if (k == "anchor-phi") c.anchorPhi = v.get<double>();
      else if (k == "from") c.from = v.get<double>();
      else if (k == "to") c.to = v.get<double>();
      else if (k == "samples") c.samples = v.get<int>();
      else if (k == "order") c.order = v.get<int>();
      else if (k == "tol") c.tol = v.get<double>();
      else if (k == "format") c.format = v.get<std::string>();
      else if (k == "out") c.out = v.get<std::string>();
      else if (k == "verify") c.verify = v.get<bool>();
      else if (k == "criteria") c.criteria = v.get<std::vector<int>>();
    } catch (const json::exception& e) {
      throw ConfigError("config: bad value for '" + k + "': " + e.what());
    }
  }
}

void validate(const JobConfig& c) {
  if (c.theta && c.abcd) throw ConfigError("--theta and --abcd are mutually exclusive");
  if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
  if (c.samples < 1 || c.samples > 100000) throw ConfigError("--samples must be in 1..100000");
  if (!(c.to > 0.0)) throw ConfigError("--to must be positive");
  if (c.from && !(*c.from > c.to)) throw ConfigError("--from must exceed --to");
  if (!(c.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (c.order && (*c.order < 1 || *c.order > 64)) throw ConfigError("--order must be in 1..64");
  parse_point(c.point);
  int styles = (c.nu ? 1 : 0) + (c.sigmaA ? 1 : 0) + (c.triple ? 1 : 0);
  if (styles > 1) throw ConfigError("--nu, --sigma-a and --triple are mutually exclusive");
  if (c.command == "verify") return;
  if (c.command == "picard") {
    if (!c.nu) throw ConfigError("picard needs --nu");
    if (c.theta || c.abcd || c.mu || c.sigmaA || c.triple) throw ConfigError("picard fixes theta = (0, 0, 0, 1)");
    return;
  }
  if (styles == 0) throw ConfigError("one of --nu, --sigma-a or --triple is required");
  if (c.triple && !c.mu) throw ConfigError("--triple needs --mu");
  if (c.mu && (c.theta || c.abcd)) throw ConfigError("--mu fixes theta = (0, 0, 0, 2 mu); drop --theta/--abcd");
  if (!c.mu && !c.theta && !c.abcd) throw ConfigError("theta is required (--theta, --abcd or --mu)");
  if (c.command == "connect" && c.format == "csv") throw ConfigError("connect writes json only");
}

ThetaVector resolve_theta(const JobConfig& c) {
  if (c.mu) return {0.0, 0.0, 0.0, 2.0 * complexes(*c.mu, 1, "--mu")[0]};
  if (c.abcd) {
    auto v = complexes(*c.abcd, 4, "--abcd");
    return ThetaVector::from_abcd(v[0], v[1], v[2], v[3]);
  }
  auto v = complexes(*c.theta, 4, "--theta");
  return {v[0], v[1], v[2], v[3]};
}

bool nongeneric_theta(const ThetaVector& th) {
  return th.theta0 == cplx(0.0) && th.thetaX == cplx(0.0) && th.theta1 == cplx(0.0);
}

// x0,x1[,xInf]; a missing xInf solves the constraint
Triple read_triple(const std::vector<double>& v, cplx mu) {
  if (v.size() == 2 || v.size() == 4) {
    auto x = complexes(v, 2, "--triple");
    return Triple::from_x0_x1(x[0], x[1], mu);
  }
  auto x = complexes(v, 3, "--triple");
  return {x[0], x[1], x[2], mu};
}

// (sigma, a) at the chosen point, or the low-branch nu's from the triple
EllipticParams resolve_params(const JobConfig& c, const ThetaVector& th) {
  Point p = parse_point(c.point);
  if (c.nu) {
    auto v = complexes(*c.nu, 2, "--nu");
    return make_params(th, v[0], v[1], p);
  }
  if (c.sigmaA) {
    auto v = complexes(*c.sigmaA, 2, "--sigma-a");
    EllipticParams q = sigma_a_to_nu({v[0], v[1], p}, NuBranch::low, th);
    return make_params(th, q.nu1, q.nu2_eff(), p);
  }
  Connection con = nongeneric_connection(read_triple(*c.triple, th.thetaInf / 2.0));
  const PointData& d = p == Point::at0 ? con.at0 : p == Point::at1 ? con.at1 : con.atInf;
  return make_params(th, d.params.nu1, d.params.nu2_eff(), p);
}

CoveringPoint balanced(const EllipticParams& p, double r) {
  CoveringPoint best = CoveringPoint::from_log(cplx(std::log(r), 0.0), p.point);
  double bv = 1e300;
  for (int i = 0; i <= 720; ++i) {
    auto x = CoveringPoint::from_log(cplx(std::log(r), -pi + 2 * pi * i / 720.0), p.point);
    Monomials m = monomials(p, x);
    double v = std::max(std::abs(m.Y1), std::abs(m.Y2));
    if (v < bv) bv = v, best = x;
  }
  return best;
}

template <class F>
void parallel_for(size_t n, F f) {
  size_t w = std::max(1u, std::thread::hardware_concurrency());
  w = std::min(w, n);
  if (w <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(w);
  for (size_t k = 0; k < w; ++k)
    pool.emplace_back([&, k] {
      try {
        for (size_t i = k; i < n; i += w) f(i);
      } catch (...) {
        errs[k] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

// Tabular output: named columns, each row a list of doubles / bools (as 0/1)
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  json to_json() const {
    json r = json::array();
    for (const auto& row : rows) {
      json o = json::object();
      for (size_t i = 0; i < columns.size(); ++i) o[columns[i]] = row[i];
      r.push_back(o);
    }
    return r;
  }
  std::string to_csv() const {
    std::string s;
    for (size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
    s += "\n";
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format17(row[i]);
      s += "\n";
    }
    return s;
  }
};

struct PathGrid {
  std::vector<CoveringPoint> points;
  double V;
};

PathGrid make_grid(const JobConfig& c, const EllipticParams& p, double radius) {
  double from = c.from ? *c.from : radius / 2.0;
  if (!(from > c.to)) throw ConfigError("path: start modulus " + format17(from) + " must exceed --to");
  double V = c.pathV ? *c.pathV : p.nu2_eff().real();
  CoveringPoint a = c.anchorPhi ? CoveringPoint{std::log(from), *c.anchorPhi, p.point}
                    : p.kind == SeriesCase::picard ? CoveringPoint{std::log(from), 0.3, p.point}
                                                   : balanced(p, from);
  PathSpec ps{a, V, p};
  PathGrid g{{}, V};
  int n = c.samples;
  for (int i = 0; i < n; ++i) {
    double l = n == 1 ? std::log(from) : std::log(from) + i / double(n - 1) * (std::log(c.to) - std::log(from));
    g.points.push_back(path_point(ps, l));
  }
  return g;
}

// oracle integration along the grid from its first point; nullopt entries after a pole
std::vector<std::optional<cplx>> oracle_column(const ThetaVector& th, const std::vector<CoveringPoint>& pts,
                                               YValue start, double tol, std::string& note) {
  std::vector<std::optional<cplx>> col(pts.size());
  col[0] = start.y;
  if (pts.size() == 1) return col;
  std::vector<CoveringPoint> path(pts.begin() + 1, pts.end());
  try {
    Trajectory tr = integrate_pvi(th, {pts[0], start.y, start.dy}, path, tol);
    size_t j = 1;
    for (const auto& s : tr.samples)
      if (j < pts.size() && s.x.rho == pts[j].rho && s.x.phi == pts[j].phi && s.x.base == pts[j].base) col[j++] = s.y;
  } catch (const PoleEncountered& e) {
    note = e.what();
  }
  return col;
}

void add_cplx(std::vector<double>& row, cplx z) {
  row.push_back(z.real());
  row.push_back(z.imag());
}

json job_echo(const JobConfig& c, const ThetaVector& th) {
  json j = {{"command", c.command}, {"theta", theta_json(th)}, {"point", c.point}};
  if (c.nu) j["nu"] = *c.nu;
  if (c.sigmaA) j["sigma-a"] = *c.sigmaA;
  if (c.triple) j["triple"] = *c.triple;
  if (c.mu) j["mu"] = *c.mu;
  return j;
}

TableOptions table_options(const JobConfig& c) {
  TableOptions o;
  if (c.order) {
    o.maxDegree = *c.order;
    o.cap = std::max(o.cap, *c.order);
  }
  return o;
}

struct Output {
  json doc;
  std::optional<Table> table;  // csv view
  int code = ok;
};

Output cmd_eval(const JobConfig& c) {
  ThetaVector th = resolve_theta(c);
  EllipticParams p = resolve_params(c, th);
  SeriesTable t = cached_table(th, p, table_options(c));
  PathGrid g = make_grid(c, p, t.radius);
  size_t n = g.points.size();
  std::vector<YValue> ys(n);
  std::vector<bool> inside(n);
  parallel_for(n, [&](size_t i) {
    ys[i] = y_eval_full(g.points[i], p, t, false);
    inside[i] = domain_contains({t.radius, p}, g.points[i]);
  });
  Table tab{{"abs_t", "rho", "phi", "re_x", "im_x", "re_y", "im_y", "in_domain"}, {}};
  std::vector<std::optional<cplx>> orc;
  std::string note;
  if (c.verify) {
    orc = oracle_column(th, g.points, ys[0], c.tol, note);
    for (const char* k : {"re_y_oracle", "im_y_oracle", "rel_diff"}) tab.columns.push_back(k);
  }
  for (size_t i = 0; i < n; ++i) {
    const auto& x = g.points[i];
    std::vector<double> row{x.modulus(), x.rho, x.phi};
    add_cplx(row, x.x());
    add_cplx(row, ys[i].y);
    row.push_back(inside[i] ? 1.0 : 0.0);
    if (c.verify) {
      if (orc[i]) {
        add_cplx(row, *orc[i]);
        row.push_back(std::abs(*orc[i] - ys[i].y) / std::abs(ys[i].y));
      } else {
        for (int k = 0; k < 3; ++k) row.push_back(std::nan(""));
      }
    }
    tab.rows.push_back(row);
  }
  json doc = {{"job", job_echo(c, th)},
              {"params", params_json(p)},
              {"radius", t.radius},
              {"maxDegree", t.maxDegree},
              {"convergenceWarning", t.convergenceWarning},
              {"pathV", g.V},
              {"rows", tab.to_json()}};
  if (!note.empty()) doc["oracleNote"] = note;
  return {doc, tab};
}

json form_json(const AsymptoticForm& f) {
  json j = {{"kind", kind_name(f.kind)}, {"point", point_name(f.point)}, {"gap", f.gap}};
  if (f.kind == AsymptoticForm::Kind::powerLaw) {
    j["coefficient"] = cplx_json(f.coefficient);
    j["exponent"] = cplx_json(f.exponent);
  } else {
    j["lnCoeff"] = cplx_json(f.lnCoeff);
    j["shift"] = cplx_json(f.shift);
    j["f1Coeff"] = cplx_json(f.f1Coeff);
    json ph = json::array();
    for (cplx z : f.phase) ph.push_back(cplx_json(z));
    j["phase"] = ph;
    j["monoPrefactor"] = cplx_json(f.monoPrefactor);
    j["monoExp"] = cplx_json(f.monoExp);
  }
  return j;
}

Output cmd_behavior(const JobConfig& c) {
  ThetaVector th = resolve_theta(c);
  EllipticParams p = resolve_params(c, th);
  SeriesTable t = cached_table(th, p, table_options(c));
  PathGrid g = make_grid(c, p, t.radius);
  AsymptoticForm f = behavior(p, t, g.V);
  // errors relative to the leading power (y - 1 at x = 1)
  const cplx off = f.kind == AsymptoticForm::Kind::powerLaw && p.point == Point::at1 ? 1.0 : 0.0;
  size_t n = g.points.size();
  std::vector<std::vector<double>> rows(n);
  parallel_for(n, [&](size_t i) {
    const auto& x = g.points[i];
    cplx y = y_eval_full(x, p, t, false).y, ya = f.eval(x);
    std::vector<double> row{x.modulus(), x.rho, x.phi};
    add_cplx(row, y);
    add_cplx(row, ya);
    row.push_back(std::abs(y - ya) / std::abs(ya - off));
    rows[i] = row;
  });
  Table tab{{"abs_t", "rho", "phi", "re_y", "im_y", "re_y_asym", "im_y_asym", "rel_err"}, rows};
  json doc = {{"job", job_echo(c, th)},
              {"params", params_json(p)},
              {"pathV", g.V},
              {"form", form_json(f)},
              {"rows", tab.to_json()}};
  return {doc, tab};
}

Output cmd_picard(const JobConfig& c) {
  auto v = complexes(*c.nu, 2, "--nu");
  ThetaVector th = picard_theta();
  EllipticParams p = make_params(th, v[0], v[1], parse_point(c.point));
  PathGrid g = make_grid(c, p, 0.05);
  size_t n = g.points.size();
  std::vector<YValue> ys(n);
  parallel_for(n, [&](size_t i) {
    CoveringPoint x = g.points[i];
    ys[i] = picard_solution_full(v[0], v[1], CoveringPoint::from_x(x.x(), Point::at0));
  });
  Table tab{{"abs_t", "rho", "phi", "re_x", "im_x", "re_y", "im_y"}, {}};
  std::vector<std::optional<cplx>> orc;
  std::string note;
  if (c.verify) {
    orc = oracle_column(th, g.points, ys[0], c.tol, note);
    for (const char* k : {"re_y_oracle", "im_y_oracle", "rel_diff"}) tab.columns.push_back(k);
  }
  for (size_t i = 0; i < n; ++i) {
    const auto& x = g.points[i];
    std::vector<double> row{x.modulus(), x.rho, x.phi};
    add_cplx(row, x.x());
    add_cplx(row, ys[i].y);
    if (c.verify) {
      if (orc[i]) {
        add_cplx(row, *orc[i]);
        row.push_back(std::abs(*orc[i] - ys[i].y) / std::abs(ys[i].y));
      } else {
        for (int k = 0; k < 3; ++k) row.push_back(std::nan(""));
      }
    }
    tab.rows.push_back(row);
  }
  json doc = {{"job", job_echo(c, th)}, {"pathV", g.V}, {"rows", tab.to_json()}};
  if (p.point != Point::at0) doc["note"] = "closed form taken on the principal sheet of x";
  if (!note.empty()) doc["oracleNote"] = note;
  return {doc, tab};
}

json point_json(const SigmaA& sa, const EllipticParams& q) {
  return {{"sigma", cplx_json(sa.sigma)},
          {"a", cplx_json(sa.a)},
          {"nu1", cplx_json(q.nu1)},
          {"nu2", cplx_json(q.nu2_eff())},
          {"case", case_name(q.kind)}};
}

json ambiguity_notes() {
  return json::array({"sigma is canonical (0 <= Re sigma <= 1); -sigma + 2n and sigma + 2n give the same traces",
                      "nu1 is a principal value; nu1 + 2k gives the same transcendent",
                      "(nu1, nu2) and (-nu1, 2 - nu2) give the same transcendent",
                      "at x = 1 the local exponential is e^{-i pi nu1} (y = 1 - ytilde)"});
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Output connect_generic(const JobConfig& c, const ThetaVector& th, const EllipticParams& p) {
  SigmaA sa = nu_to_sigma_a(p);
  ThetaVector loc = local_theta(th, p.point);
  require_generic(sa.sigma, loc, "connect");
  cplx s = s_from_a(sa.sigma, loc, sa.a);
  MonodromyData dl = traces_from_params(sa.sigma, loc, s);
  // both transforms are involutions
  MonodromyData d0 = p.point == Point::at0 ? dl : p.point == Point::at1 ? transform_to_x1(dl) : transform_to_xinf(dl);
  json pts = json::object();
  for (Point q : {Point::at0, Point::at1, Point::atInf}) {
    SigmaA sq = sigma_a_from_data(d0, q);
    EllipticParams eq = sigma_a_to_nu(sq, NuBranch::low, th);
    pts[point_name(q)] = point_json(sq, make_params(th, eq.nu1, eq.nu2_eff(), q));
  }
  SigmaA back = sigma_a_from_data(d0, p.point);
  LaurentF lf = laurent_F(sa.sigma, loc);
  double sErr = rel(s_from_traces(dl, sa.sigma), s);
  double aErr = rel(back.a, sa.a), sgErr = rel(back.sigma, sa.sigma);
  const double tol = 1e-9;
  json cons = {{"sRoundTrip", sErr},
               {"sigmaRoundTrip", sgErr},
               {"aRoundTrip", aErr},
               {"laurentMismatch", lf.mismatch},
               {"tolerance", tol},
               {"ok", sErr < tol && aErr < tol && sgErr < tol && lf.mismatch < tol}};
  json doc = {{"job", job_echo(c, th)},
              {"mode", "generic"},
              {"input", {{"point", point_name(p.point)}, {"sigma", cplx_json(sa.sigma)}, {"a", cplx_json(sa.a)}, {"s", cplx_json(s)}}},
              {"monodromy", monodromy_json(d0)},
              {"points", pts},
              {"consistency", cons},
              {"notes", ambiguity_notes()}};
  return {doc, std::nullopt};
}

Output connect_nongeneric(const JobConfig& c, const ThetaVector& th) {
  cplx mu = th.thetaInf / 2.0;
  Triple t;
  if (c.triple) {
    t = read_triple(*c.triple, mu);
  } else {
    if (parse_point(c.point) != Point::at0)
      throw ConfigError("non-generic (sigma, a) or nu input is read at --point 0; use --triple otherwise");
    EllipticParams p = resolve_params(c, th);
    SigmaA sa = nu_to_sigma_a(p);
    t = triple_of(sa.sigma, sa.a, mu);
  }
  Connection con = nongeneric_connection(t);
  json pts = json::object();
  for (const PointData* d : {&con.at0, &con.at1, &con.atInf}) {
    json j = point_json({d->sigma, d->a, d->point}, d->params);
    j["limit"] = limit_name(d->limit);
    j["numericLimit"] = d->numericLimit;
    pts[point_name(d->point)] = j;
  }
  json notes = ambiguity_notes();
  if (std::abs(mu - 0.5) < 1e-12) {
    notes.push_back(
        "picard: the couples at 0, 1, infinity are (nu1, nu2), (nu2, nu1), (nu1, nu2 - nu1); the infinity couple "
        "is for continuation through Im x < 0, through Im x > 0 it is (nu1, nu2 + nu1)");
  }
  json doc = {{"job", job_echo(c, th)},
              {"mode", "nongeneric"},
              {"triple", triple_json(con.triple)},
              {"constraintResidual", std::abs(con.triple.constraint_residual())},
              {"monodromy",
               monodromy_json({th, 2.0 - t.x0 * t.x0, 2.0 - t.x1 * t.x1, 2.0 - t.xInf * t.xInf})},
              {"points", pts},
              {"notes", notes}};
  return {doc, std::nullopt};
}

Output cmd_connect(const JobConfig& c) {
  ThetaVector th = resolve_theta(c);
  if (c.triple || nongeneric_theta(th)) return connect_nongeneric(c, th);
  return connect_generic(c, th, resolve_params(c, th));
}

Output cmd_verify(const JobConfig& c) {
  auto res = run_acceptance(c.criteria);
  Table tab{{"id", "status"}, {}};
  json arr = json::array();
  bool failed = false;
  for (const auto& r : res) {
    arr.push_back({{"id", r.id}, {"name", r.name}, {"status", status_name(r.status)}, {"detail", r.detail},
                   {"limitSeconds", r.limitSeconds}});
    tab.rows.push_back({double(r.id), r.status == CriterionResult::Status::pass ? 1.0 : 0.0});
    failed = failed || r.status == CriterionResult::Status::fail;
  }
  return {{{"criteria", arr}, {"passed", !failed}}, tab, failed ? verifyFailed : ok};
}

void report_error(std::ostream& err, bool asJson, const std::string& kind, const std::string& msg, int code) {
  if (asJson)
    err << json{{"error", {{"type", kind}, {"message", msg}, {"exitCode", code}}}}.dump() << "\n";
  else
    err << "error (" << kind << "): " << msg << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  bool jsonErrors = std::find(args.begin(), args.end(), "--json-errors") != args.end();
  CLI::App app{"Painleve VI transcendents: evaluation, critical behaviour, connection problem"};
  app.require_subcommand(1);
  JobConfig c;
  std::string theta, abcd, nu, sigmaA, triple, mu, config, criteria;
  std::map<std::string, CLI::Option*> opts;
  std::vector<CLI::App*> subs;
  for (auto [name, help] : std::initializer_list<std::pair<const char*, const char*>>{
           {"eval", "y along a path"},
           {"behavior", "asymptotic form and its error along a path"},
           {"connect", "parameters at 0, 1 and infinity"},
           {"verify", "run the acceptance suite"},
           {"picard", "closed-form Picard solutions"}}) {
    CLI::App* s = app.add_subcommand(name, help);
    subs.push_back(s);
    auto o = [&](const char* flag, auto& var, const char* h) {
      CLI::Option* op = s->add_option(flag, var, h);
      opts[std::string(flag).substr(2) + "@" + name] = op;
      return op;
    };
    auto* th = o("--theta", theta, "theta0,thetaX,theta1,thetaInf (4 reals or 8 re,im values)");
    auto* ab = o("--abcd", abcd, "alpha,beta,gamma,delta (4 reals or 8 re,im values)");
    th->excludes(ab);
    auto* on = o("--nu", nu, "nu1,nu2 (re,im,re,im or two reals)");
    auto* os = o("--sigma-a", sigmaA, "sigma,a (re,im,re,im or two reals)");
    auto* ot = o("--triple", triple, "x0,x1,xInf (3 reals or 6 re,im values)");
    on->excludes(os)->excludes(ot);
    os->excludes(ot);
    o("--mu", mu, "mu (re or re,im); theta = (0, 0, 0, 2 mu)");
    o("--point", c.point, "0, 1 or inf")->check(CLI::IsMember({"0", "1", "inf"}));
    o("--path-V", c.pathV, "V of the path (default Re nu2)");
    o("--anchor-phi", c.anchorPhi, "arg of the path start (default: balanced)");
    o("--from", c.from, "start modulus of the local variable (default radius / 2)");
    o("--to", c.to, "end modulus");
    o("--samples", c.samples, "number of path points");
    o("--order", c.order, "series degree");
    o("--tol", c.tol, "integrator tolerance");
    o("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    o("--out", c.out, "output file (default stdout)");
    o("--criteria", criteria, "acceptance criteria to run, e.g. 1,3,8");
    o("--config", config, "JSON job file; its values win over flags");
    opts[std::string("verify@") + name] = s->add_flag("--verify", c.verify, "add an oracle column");
    s->add_flag("--json-errors", jsonErrors, "structured errors on stderr");
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    report_error(err, jsonErrors, "ConfigError", e.what(), configError);
    return configError;
  }
  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  try {
    if (!theta.empty()) c.theta = parse_numbers(theta, "--theta");
    if (!abcd.empty()) c.abcd = parse_numbers(abcd, "--abcd");
    if (!nu.empty()) c.nu = parse_numbers(nu, "--nu");
    if (!sigmaA.empty()) c.sigmaA = parse_numbers(sigmaA, "--sigma-a");
    if (!triple.empty()) c.triple = parse_numbers(triple, "--triple");
    if (!mu.empty()) c.mu = parse_numbers(mu, "--mu");
    if (!criteria.empty())
      for (double v : parse_numbers(criteria, "--criteria")) c.criteria.push_back(int(v));
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw ConfigError("config: cannot open " + config);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
      std::map<std::string, bool> onCli;
      for (auto& [k, op] : opts) {
        auto at = k.find('@');
        if (k.substr(at + 1) == c.command) onCli[k.substr(0, at)] = op->count() > 0;
      }
      merge_config(c, j, onCli, err);
      if (c.command != "eval" && c.command != "behavior" && c.command != "connect" && c.command != "verify" &&
          c.command != "picard")
        throw ConfigError("config: unknown command '" + c.command + "'");
    }
    validate(c);
    Output o = c.command == "eval"       ? cmd_eval(c)
               : c.command == "behavior" ? cmd_behavior(c)
               : c.command == "connect"  ? cmd_connect(c)
               : c.command == "picard"   ? cmd_picard(c)
                                         : cmd_verify(c);
    std::string text = c.format == "csv" && o.table ? o.table->to_csv() : dump17(o.doc);
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw ConfigError("cannot write " + c.out);
      f << text;
    }
    return o.code;
  } catch (const ConfigError& e) {
    report_error(err, jsonErrors, "ConfigError", e.what(), configError);
    return configError;
  } catch (const Error& e) {
    report_error(err, jsonErrors, e.kind(), e.what(), libraryError);
    return libraryError;
  }
}

}  // namespace pvi::cli
