#include "pvi/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace pvi {

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) throw DomainError("json: complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json theta_json(const ThetaVector& th) {
  return json::array({cplx_json(th.theta0), cplx_json(th.thetaX), cplx_json(th.theta1), cplx_json(th.thetaInf)});
}

ThetaVector theta_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw DomainError("json: theta must have 4 entries");
  return {cplx_from_json(j[0]), cplx_from_json(j[1]), cplx_from_json(j[2]), cplx_from_json(j[3])};
}

json params_json(const EllipticParams& p) {
  return {{"nu1", cplx_json(p.nu1)},
          {"nu2", cplx_json(p.nu2)},
          {"point", point_name(p.point)},
          {"branchN", p.branchN},
          {"case", case_name(p.kind)}};
}

EllipticParams params_from_json(const json& j) {
  EllipticParams p;
  p.nu1 = cplx_from_json(j.at("nu1"));
  p.nu2 = cplx_from_json(j.at("nu2"));
  p.point = point_from_name(j.at("point").get<std::string>());
  p.branchN = j.at("branchN").get<int>();
  p.kind = case_from_name(j.at("case").get<std::string>());
  return p;
}

json table_json(const SeriesTable& t) {
  json rows = json::array();
  t.coeffs.for_each([&](int n, int m, cplx c) {
    if (c == cplx(0.0)) return;
    const char* kind = m == 0 ? "a" : m < 0 ? "b" : "c";
    rows.push_back(json::array({n, std::abs(m), kind, c.real(), c.imag()}));
  });
  return {{"params", params_json(t.params)},
          {"theta", theta_json(t.theta)},
          {"maxDegree", t.maxDegree},
          {"radius", t.radius},
          {"convergenceWarning", t.convergenceWarning},
          {"coefficients", rows}};
}

SeriesTable table_from_json(const json& j) {
  SeriesTable t;
  t.params = params_from_json(j.at("params"));
  t.theta = theta_from_json(j.at("theta"));
  t.maxDegree = j.at("maxDegree").get<int>();
  t.radius = j.at("radius").get<double>();
  t.convergenceWarning = j.value("convergenceWarning", false);
  t.shape = case_shape(t.params);
  t.coeffs = GradedSeries(t.params.kind == SeriesCase::picard ? 1 : t.shape.L, t.maxDegree);
  for (const auto& r : j.at("coefficients")) {
    int n = r.at(0).get<int>(), m = r.at(1).get<int>();
    std::string kind = r.at(2).get<std::string>();
    int sm = kind == "a" ? 0 : kind == "b" ? -m : m;
    if ((kind == "a") != (m == 0) || !t.coeffs.valid(n, sm))
      throw DomainError("json: coefficient row (" + std::to_string(n) + ", " + std::to_string(m) + ", " + kind +
                        ") outside the table");
    t.coeffs.set(n, sm, {r.at(3).get<double>(), r.at(4).get<double>()});
  }
  return t;
}

json monodromy_json(const MonodromyData& d) {
  return {{"theta", theta_json(d.theta)},
          {"traces", json::array({cplx_json(d.T0), cplx_json(d.T1), cplx_json(d.TInf)})}};
}

MonodromyData monodromy_from_json(const json& j) {
  MonodromyData d;
  d.theta = theta_from_json(j.at("theta"));
  const json& t = j.at("traces");
  if (!t.is_array() || t.size() != 3) throw DomainError("json: traces must have 3 entries");
  d.T0 = cplx_from_json(t[0]);
  d.T1 = cplx_from_json(t[1]);
  d.TInf = cplx_from_json(t[2]);
  return d;
}

json triple_json(const Triple& t) {
  return {{"x0", cplx_json(t.x0)}, {"x1", cplx_json(t.x1)}, {"xInf", cplx_json(t.xInf)}, {"mu", cplx_json(t.mu)}};
}

Triple triple_from_json(const json& j) {
  return {cplx_from_json(j.at("x0")), cplx_from_json(j.at("x1")), cplx_from_json(j.at("xInf")),
          cplx_from_json(j.at("mu"))};
}

std::string format17(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // keep it a JSON float
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

void dump_rec(const json& j, std::ostringstream& os, int indent) {
  std::string pad(indent + 2, ' '), end(indent, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      // nlohmann objects iterate in key order
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        dump_rec(it.value(), os, indent + 2);
      }
      os << "\n" << end << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << "[";
        for (size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          dump_rec(j[k], os, indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << pad;
        dump_rec(j[k], os, indent + 2);
      }
      os << "\n" << end << "]";
      return;
    }
    case json::value_t::number_float: os << format17(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace

std::string dump17(const json& j) {
  std::ostringstream os;
  dump_rec(j, os, 0);
  os << "\n";
  return os.str();
}

SeriesTable cached_table(const ThetaVector& theta, const EllipticParams& params, TableOptions opt) {
  const char* dir = std::getenv("PVI_CACHE_DIR");
  if (!dir || !*dir) return build_table(theta, params, opt);
  json key = {{"theta", theta_json(theta)},
              {"params", params_json(params)},
              {"maxDegree", opt.maxDegree},
              {"cap", opt.cap},
              {"target", opt.target},
              {"adaptive", opt.adaptive}};
  std::string ks = dump17(key);
  std::ostringstream name;
  name << "table-" << std::hex << std::hash<std::string>{}(ks) << ".json";
  std::filesystem::path path = std::filesystem::path(dir) / name.str();
  if (std::ifstream in{path}) {
    try {
      json doc = json::parse(in);
      if (dump17(doc.at("key")) == ks) return table_from_json(doc.at("table"));
    } catch (const std::exception&) {
      // unreadable entry: rebuild below
    }
  }
  SeriesTable t = build_table(theta, params, opt);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out{tmp};
    if (!out) return t;
    out << dump17({{"key", key}, {"table", table_json(t)}});
  }
  std::filesystem::rename(tmp, path, ec);
  return t;
}

}  // namespace pvi
