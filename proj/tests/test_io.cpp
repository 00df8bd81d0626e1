#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "helpers.hpp"
#include "pvi/io.hpp"

using namespace pvi;

namespace {
const ThetaVector TH{0.3, 0.4, 0.5, 1.7};
}

TEST_CASE("series table json round trip") {
  auto p = make_params(TH, cplx(0.2, 0.1), cplx(0.5, 0.3));
  auto t = build_table(TH, p);
  json j = table_json(t);
  CHECK(j.at("coefficients").size() > 10);
  for (const auto& r : j.at("coefficients")) {
    CHECK(r.size() == 5);
    CHECK(r[1].get<int>() >= 0);
  }
  auto back = table_from_json(json::parse(dump17(j)));
  CHECK(back.maxDegree == t.maxDegree);
  CHECK(back.radius == t.radius);
  int diff = 0;
  t.coeffs.for_each([&](int n, int m, cplx c) { diff += back.coeffs.get(n, m) != c; });
  CHECK(diff == 0);
  auto X = CoveringPoint::from_log(cplx(std::log(0.01), 0.3));
  CHECK(y_eval(X, p, back) == y_eval(X, p, t));
  json bad = j;
  bad["coefficients"].push_back(json::array({0, 0, "c", 1.0, 0.0}));
  CHECK_THROWS_AS(table_from_json(bad), DomainError);
}

TEST_CASE("monodromy and triple json") {
  MonodromyData d{TH, cplx(0.1, 0.2), cplx(-1.0, 0.5), cplx(0.3, -0.7)};
  auto j = monodromy_json(d);
  CHECK(j.at("theta").size() == 4);
  CHECK(j.at("traces").size() == 3);
  auto e = monodromy_from_json(json::parse(dump17(j)));
  CHECK(e.T0 == d.T0);
  CHECK(e.T1 == d.T1);
  CHECK(e.TInf == d.TInf);
  CHECK(e.theta.thetaInf == d.theta.thetaInf);
  Triple t{0.1, cplx(0.2, 0.3), cplx(-0.4, 0.1), 0.3};
  auto u = triple_from_json(json::parse(dump17(triple_json(t))));
  CHECK(u.x1 == t.x1);
  CHECK(u.mu == t.mu);
  CHECK_THROWS_AS(theta_from_json(json::array({1.0, 2.0})), DomainError);
}

TEST_CASE("deterministic dump") {
  json j = {{"zeta", 0.1}, {"alpha", json::array({1.0, 2})}, {"mid", {{"b", true}, {"a", "s"}}}};
  std::string s = dump17(j);
  CHECK(s == dump17(json::parse(s)));
  CHECK(s.find("\"alpha\"") < s.find("\"mid\""));
  CHECK(s.find("\"mid\"") < s.find("\"zeta\""));
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(format17(1.0) == "1.0");
  CHECK(format17(-2.5e-300) == "-2.5e-300");
  CHECK(format17(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("table cache") {
  auto dir = std::filesystem::temp_directory_path() / "pvi_cache_test";
  std::filesystem::remove_all(dir);
  setenv("PVI_CACHE_DIR", dir.c_str(), 1);
  auto p = make_params(TH, cplx(0.2, 0.1), cplx(0.5, 0.3));
  auto a = cached_table(TH, p);
  int files = 0;
  for (auto& e : std::filesystem::directory_iterator(dir)) files += e.path().extension() == ".json";
  CHECK(files == 1);
  auto b = cached_table(TH, p);
  int diff = 0;
  a.coeffs.for_each([&](int n, int m, cplx c) { diff += b.coeffs.get(n, m) != c; });
  CHECK(diff == 0);
  unsetenv("PVI_CACHE_DIR");
  std::filesystem::remove_all(dir);
}
