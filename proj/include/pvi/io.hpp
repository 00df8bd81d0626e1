#pragma once

#include <json.hpp>
#include <string>

#include "pvi/elliptic_core.hpp"
#include "pvi/monodromy.hpp"
#include "pvi/nongeneric.hpp"

namespace pvi {

using json = nlohmann::json;

json cplx_json(cplx z);  // [re, im]
cplx cplx_from_json(const json& j);

json theta_json(const ThetaVector& th);
ThetaVector theta_from_json(const json& j);

json params_json(const EllipticParams& p);
EllipticParams params_from_json(const json& j);

// {params, theta, maxDegree, radius, convergenceWarning, coefficients: [[n, m, kind, re, im]]}
// with kind "a" (m = 0), "b" (x^n Y1^m) or "c" (x^n Y2^m) and m >= 0
json table_json(const SeriesTable& t);
SeriesTable table_from_json(const json& j);

// {theta: [4 x [re, im]], traces: [T0, T1, TInf] as [re, im]}
json monodromy_json(const MonodromyData& d);
MonodromyData monodromy_from_json(const json& j);

json triple_json(const Triple& t);
Triple triple_from_json(const json& j);

// Sorted keys, doubles with 17 significant digits, two-space indent.
std::string dump17(const json& j);
std::string format17(double v);

// build_table through the PVI_CACHE_DIR cache when the variable is set
SeriesTable cached_table(const ThetaVector& theta, const EllipticParams& params, TableOptions opt = {});

}  // namespace pvi
