#pragma once

#include <complex>
#include <random>

#include "pvi/common.hpp"

namespace testutil {

using pvi::cplx;

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline cplx rand_c(std::mt19937& g, double lo, double hi, double ilo, double ihi) {
  std::uniform_real_distribution<double> r(lo, hi), i(ilo, ihi);
  return {r(g), i(g)};
}

}  // namespace testutil
