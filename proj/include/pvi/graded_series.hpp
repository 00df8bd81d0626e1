#pragma once

#include <vector>

#include "pvi/common.hpp"

namespace pvi {

// Truncated series in x and one of two monomials Y1, Y2 with Y1*Y2 = (x/16)^L.
// Entry (n, m): m > 0 stands for x^n Y2^m, m < 0 for x^n Y1^|m|, m = 0 for x^n.
// Grade is 2n+|m| for L = 1 and n+|m| for L = 2.
class GradedSeries {
public:
  GradedSeries() = default;
  GradedSeries(int L, int maxGrade);

  int L() const { return L_; }
  int maxGrade() const { return G_; }
  int nmax() const { return nmax_; }
  int grade(int n, int m) const { return (L_ == 1 ? 2 * n : n) + std::abs(m); }
  bool valid(int n, int m) const { return n >= 0 && n <= nmax_ && std::abs(m) <= G_ && grade(n, m) <= G_; }

  cplx get(int n, int m) const { return valid(n, m) ? c_[idx(n, m)] : cplx(0.0); }
  void set(int n, int m, cplx v) { c_[idx(n, m)] = v; }
  void add(int n, int m, cplx v) { c_[idx(n, m)] += v; }

  // x-only series from coefficients c[n]
  static GradedSeries from_x(int L, int G, const std::vector<cplx>& c);
  static GradedSeries monomial(int L, int G, int n, int m, cplx c = 1.0);

  GradedSeries operator+(const GradedSeries& o) const;
  GradedSeries operator-(const GradedSeries& o) const;
  GradedSeries operator*(cplx s) const;
  GradedSeries& operator+=(const GradedSeries& o);
  // product truncated at grade g (default: own maximum)
  GradedSeries mul(const GradedSeries& o, int g = -1) const;
  GradedSeries operator*(const GradedSeries& o) const { return mul(o); }
  // exp of a series with zero constant term, truncated at grade g
  GradedSeries exp_series(int g = -1) const;
  GradedSeries truncated(int g) const;
  int min_grade() const;  // lowest grade with a nonzero entry (G+1 if zero)

  template <class F>
  void for_each(F f) const {
    for (int n = 0; n <= nmax_; ++n)
      for (int m = -G_; m <= G_; ++m)
        if (grade(n, m) <= G_) f(n, m, c_[idx(n, m)]);
  }

private:
  int idx(int n, int m) const { return n * (2 * G_ + 1) + (m + G_); }
  int L_ = 1, G_ = 0, nmax_ = 0;
  std::vector<cplx> c_;
};

}  // namespace pvi
