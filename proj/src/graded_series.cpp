#include "pvi/graded_series.hpp"

namespace pvi {

GradedSeries::GradedSeries(int L, int maxGrade)
    : L_(L), G_(maxGrade), nmax_(L == 1 ? maxGrade / 2 : maxGrade),
      c_((nmax_ + 1) * (2 * maxGrade + 1), cplx(0.0)) {}

GradedSeries GradedSeries::from_x(int L, int G, const std::vector<cplx>& c) {
  GradedSeries s(L, G);
  for (int n = 0; n <= s.nmax_ && n < int(c.size()); ++n) s.set(n, 0, c[n]);
  return s;
}

GradedSeries GradedSeries::monomial(int L, int G, int n, int m, cplx c) {
  GradedSeries s(L, G);
  if (s.valid(n, m)) s.set(n, m, c);
  return s;
}

GradedSeries GradedSeries::operator+(const GradedSeries& o) const {
  GradedSeries r = *this;
  r += o;
  return r;
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

GradedSeries GradedSeries::operator-(const GradedSeries& o) const {
  GradedSeries r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

GradedSeries GradedSeries::operator*(cplx s) const {
  GradedSeries r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

GradedSeries GradedSeries::truncated(int g) const {
  GradedSeries r = *this;
  for (int n = 0; n <= nmax_; ++n)
    for (int m = -G_; m <= G_; ++m)
      if (grade(n, m) > g && grade(n, m) <= G_) r.c_[idx(n, m)] = 0.0;
  return r;
}

int GradedSeries::min_grade() const {
  int best = G_ + 1;
  for_each([&](int n, int m, cplx v) {
    if (v != cplx(0.0)) best = std::min(best, grade(n, m));
  });
  return best;
}

GradedSeries GradedSeries::mul(const GradedSeries& o, int g) const {
  if (g < 0 || g > G_) g = G_;
  struct Entry {
    int n, m, gr;
    cplx v;
  };
  auto collect = [g](const GradedSeries& s) {
    std::vector<Entry> e;
    s.for_each([&](int n, int m, cplx v) {
      if (v != cplx(0.0) && s.grade(n, m) <= g) e.push_back({n, m, s.grade(n, m), v});
    });
    return e;
  };
  auto ea = collect(*this), eb = collect(o);
  GradedSeries r(L_, G_);
  const double inv16L = L_ == 1 ? 1.0 / 16.0 : 1.0 / 256.0;
  for (const auto& a : ea)
    for (const auto& b : eb) {
      if (a.gr + b.gr > g) continue;
      int k = (a.m > 0 && b.m < 0) || (a.m < 0 && b.m > 0) ? std::min(std::abs(a.m), std::abs(b.m)) : 0;
      cplx v = a.v * b.v;
      for (int j = 0; j < k; ++j) v *= inv16L;
      r.c_[r.idx(a.n + b.n + L_ * k, a.m + b.m)] += v;
    }
  return r;
}

GradedSeries GradedSeries::exp_series(int g) const {
  if (g < 0 || g > G_) g = G_;
  cplx c0 = get(0, 0);
  GradedSeries rest = *this;
  rest.set(0, 0, 0.0);
  GradedSeries r = GradedSeries::monomial(L_, G_, 0, 0, 1.0);
  GradedSeries term = r;
  int mg = rest.min_grade();
  for (int k = 1; mg <= g && k * mg <= g; ++k) {
    term = term.mul(rest, g) * (1.0 / k);
    r += term;
  }
  return c0 == cplx(0.0) ? r : r * std::exp(c0);
}

}  // namespace pvi
