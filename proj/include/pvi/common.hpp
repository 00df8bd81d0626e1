#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace pvi {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// Which local variable a covering point refers to: x, 1-x or 1/x.
enum class Point { at0, at1, atInf };

const char* point_name(Point p);
Point point_from_name(const std::string& s);

class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define PVI_ERROR(Name)                                              \
  class Name : public Error {                                        \
  public:                                                            \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}     \
  };

PVI_ERROR(PoleError)
PVI_ERROR(DomainError)
PVI_ERROR(StripError)
PVI_ERROR(LatticePoleError)
PVI_ERROR(CaseError)
PVI_ERROR(ResonanceError)
PVI_ERROR(SingularArgumentError)
PVI_ERROR(RangeError)
PVI_ERROR(GuardError)
PVI_ERROR(GammaPoleError)
PVI_ERROR(DegenerateError)
PVI_ERROR(ConsistencyError)
PVI_ERROR(ZeroSigmaError)
PVI_ERROR(DenominatorError)
PVI_ERROR(AdmissibilityError)
PVI_ERROR(PoleEncountered)
PVI_ERROR(StepUnderflow)
PVI_ERROR(FitDegenerate)

#undef PVI_ERROR

// A point on the universal cover, stored as (ln|t|, arg t) for the local
// variable t named by base.
struct CoveringPoint {
  double rho = 0.0;
  double phi = 0.0;
  Point base = Point::at0;

  static CoveringPoint from_log(cplx logt, Point base = Point::at0) {
    return {logt.real(), logt.imag(), base};
  }
  // principal argument shifted by 2*pi*sheet
  static CoveringPoint from_complex(cplx t, Point base = Point::at0, int sheet = 0) {
    return {std::log(std::abs(t)), std::arg(t) + 2.0 * pi * sheet, base};
  }
  // local variable attached to x (base at0 means t = x)
  static CoveringPoint from_x(cplx x, Point base, int sheet = 0);

  cplx log() const { return {rho, phi}; }
  cplx local() const { return std::polar(std::exp(rho), phi); }
  double modulus() const { return std::exp(rho); }
  cplx power(cplx c) const { return std::exp(c * log()); }
  // the original variable x
  cplx x() const;
};

}  // namespace pvi
