#include "pvi/common.hpp"

namespace pvi {

const char* point_name(Point p) {
  switch (p) {
    case Point::at0: return "0";
    case Point::at1: return "1";
    case Point::atInf: return "inf";
  }
  return "?";
}

Point point_from_name(const std::string& s) {
  if (s == "0") return Point::at0;
  if (s == "1") return Point::at1;
  if (s == "inf" || s == "infinity") return Point::atInf;
  throw DomainError("unknown critical point '" + s + "'");
}

CoveringPoint CoveringPoint::from_x(cplx x, Point base, int sheet) {
  switch (base) {
    case Point::at0: return from_complex(x, base, sheet);
    case Point::at1: return from_complex(1.0 - x, base, sheet);
    case Point::atInf: return from_complex(1.0 / x, base, sheet);
  }
  return {};
}

cplx CoveringPoint::x() const {
  cplx t = local();
  switch (base) {
    case Point::at0: return t;
    case Point::at1: return 1.0 - t;
    case Point::atInf: return 1.0 / t;
  }
  return t;
}

}  // namespace pvi
