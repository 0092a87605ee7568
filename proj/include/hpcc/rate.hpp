#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace hpcc {

using Rational = boost::rational<std::int64_t>;

/// An achievable (memory, rate) pair in file units, with where it came from.
struct RatePoint {
  Rational M;
  Rational R;
  std::string scheme;
  std::string param;
};

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

/// "40/3", or "21" for integers.
inline std::string format_fraction(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Fixed-point decimal rendering with `places` digits, rounded half away
/// from zero, computed exactly from the fraction.
std::string format_decimal(const Rational& r, int places);

}  // namespace hpcc
