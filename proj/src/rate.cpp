#include "hpcc/rate.hpp"

#include <cstdlib>

namespace hpcc {

std::string format_decimal(const Rational& r, int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = r < 0;
  const Rational a = negative ? -r : r;
  // round(a * scale), half away from zero
  const Rational scaled = a * scale;
  std::int64_t q = scaled.numerator() / scaled.denominator();
  const std::int64_t rem = scaled.numerator() % scaled.denominator();
  if (2 * rem >= scaled.denominator()) ++q;
  std::string digits = std::to_string(q / scale);
  if (places > 0) {
    std::string frac = std::to_string(q % scale);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    digits += "." + frac;
  }
  return (negative && q != 0 ? "-" : "") + digits;
}

}  // namespace hpcc
