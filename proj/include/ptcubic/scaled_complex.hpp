#pragma once

#include <cmath>
#include <stdexcept>

#include "ptcubic/types.hpp"

namespace ptcubic {

// Complex number held as mantissa * exp(exponent). The solution pair f+, f-
// carries exponents of order +-(sqrt(2)/5) x^{5/2}, which passes double range
// near |x| = 25 while every quantity of interest (kernel values, Wronskians,
// diagonal products) recombines to O(1). Only the representation needs the
// headroom, so the exponent is split off and tracked additively.
struct ScaledComplex {
  ComplexValue mantissa{0.0, 0.0};
  double exponent = 0.0;

  // Keeps |mantissa| near 1 so repeated products cannot drift out of range.
  ScaledComplex normalized() const {
    const double a = std::abs(mantissa);
    if (a == 0.0 || !std::isfinite(a)) return {mantissa, exponent};
    const double shift = std::log(a);
    return {mantissa * std::exp(-shift), exponent + shift};
  }

  double log_abs() const { return std::log(std::abs(mantissa)) + exponent; }

  // Collapses to a plain complex value. Underflow rounds to zero quietly;
  // overflow is a caller error and throws.
  ComplexValue value() const {
    if (std::abs(mantissa) == 0.0) return {0.0, 0.0};
    if (log_abs() > 700.0)
      throw std::overflow_error("ScaledComplex: value exceeds double range");
    return mantissa * std::exp(exponent);
  }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    return ScaledComplex{a.mantissa * b.mantissa, a.exponent + b.exponent}.normalized();
  }
  friend ScaledComplex operator*(const ScaledComplex& a, ComplexValue c) {
    return ScaledComplex{a.mantissa * c, a.exponent}.normalized();
  }
  friend ScaledComplex operator*(ComplexValue c, const ScaledComplex& a) { return a * c; }
};

inline ScaledComplex conj(const ScaledComplex& a) {
  return {std::conj(a.mantissa), a.exponent};
}

}
