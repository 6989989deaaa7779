#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ptcubic/special_functions.hpp"

// Exact and quasi-classical closed forms for the oscillator
// H = -d^2/dx^2 + i x^3: the spectral zeta value Z(1) = sum_j 1/E_j, the
// Wronskian of the decaying solution pair at the origin, and the WKB
// eigenvalue scale.

namespace ptcubic {

// Z(1) = Gamma(1/5)^2 (3 - 2 cos(pi/5)) / (5^{6/5} Gamma(3/5)).
inline double zeta1_exact() {
  const double g15 = gamma(0.2);
  return g15 * g15 * (3.0 - 2.0 * std::cos(std::numbers::pi / 5.0)) /
         (std::pow(5.0, 1.2) * gamma(0.6));
}

// W = f+' f- - f- ' f+ evaluated on the decaying pair: -5 pi / (4 sin(pi/10)).
inline double wronskian0() {
  return -5.0 * std::numbers::pi / (4.0 * std::sin(std::numbers::pi / 10.0));
}

// Quantization constant C = 5 sqrt(pi/3) Gamma(5/6) / Gamma(1/3); the j-th
// quasi-classical level is (C (j + 1/2))^{6/5}.
inline double wkb_constant() {
  return 5.0 * std::sqrt(std::numbers::pi / 3.0) * gamma(5.0 / 6.0) / gamma(1.0 / 3.0);
}

inline double wkb_energy(int j) {
  if (j < 0) throw std::domain_error("wkb_energy: requires j >= 0");
  return std::pow(wkb_constant() * (j + 0.5), 1.2);
}

// Options for quasi-classical tabulations (how many levels to expand
// explicitly before closing the tail analytically).
struct WkbConfig {
  int n_max = 1;

  void check() const {
    if (n_max < 1) throw std::domain_error("WkbConfig: n_max must be >= 1");
  }
};

// Sum of all inverse quasi-classical levels,
// C^{-6/5} (2^{6/5} - 1) zeta(6/5). The defining sum sum_j E_j^{-1} fixes the
// exponent of the prefactor at -6/5; the half-odd-integer zeta sum collapses
// to (2^s - 1) zeta(s) with s = 6/5.
inline double wkb_zeta1() {
  return std::pow(wkb_constant(), -1.2) * (std::pow(2.0, 1.2) - 1.0) * riemann_zeta(1.2);
}

}
