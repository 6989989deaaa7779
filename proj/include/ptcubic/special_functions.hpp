#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ptcubic/quadrature.hpp"
#include "ptcubic/scaled_complex.hpp"
#include "ptcubic/types.hpp"

// Self-contained special functions: Gamma, Riemann zeta, and modified Bessel
// I_nu / K_nu of fractional order for complex argument. Supported Bessel
// domain is the sector |arg z| <= pi/4 (what the x^3 oscillator needs; the
// solution pair lives on the rays arg z = +-pi/4) with |z| up to well past
// 10^3 through the scaled variants.

namespace ptcubic {

namespace detail {

// ln Gamma by the Bernoulli tail, trustworthy for x >= 12: the first omitted
// term is below 1e-16 relative there.
inline double log_gamma_asymptotic(double x) {
  constexpr double kBern[6] = {1.0 / 12.0,   -1.0 / 360.0, 1.0 / 1260.0,
                               -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double tail = 0.0;
  double p = inv;
  for (double c : kBern) {
    tail += c * p;
    p *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + tail;
}

inline double gamma_positive(double x) {
  double shift = 1.0;
  double y = x;
  while (y < 12.0) {
    shift *= y;
    y += 1.0;
  }
  return std::exp(log_gamma_asymptotic(y)) / shift;
}

// The I_{-nu} power series opens with 1/Gamma(1-nu) and walks through
// negative non-integer arguments for nu > 1; reflection covers those.
// Public gamma() stays restricted to x > 0, which is all the closed-form
// layer needs.
inline double gamma_signed(double x) {
  if (x > 0.0) return gamma_positive(x);
  return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_positive(1.0 - x));
}

}  // namespace detail

inline double gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma: requires x > 0");
  return detail::gamma_positive(x);
}

// Euler-Maclaurin with 20 explicit terms and 6 Bernoulli corrections; the
// first omitted correction is ~1e-19 at s = 6/5 and shrinks with s.
inline double riemann_zeta(double s) {
  if (!(s > 1.0)) throw std::domain_error("riemann_zeta: requires s > 1");
  constexpr int kN = 20;
  constexpr double kBernOverFact[6] = {1.0 / 12.0,      -1.0 / 720.0,
                                       1.0 / 30240.0,   -1.0 / 1209600.0,
                                       1.0 / 47900160.0, -691.0 / 1307674368000.0};
  double sum = 0.0;
  for (int n = 1; n < kN; ++n) sum += std::pow(n, -s);
  const double N = kN;
  sum += 0.5 * std::pow(N, -s) + std::pow(N, 1.0 - s) / (s - 1.0);
  double rising = s;  // (s)(s+1)...(s+2k-2) grows two factors per correction
  double npow = std::pow(N, -s - 1.0);
  for (int k = 0; k < 6; ++k) {
    sum += kBernOverFact[k] * rising * npow;
    rising *= (s + 2 * k + 1) * (s + 2 * k + 2);
    npow /= N * N;
  }
  return sum;
}

namespace detail {

// Ascending series sum_k (z/2)^{2k+nu} / (k! Gamma(k+nu+1)). Rounding is
// amplified by at most exp(|z| (1 - cos arg z)), i.e. ~3e-13 at the series
// ceiling |z| = 25 on the sector edge; no issue on the real axis.
inline ComplexValue bessel_i_series(double nu, ComplexValue z) {
  const ComplexValue q = 0.25 * z * z;
  ComplexValue term = std::pow(0.5 * z, nu) / gamma_signed(nu + 1.0);
  ComplexValue sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  throw std::runtime_error("bessel_i_series: did not converge");
}

// Both Poincare sums sum_k (+-1)^k a_k(nu)/z^k with
// a_k = a_{k-1} (4 nu^2 - (2k-1)^2)/(8k), truncated at the smallest term.
inline void bessel_asymptotic_sums(double nu, ComplexValue z, ComplexValue* alternating,
                                   ComplexValue* plain) {
  const double mu = 4.0 * nu * nu;
  const ComplexValue zinv = 1.0 / z;
  ComplexValue term{1.0, 0.0};
  ComplexValue s_alt{1.0, 0.0};
  ComplexValue s_pos{1.0, 0.0};
  double prev = 1.0;
  for (int k = 1; k <= 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k) * zinv;
    const double mag = std::abs(term);
    if (mag >= prev) break;  // divergent tail reached; earlier partial is optimal
    s_pos += term;
    s_alt += (k % 2 == 1) ? -term : term;
    if (mag <= 1e-18) break;
    prev = mag;
  }
  *alternating = s_alt;
  *plain = s_pos;
}

inline void require_right_half_plane(ComplexValue z, const char* who) {
  if (!(z.real() > 0.0))
    throw std::domain_error(std::string(who) +
                            ": supported sector is |arg z| <= pi/4 (Re z > 0)");
}

// I_nu(z) as mantissa * exp(+Re z) for |z| >= 25. Carries both
// exponentials: the reflected one is within a factor e^{-2 Re z} ~ 4e-16 of
// the lead on the sector edge, just enough to matter at the 1e-11 contract.
inline ScaledComplex bessel_i_asymptotic_scaled(double nu, ComplexValue z) {
  require_right_half_plane(z, "bessel_i");
  ComplexValue s_alt, s_pos;
  bessel_asymptotic_sums(nu, z, &s_alt, &s_pos);
  const ComplexValue pref = 1.0 / std::sqrt(2.0 * std::numbers::pi * z);
  const double sign = z.imag() >= 0.0 ? 1.0 : -1.0;
  ComplexValue m = std::polar(1.0, z.imag()) * s_alt;
  if (2.0 * z.real() < 700.0) {
    const ComplexValue reflected =
        std::exp(ComplexValue(-2.0 * z.real(),
                              sign * std::numbers::pi * (nu + 0.5) - z.imag()));
    m += reflected * s_pos;
  }
  // Keep the exponent at exactly Re z. Folding log|mantissa| into it
  // (normalizing) quantizes away the algebraic prefactor once Re z outgrows
  // the exponent's ulp, and I*K products then lose their exact cancellation.
  return ScaledComplex{pref * m, z.real()};
}

// K_nu(z) as mantissa * exp(-Re z) for |z| >= 25.
inline ScaledComplex bessel_k_asymptotic_scaled(double nu, ComplexValue z) {
  require_right_half_plane(z, "bessel_k");
  ComplexValue s_alt, s_pos;
  bessel_asymptotic_sums(nu, z, &s_alt, &s_pos);
  const ComplexValue pref = std::sqrt(0.5 * std::numbers::pi / z);
  return ScaledComplex{pref * std::polar(1.0, -z.imag()) * s_pos, -z.real()};
}

// K_nu(z) as mantissa * exp(-Re z) on 4 < |z| < 25 from the real-line integral
// K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt (Re z > 0). The reflection
// formula loses exp(|z| + Re z) digits to cancellation out here, hence the
// quadrature route; the integrand is smooth and the truncation point keeps
// the dropped tail below 1e-18 of the result.
inline ScaledComplex bessel_k_integral_scaled(double nu, ComplexValue z) {
  require_right_half_plane(z, "bessel_k");
  const double T = std::acosh(1.0 + 46.0 / z.real()) + 0.5;
  auto integrand = [nu, z](double t) -> ComplexValue {
    const ComplexValue arg = -z * (std::cosh(t) - 1.0);
    return std::exp(arg) * std::cosh(nu * t);
  };
  QuadratureOptions opt;
  opt.panel_abs_tol = 1e-15;
  const auto q = integrate_adaptive(integrand, 0.0, T, opt);
  return ScaledComplex{q.value * std::polar(1.0, -z.imag()), -z.real()};
}

inline constexpr double kBesselCrossover = 25.0;

inline bool is_integer(double nu) { return nu == std::floor(nu); }

}  // namespace detail

// Scaled evaluations: value = mantissa * exp(exponent). These stay finite for
// arguments far beyond exp-range and let kernel products cancel exponents
// exactly.
inline ScaledComplex bessel_i_scaled(double nu, ComplexValue z) {
  if (z == ComplexValue{}) {
    if (nu == 0.0) return {ComplexValue{1.0, 0.0}, 0.0};
    if (nu > 0.0) return {ComplexValue{0.0, 0.0}, 0.0};
    throw std::domain_error("bessel_i: pole at z = 0 for nu < 0");
  }
  if (std::abs(z) <= detail::kBesselCrossover)
    return ScaledComplex{detail::bessel_i_series(nu, z), 0.0}.normalized();
  return detail::bessel_i_asymptotic_scaled(nu, z);
}

inline ScaledComplex bessel_k_scaled(double nu, ComplexValue z) {
  if (detail::is_integer(nu))
    throw std::domain_error("bessel_k: integer order not supported");
  if (z == ComplexValue{}) throw std::domain_error("bessel_k: singular at z = 0");
  const double az = std::abs(z);
  if (az <= 4.0) {
    // Reflection is safe here: cancellation costs at most ~exp(|z| + Re z).
    const ComplexValue k = std::numbers::pi *
                           (detail::bessel_i_series(-nu, z) - detail::bessel_i_series(nu, z)) /
                           (2.0 * std::sin(nu * std::numbers::pi));
    return ScaledComplex{k, 0.0}.normalized();
  }
  if (az < detail::kBesselCrossover) return detail::bessel_k_integral_scaled(nu, z);
  return detail::bessel_k_asymptotic_scaled(nu, z);
}

inline ComplexValue bessel_i(double nu, ComplexValue z) {
  if (z == ComplexValue{}) {
    if (nu == 0.0) return {1.0, 0.0};
    if (nu > 0.0) return {0.0, 0.0};
    throw std::domain_error("bessel_i: pole at z = 0 for nu < 0");
  }
  return bessel_i_scaled(nu, z).value();  // value() raises the overflow signal
}

inline ComplexValue bessel_k(double nu, ComplexValue z) {
  return bessel_k_scaled(nu, z).value();
}

}
