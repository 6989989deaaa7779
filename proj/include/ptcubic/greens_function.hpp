#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ptcubic/closed_forms.hpp"
#include "ptcubic/quadrature.hpp"
#include "ptcubic/scaled_complex.hpp"
#include "ptcubic/special_functions.hpp"

// The solution pair f+/f- of f'' = i x^3 f that decays at +/- infinity, the
// kernel G0(x,y) built from it, and the rotated-contour quadrature for the
// inverse-eigenvalue sum.

namespace ptcubic {

struct GreensSample {
  double x;
  double y;
  ComplexValue value;  // symmetric under swapping x and y
};

// Leading McLaurin data of f+ at the origin. Both Bessel branch formulas are
// singular representations of an entire function there, so x = 0 gets the
// series value directly.
inline ComplexValue mclaurin_f0() {
  return std::numbers::pi * std::pow(5.0, 0.2) /
         (2.0 * std::sin(std::numbers::pi / 5.0) * gamma(0.8)) *
         std::polar(1.0, -std::numbers::pi / 20.0);
}

inline ComplexValue mclaurin_f0_prime() {
  return -std::numbers::pi * std::pow(5.0, -0.2) /
         (2.0 * std::sin(std::numbers::pi / 5.0) * gamma(1.2)) *
         std::polar(1.0, std::numbers::pi / 20.0);
}

// f+ in scaled form. The x > 0 branch is sqrt(x) K_{1/5}(w) with
// w = (2/5) e^{i pi/4} x^{5/2}; the x < 0 branch combines I_{-1/5} and
// I_{+1/5} at the reflected argument with e^{-+ i pi/10} phases.
inline ScaledComplex f_plus_scaled(double x) {
  using std::numbers::pi;
  const double sin5 = std::sin(pi / 5.0);
  if (x > 0.0) {
    const ComplexValue w = std::polar(0.4 * std::pow(x, 2.5), pi / 4.0);
    const ScaledComplex k = bessel_k_scaled(0.2, w);
    return k * ComplexValue{std::sqrt(x), 0.0};
  }
  if (x < 0.0) {
    const double ax = -x;
    const ComplexValue w = std::polar(0.4 * std::pow(ax, 2.5), -pi / 4.0);
    const ScaledComplex im = bessel_i_scaled(-0.2, w);
    const ScaledComplex ip = bessel_i_scaled(0.2, w);
    const double e0 = std::max(im.exponent, ip.exponent);
    const ComplexValue combined =
        std::polar(1.0, -pi / 10.0) * im.mantissa * std::exp(im.exponent - e0) +
        std::polar(1.0, pi / 10.0) * ip.mantissa * std::exp(ip.exponent - e0);
    const double pref = pi * std::sqrt(ax) / (2.0 * sin5);
    return ScaledComplex{pref * combined, e0}.normalized();
  }
  return {mclaurin_f0(), 0.0};
}

inline ScaledComplex f_minus_scaled(double x) { return conj(f_plus_scaled(-x)); }

inline ComplexValue f_plus(double x) { return f_plus_scaled(x).value(); }

// PT partner: exactly conj(f_plus(-x)).
inline ComplexValue f_minus(double x) { return std::conj(f_plus(-x)); }

// G0(x,y) = f+(max) f-(min) / W. The factor exponents are +-(sqrt2/5)|x|^{5/2}
// individually but their sum is always <= 0, so the collapsed value is finite
// for any real pair.
inline GreensSample greens0(double x, double y) {
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  const ScaledComplex prod = f_plus_scaled(hi) * f_minus_scaled(lo);
  return {x, y, prod.value() / wronskian0()};
}

// Large-|X| remainder of -int G0(x,x) dx outside [-X, X]; from the diagonal
// asymptote G0(x,x) -> -e^{-i pi/4} / (2 x^{3/2}).
inline double trace_tail_estimate(double cutoff) {
  if (!(cutoff > 0.0)) throw std::domain_error("trace_tail_estimate: cutoff > 0");
  return std::sqrt(2.0 / cutoff);
}

// Integrand of the rotated-contour representation of Z(1):
// (2/5)^{6/5} t^{-1/5} K_{1/5}(t) [I_{-1/5}(t) + (cos(3pi/10)/cos(pi/10)) I_{1/5}(t)].
// Built from scaled factors so the algebraic I*K tail survives arbitrarily
// large t.
inline double trace_integrand(double t) {
  if (!(t > 0.0)) throw std::domain_error("trace_integrand: t > 0");
  static const double ratio =
      std::cos(3.0 * std::numbers::pi / 10.0) / std::cos(std::numbers::pi / 10.0);
  static const double pref = std::pow(0.4, 1.2);
  const ScaledComplex k = bessel_k_scaled(0.2, t);
  const ScaledComplex im = bessel_i_scaled(-0.2, t);
  const ScaledComplex ip = bessel_i_scaled(0.2, t);
  const double e0 = std::max(im.exponent, ip.exponent);
  const ComplexValue comb = im.mantissa * std::exp(im.exponent - e0) +
                            ratio * ip.mantissa * std::exp(ip.exponent - e0);
  const ScaledComplex prod = k * ScaledComplex{comb, e0};
  return pref * std::pow(t, -0.2) * prod.value().real();
}

// Z(1) as the quadrature of trace_integrand over (0, inf). Substitutions:
// t = w^{5/2} on (0,1] absorbs the t^{-3/5} endpoint exactly, t = v^{-5}
// compactifies the algebraic t^{-6/5} tail beyond t = 10.
inline double trace_quadrature() {
  QuadratureOptions opt;  // 1e-9 per panel
  auto head = [](double w) { return 2.5 * std::pow(w, 1.5) * trace_integrand(std::pow(w, 2.5)); };
  auto mid = [](double t) { return trace_integrand(t); };
  auto tail = [](double v) { return 5.0 * std::pow(v, -6.0) * trace_integrand(std::pow(v, -5.0)); };
  const double v_hi = std::pow(10.0, -0.2);
  const auto q1 = integrate_adaptive(head, 0.0, 1.0, opt);
  const auto q2 = integrate_adaptive(mid, 1.0, 10.0, opt);
  const auto q3 = integrate_adaptive(tail, 0.0, v_hi, opt);
  return q1.value + q2.value + q3.value;
}

namespace detail {

inline double loglog_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
  const double n = static_cast<double>(logx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < logx.size(); ++i) {
    sx += logx[i];
    sy += logy[i];
    sxx += logx[i] * logx[i];
    sxy += logx[i] * logy[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

// Least-squares slope of log|f+ f-| against log|x|; the diagonal product
// decays algebraically with exponent -3/2.
inline double diagonal_decay_exponent(const std::vector<double>& x_values) {
  if (x_values.size() < 4)
    throw std::invalid_argument("diagonal_decay_exponent: need at least 4 points");
  for (double x : x_values) {
    if (std::abs(x) < 5.0)
      throw std::invalid_argument("diagonal_decay_exponent: need |x| >= 5");
    if (x * x_values.front() <= 0.0)
      throw std::invalid_argument("diagonal_decay_exponent: points must share a sign");
  }
  std::vector<double> lx, ly;
  lx.reserve(x_values.size());
  ly.reserve(x_values.size());
  for (double x : x_values) {
    const ScaledComplex prod = f_plus_scaled(x) * f_minus_scaled(x);
    lx.push_back(std::log(std::abs(x)));
    ly.push_back(prod.log_abs());
  }
  return detail::loglog_slope(lx, ly);
}

}
