#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ptcubic/closed_forms.hpp"
#include "ptcubic/greens_function.hpp"

using ptcubic::ComplexValue;
using ptcubic::diagonal_decay_exponent;
using ptcubic::f_minus;
using ptcubic::f_minus_scaled;
using ptcubic::f_plus;
using ptcubic::f_plus_scaled;
using ptcubic::greens0;
using ptcubic::mclaurin_f0;
using ptcubic::mclaurin_f0_prime;
using ptcubic::trace_integrand;
using ptcubic::trace_quadrature;
using ptcubic::trace_tail_estimate;
using ptcubic::wronskian0;
using ptcubic::zeta1_exact;

namespace {

double rel_err(ComplexValue got, ComplexValue want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("origin values of the decaying solution") {
  const ComplexValue f0{3.12806983630552163, -0.495437590319313903};
  const ComplexValue f0p{-2.08355329696088714, -0.330002422825492476};
  REQUIRE(rel_err(mclaurin_f0(), f0) <= 1e-14);
  REQUIRE(rel_err(mclaurin_f0_prime(), f0p) <= 1e-14);
  REQUIRE(rel_err(f_plus(0.0), f0) <= 1e-14);
  REQUIRE(rel_err(f_minus(0.0), std::conj(f0)) <= 1e-14);
}

TEST_CASE("origin data reproduces the wronskian closed form") {
  // W = f+' f- - f-' f+ at x = 0 collapses to 2 Re[f+'(0) conj(f+(0))].
  const double w = 2.0 * std::real(mclaurin_f0_prime() * std::conj(mclaurin_f0()));
  REQUIRE(std::abs(w - wronskian0()) <= 1e-14 * std::abs(wronskian0()));
}

TEST_CASE("frozen anchors on both axes") {
  REQUIRE(rel_err(f_plus(1.0), ComplexValue{1.07918035100220604, -0.738118703037451119}) <= 1e-12);
  REQUIRE(rel_err(f_plus(-1.0), ComplexValue{5.19548306019690378, -0.391104289939795051}) <= 1e-12);
  REQUIRE(std::abs(std::abs(f_plus(3.0)) - 0.010452680569422484) <= 1e-12 * 0.010452680569422484);
  REQUIRE(f_minus(1.3) == std::conj(f_plus(-1.3)));
}

TEST_CASE("taylor continuity across the three formula branches") {
  // f'' = i x^3 f kills all Maclaurin coefficients between x^1 and x^5, so
  // f(+-h) - f(0) -+ h f'(0) = i f(0) h^5 / 20 (1 + O(h)). Both signs of h
  // exercise a different Bessel representation; agreement with the series
  // pins branch consistency at the origin.
  const ComplexValue f0 = mclaurin_f0();
  const ComplexValue f0p = mclaurin_f0_prime();
  for (double h : {0.05, 0.1}) {
    const double base = std::abs(f0) * std::pow(h, 5) / 20.0;
    const double rem_plus = std::abs(f_plus(h) - f0 - h * f0p);
    const double rem_minus = std::abs(f_plus(-h) - f0 + h * f0p);
    REQUIRE(rem_plus >= 0.8 * base);
    REQUIRE(rem_plus <= 1.2 * base);
    REQUIRE(rem_minus >= 0.8 * base);
    REQUIRE(rem_minus <= 1.2 * base);
  }
  const double h = 1e-4;
  REQUIRE(std::abs(f_plus(h) - f0 - h * f0p) <= 3e-12);
  REQUIRE(std::abs(f_plus(-h) - f0 + h * f0p) <= 3e-12);
}

TEST_CASE("solution satisfies f'' = i x^3 f") {
  // Richardson-extrapolated second difference, independent of any Bessel
  // identity used to build f.
  const double h = 0.04;
  for (double x : {1.3, 2.2, -0.7, -1.6}) {
    const auto second_diff = [&](double step) {
      return (f_plus(x + step) - 2.0 * f_plus(x) + f_plus(x - step)) / (step * step);
    };
    const ComplexValue rich = (4.0 * second_diff(h / 2.0) - second_diff(h)) / 3.0;
    const ComplexValue want = ComplexValue{0.0, 1.0} * x * x * x * f_plus(x);
    const double scale = std::abs(f_plus(x)) * std::max(1.0, std::abs(x * x * x));
    REQUIRE(std::abs(rich - want) <= 1e-5 * scale);
  }
}

TEST_CASE("greens function at frozen points") {
  const ptcubic::GreensSample origin = greens0(0.0, 0.0);
  REQUIRE(std::abs(origin.value.real() + 0.789288009203293929) <= 1e-13 * 0.789288009203293929);
  REQUIRE(std::abs(origin.value.imag()) <= 1e-15);

  const ptcubic::GreensSample anti = greens0(1.0, -1.0);
  REQUIRE(std::abs(anti.value.real() + 0.134517485683075293) <= 1e-12 * 0.134517485683075293);
  REQUIRE(std::abs(anti.value.imag()) <= 1e-15);

  const ptcubic::GreensSample off = greens0(2.0, -3.0);
  REQUIRE(rel_err(off.value, ComplexValue{0.000180141868240946009, -0.0000592891502724735729}) <=
          1e-12);
}

TEST_CASE("greens function symmetries") {
  const ComplexValue a = greens0(2.0, -3.0).value;
  REQUIRE(greens0(-3.0, 2.0).value == a);  // argument order cannot matter

  // PT symmetry: G(-x, -y) = conj(G(x, y)).
  for (auto [x, y] : {std::pair{0.7, 1.9}, std::pair{-1.2, 2.4}, std::pair{0.0, 3.1}}) {
    const ComplexValue g = greens0(x, y).value;
    const ComplexValue reflected = greens0(-x, -y).value;
    REQUIRE(std::abs(reflected - std::conj(g)) <= 1e-13 * std::abs(g));
  }

  const ptcubic::GreensSample s = greens0(1.5, -0.5);
  REQUIRE(s.x == 1.5);
  REQUIRE(s.y == -0.5);
}

TEST_CASE("diagonal beyond plain double range") {
  // At x = 25 each factor separately carries exp(+-884); only the product is
  // representable. The diagonal approaches -e^{-i pi/4} / (2 x^{3/2}).
  const double frozen10 = -0.0111802665089201218;
  REQUIRE(std::abs(greens0(10.0, 10.0).value.real() - frozen10) <= 1e-12 * std::abs(frozen10));

  for (double x : {10.0, 20.0, 25.0}) {
    const ComplexValue g = greens0(x, x).value;
    const double model = -1.0 / (2.0 * std::sqrt(2.0) * std::pow(x, 1.5));
    REQUIRE(std::abs(g.real() - model) <= 1e-4 * std::abs(model));
    REQUIRE(std::abs(g.imag() - (-model)) <= 1e-3 * std::abs(model));
  }
}

TEST_CASE("diagonal decay exponent") {
  const std::vector<double> xs{5.0, 8.0, 11.0, 14.0};
  const double slope = diagonal_decay_exponent(xs);
  REQUIRE(std::abs(slope - (-1.49999934989025286)) <= 1e-9);
  REQUIRE(std::abs(slope + 1.5) <= 1e-5);

  // PT symmetry makes the left side decay identically.
  const std::vector<double> neg{-5.0, -8.0, -11.0, -14.0};
  REQUIRE(std::abs(diagonal_decay_exponent(neg) - slope) <= 1e-14);

  REQUIRE_THROWS_AS(diagonal_decay_exponent({5.0, 8.0, 11.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(diagonal_decay_exponent({4.0, 8.0, 11.0, 14.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(diagonal_decay_exponent({5.0, -8.0, 11.0, 14.0}), std::invalid_argument);
}

TEST_CASE("loglog slope on an exact power law") {
  std::vector<double> lx, ly;
  for (double x : {2.0, 3.0, 5.0, 9.0, 17.0}) {
    lx.push_back(std::log(x));
    ly.push_back(std::log(3.7) - 2.5 * std::log(x));
  }
  REQUIRE(std::abs(ptcubic::detail::loglog_slope(lx, ly) + 2.5) <= 1e-12);
}

TEST_CASE("trace integrand limits and anchors") {
  REQUIRE_THROWS_AS(trace_integrand(0.0), std::domain_error);
  REQUIRE_THROWS_AS(trace_integrand(-1.0), std::domain_error);

  // t^{3/5} * integrand approaches a finite constant at t -> 0.
  const double small = trace_integrand(1e-6) * std::pow(1e-6, 0.6);
  REQUIRE(std::abs(small - 0.865104963362098943) <= 1e-12 * 0.865104963362098943);

  REQUIRE(std::abs(trace_integrand(50.0) - 0.00246424498322671235) <=
          1e-11 * 0.00246424498322671235);
}

TEST_CASE("trace tail estimate") {
  REQUIRE(std::abs(trace_tail_estimate(30.0) - 0.258198889747161126) <=
          1e-15 * 0.258198889747161126);
  REQUIRE(std::abs(trace_tail_estimate(2.0) - 1.0) <= 1e-15);
  REQUIRE_THROWS_AS(trace_tail_estimate(0.0), std::domain_error);
  REQUIRE_THROWS_AS(trace_tail_estimate(-5.0), std::domain_error);
}

TEST_CASE("trace quadrature reproduces the closed form") {
  const double quad = trace_quadrature();
  REQUIRE(std::abs(quad - zeta1_exact()) <= 1e-7);
  REQUIRE(std::abs(quad - 2.83509493211867845) <= 1e-7);  // frozen reference run
}
