#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace ptcubic {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  // A panel is accepted once the Kronrod-Gauss gap drops below this.
  double panel_abs_tol = 1e-9;
  int max_depth = 48;
  int max_panels = 20000;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss. Abscissae are interior only,
// so integrands with endpoint singularities are never evaluated at the ends.
inline constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
struct PanelRule {
  using Value = std::invoke_result_t<F&, double>;
  Value integral;
  double error;
};

template <class F>
PanelRule<F> gauss_kronrod_15(F& f, double a, double b) {
  using Value = std::invoke_result_t<F&, double>;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Value fc = f(c);
  Value kronrod = kKronrodW[7] * fc;
  Value gauss = kGaussW[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const Value lo = f(c - h * kKronrodX[i]);
    const Value hi = f(c + h * kKronrodX[i]);
    kronrod += kKronrodW[i] * (lo + hi);
    if (i % 2 == 1) gauss += kGaussW[i / 2] * (lo + hi);
  }
  return {kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

template <class F>
struct QuadratureResult {
  typename detail::PanelRule<F>::Value value;
  double error_estimate;
  int panels;
};

// Adaptive bisection: refine every panel until its local error estimate
// clears the per-panel tolerance. Throws when refinement stalls instead of
// returning a silently degraded value.
template <class F>
QuadratureResult<F> integrate_adaptive(F f, double a, double b,
                                       const QuadratureOptions& opt = {}) {
  using Value = typename detail::PanelRule<F>::Value;
  struct Item {
    double a, b;
    int depth;
  };
  std::vector<Item> stack{{a, b, 0}};
  Value total{};
  double err_total = 0.0;
  int panels = 0;
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const auto rule = detail::gauss_kronrod_15(f, it.a, it.b);
    if (rule.error <= opt.panel_abs_tol) {
      total += rule.integral;
      err_total += rule.error;
      if (++panels > opt.max_panels)
        throw QuadratureError("integrate_adaptive: panel budget exhausted on [" +
                              std::to_string(a) + ", " + std::to_string(b) + "]");
      continue;
    }
    if (it.depth >= opt.max_depth)
      throw QuadratureError("integrate_adaptive: refinement stalled near [" +
                            std::to_string(it.a) + ", " + std::to_string(it.b) + "]");
    const double mid = 0.5 * (it.a + it.b);
    stack.push_back({it.a, mid, it.depth + 1});
    stack.push_back({mid, it.b, it.depth + 1});
  }
  return {total, err_total, panels};
}

}
