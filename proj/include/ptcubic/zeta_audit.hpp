#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "ptcubic/closed_forms.hpp"
#include "ptcubic/greens_function.hpp"
#include "ptcubic/shooting.hpp"

// Headline comparison: hybrid inverse-eigenvalue sum (numeric head, WKB tail)
// against the exact Z(1), with the implied budget for hypothetical complex
// conjugate pairs.

namespace ptcubic {

struct ZetaAudit {
  double closed_form;
  double quadrature_value;
  double wkb_sum;
  double hybrid_sum;
  int n_numeric;
  double discrepancy;  // hybrid_sum - closed_form
  // A conjugate pair {E, conj E} adds 2 Re(E)/|E|^2 > 0 to the sum, so pairs
  // cannot cancel and |discrepancy| caps their total. pair_bound keeps the
  // conservative total; per_pair_residual is the one-pair reading.
  double pair_bound;
  double per_pair_residual;
};

// Decimal rounding to `digits` significant figures, used to mimic
// low-precision source tables.
inline double round_significant(double value, int digits) {
  if (digits < 1 || digits > 17) throw std::domain_error("round_significant: digits in [1,17]");
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
  return std::strtod(buf, nullptr);
}

inline ZetaAudit run_audit_with_energies(const std::vector<double>& energies) {
  const int n = static_cast<int>(energies.size());
  double head = 0.0;
  double replaced = 0.0;
  for (int j = 0; j < n; ++j) {
    if (!(energies[j] > 0.0)) throw std::domain_error("run_audit: energies must be positive");
    head += 1.0 / energies[j];
    replaced += 1.0 / wkb_energy(j);
  }
  ZetaAudit audit;
  audit.closed_form = zeta1_exact();
  audit.quadrature_value = trace_quadrature();
  audit.wkb_sum = wkb_zeta1();
  audit.hybrid_sum = head + (audit.wkb_sum - replaced);
  audit.n_numeric = n;
  audit.discrepancy = audit.hybrid_sum - audit.closed_form;
  audit.pair_bound = std::abs(audit.discrepancy);
  audit.per_pair_residual = 0.5 * std::abs(audit.discrepancy);
  if (!(std::abs(audit.quadrature_value - audit.closed_form) <= 1e-6))
    throw std::runtime_error("run_audit: quadrature drifted from the closed form");
  return audit;
}

// n_numeric = 0 degenerates to the pure WKB sum (nothing replaced).
inline ZetaAudit run_audit(int n_numeric, const ShootingConfig& config) {
  if (n_numeric < 0) throw std::domain_error("run_audit: n_numeric >= 0 required");
  std::vector<double> energies;
  if (n_numeric > 0) {
    const auto estimates = spectrum(n_numeric, config);
    energies.reserve(estimates.size());
    for (const auto& est : estimates) energies.push_back(est.energy.real());
  }
  return run_audit_with_energies(energies);
}

}
