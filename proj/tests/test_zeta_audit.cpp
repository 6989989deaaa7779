#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ptcubic/zeta_audit.hpp"

using ptcubic::round_significant;
using ptcubic::run_audit;
using ptcubic::run_audit_with_energies;
using ptcubic::ShootingConfig;
using ptcubic::spectrum;
using ptcubic::wkb_zeta1;
using ptcubic::zeta1_exact;
using ptcubic::ZetaAudit;

TEST_CASE("decimal rounding to significant figures") {
  REQUIRE(round_significant(2.835152049, 5) == 2.8352);
  REQUIRE(round_significant(1.156267071988, 5) == 1.1563);
  REQUIRE(round_significant(-1.23456789, 3) == -1.23);
  REQUIRE(round_significant(123456.0, 2) == 120000.0);
  REQUIRE(round_significant(0.0, 5) == 0.0);
  REQUIRE(round_significant(7.0, 1) == 7.0);

  std::mt19937 rng(60601);
  std::uniform_real_distribution<double> vals(-50.0, 50.0);
  for (int i = 0; i < 50; ++i) {
    const double v = vals(rng);
    REQUIRE(round_significant(v, 17) == v);  // 17 figures round-trip a double
  }

  REQUIRE_THROWS_AS(round_significant(1.0, 0), std::domain_error);
  REQUIRE_THROWS_AS(round_significant(1.0, -2), std::domain_error);
  REQUIRE_THROWS_AS(round_significant(1.0, 18), std::domain_error);
}

TEST_CASE("audit input validation") {
  REQUIRE_THROWS_AS(run_audit_with_energies({1.2, -4.0}), std::domain_error);
  REQUIRE_THROWS_AS(run_audit_with_energies({0.0}), std::domain_error);
  REQUIRE_THROWS_AS(run_audit(-1, ShootingConfig{}), std::domain_error);
}

TEST_CASE("degenerate audit is the pure quasi-classical sum") {
  const ZetaAudit audit = run_audit(0, ShootingConfig{});
  REQUIRE(audit.n_numeric == 0);
  REQUIRE(audit.hybrid_sum == audit.wkb_sum);
  REQUIRE(audit.wkb_sum == wkb_zeta1());
  REQUIRE(audit.closed_form == zeta1_exact());
  REQUIRE(std::abs(audit.quadrature_value - audit.closed_form) <= 1e-6);
  REQUIRE(audit.discrepancy == audit.hybrid_sum - audit.closed_form);
}

TEST_CASE("hybrid audit with five numeric levels") {
  const ZetaAudit audit = run_audit(5, ShootingConfig{});
  REQUIRE(audit.n_numeric == 5);
  REQUIRE(std::abs(audit.hybrid_sum - 2.835152049) <= 2e-8);  // frozen reference
  REQUIRE(audit.discrepancy > 5.0e-5);
  REQUIRE(audit.discrepancy < 6.5e-5);
  REQUIRE(audit.pair_bound == std::abs(audit.discrepancy));
  REQUIRE(audit.per_pair_residual == 0.5 * std::abs(audit.discrepancy));
}

TEST_CASE("hybrid discrepancy shrinks as numeric levels replace wkb levels") {
  // One-sided shooting localizes level j only to about sigma/|u_j|, where
  // sigma tracks step_tolerance and the slope u_j of Re s(0;E) falls by
  // ~5.9x per level. Tightening the integration makes levels through j=12
  // trustworthy at the 1e-7 discrepancy scale; the j=13,14 entries still
  // carry O(1e-3) energy error, so n=15 gets ordering checks only.
  ShootingConfig config;
  config.step_tolerance = 1e-13;
  const auto levels = spectrum(15, config);
  std::vector<double> energies;
  energies.reserve(levels.size());
  for (const auto& est : levels) energies.push_back(est.energy.real());

  const ZetaAudit five = run_audit_with_energies({energies.begin(), energies.begin() + 5});
  const ZetaAudit ten = run_audit_with_energies({energies.begin(), energies.begin() + 10});
  const ZetaAudit twelve = run_audit_with_energies({energies.begin(), energies.begin() + 12});
  const ZetaAudit fifteen = run_audit_with_energies(energies);

  REQUIRE(std::abs(five.discrepancy) > std::abs(ten.discrepancy));
  REQUIRE(std::abs(ten.discrepancy) > std::abs(twelve.discrepancy));
  REQUIRE(std::abs(ten.discrepancy) > std::abs(fifteen.discrepancy));

  REQUIRE(std::abs(ten.discrepancy - 1.2541404e-5) <= 2e-8);
  REQUIRE(std::abs(twelve.discrepancy - 8.404965e-6) <= 2e-7);

  // Every partial replacement overshoots from above: the quasi-classical tail
  // overestimates, so the hybrid stays a strict upper bound here.
  REQUIRE(five.discrepancy > 0.0);
  REQUIRE(ten.discrepancy > 0.0);
  REQUIRE(twelve.discrepancy > 0.0);
  REQUIRE(fifteen.discrepancy > 0.0);
}
