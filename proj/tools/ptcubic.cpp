#include <cmath>
#include <complex>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptcubic/closed_forms.hpp"
#include "ptcubic/greens_function.hpp"
#include "ptcubic/output_record.hpp"
#include "ptcubic/shooting.hpp"
#include "ptcubic/zeta_audit.hpp"

namespace {

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return 3;
  }
  out << text;
  return 0;
}

int emit_record(const ptcubic::OutputRecord& record, const std::string& out_path) {
  return emit(record.to_json().dump(2) + "\n", out_path);
}

int run_zeta(const std::string& method, int n, int round_digits, double x_max, double tol,
             const std::string& format, const std::string& out_path) {
  ptcubic::OutputRecord record;
  record.command = "zeta";
  record.add_input("method", method);
  const auto finish = [&](const ptcubic::OutputRecord& rec) {
    return format == "csv" ? emit(rec.to_csv(), out_path) : emit_record(rec, out_path);
  };

  if (method == "closed") {
    record.add_result("zeta1", ptcubic::zeta1_exact());
    return finish(record);
  }
  if (method == "quad") {
    record.add_result("zeta1", ptcubic::trace_quadrature());
    return finish(record);
  }
  if (method == "wkb") {
    record.add_result("zeta1", ptcubic::wkb_zeta1());
    return finish(record);
  }

  // hybrid
  if (n < 1) {
    std::cerr << "zeta --method hybrid requires --n >= 1\n";
    return 2;
  }
  record.add_input("n", std::to_string(n));
  record.add_input("x_max", x_max);
  record.add_input("tol", tol);
  if (round_digits > 0) record.add_input("round_digits", std::to_string(round_digits));

  const ptcubic::ShootingConfig config{x_max, tol, tol, 50};
  const auto estimates = ptcubic::spectrum(n, config);
  std::vector<double> energies;
  energies.reserve(estimates.size());
  for (const auto& est : estimates) {
    double e = est.energy.real();
    if (round_digits > 0) e = ptcubic::round_significant(e, round_digits);
    energies.push_back(e);
  }
  const ptcubic::ZetaAudit audit = ptcubic::run_audit_with_energies(energies);

  record.add_result("zeta1", audit.hybrid_sum);
  record.add_result("closed_form", audit.closed_form);
  record.add_result("quadrature_value", audit.quadrature_value);
  record.add_result("wkb_sum", audit.wkb_sum);
  record.add_result("hybrid_sum", audit.hybrid_sum);
  record.add_result("n_numeric", std::to_string(audit.n_numeric));
  record.add_result("discrepancy", audit.discrepancy);
  record.add_result("pair_bound", audit.pair_bound);
  record.add_result("per_pair_residual", audit.per_pair_residual);
  for (int j = 0; j < audit.n_numeric; ++j)
    record.add_result("energy_" + std::to_string(j), energies[static_cast<std::size_t>(j)]);
  return finish(record);
}

int run_eigen(int n, double x_max, double tol, const std::string& format,
              const std::string& out_path) {
  const ptcubic::ShootingConfig config{x_max, tol, tol, 50};
  const auto estimates = ptcubic::spectrum(n, config);

  if (format == "csv") {
    std::string csv = "j,energy,residual,wkb_seed\n";
    for (const auto& est : estimates) {
      csv += std::to_string(est.index) + "," + ptcubic::format_number(est.energy.real()) + "," +
             ptcubic::format_number(est.residual) + "," +
             ptcubic::format_number(ptcubic::wkb_energy(est.index)) + "\n";
    }
    return emit(csv, out_path);
  }

  ptcubic::OutputRecord record;
  record.command = "eigen";
  record.add_input("n", std::to_string(n));
  record.add_input("x_max", x_max);
  record.add_input("tol", tol);
  for (const auto& est : estimates) {
    const std::string j = std::to_string(est.index);
    record.add_result("energy_" + j, est.energy.real());
    record.add_result("residual_" + j, est.residual);
    record.add_result("wkb_seed_" + j, ptcubic::wkb_energy(est.index));
  }
  return emit_record(record, out_path);
}

int run_greens_point(double x, double y, const std::string& format, const std::string& out_path) {
  const ptcubic::GreensSample sample = ptcubic::greens0(x, y);
  if (format == "csv") {
    std::string csv = "x,y,greens_re,greens_im\n";
    csv += ptcubic::format_number(x) + "," + ptcubic::format_number(y) + "," +
           ptcubic::format_number(sample.value.real()) + "," +
           ptcubic::format_number(sample.value.imag()) + "\n";
    return emit(csv, out_path);
  }
  ptcubic::OutputRecord record;
  record.command = "greens";
  record.add_input("x", x);
  record.add_input("y", y);
  record.add_result("greens_re", sample.value.real());
  record.add_result("greens_im", sample.value.imag());
  return emit_record(record, out_path);
}

int run_greens_sweep(double from, double to, double step, const std::string& format,
                     const std::string& out_path) {
  if (!(step > 0.0) || !(to >= from + step)) {
    std::cerr << "greens sweep requires --step > 0 and --to >= --from + step\n";
    return 2;
  }

  std::vector<double> xs;
  for (long i = 0;; ++i) {
    const double x = from + static_cast<double>(i) * step;
    if (x > to + 1e-12 * step) break;
    xs.push_back(x);
  }
  std::vector<std::complex<double>> diag;
  diag.reserve(xs.size());
  for (double x : xs) diag.push_back(ptcubic::greens0(x, x).value);

  // Z(1) partial = -int G(x,x) dx over the swept range, composite Simpson
  // with a trapezoid patch when the interval count is odd.
  std::complex<double> integral{0.0, 0.0};
  std::size_t n_int = xs.size() - 1;
  const std::size_t simpson_end = n_int % 2 == 0 ? n_int : n_int - 1;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2)
    integral += (step / 3.0) * (diag[i] + 4.0 * diag[i + 1] + diag[i + 2]);
  if (simpson_end != n_int) integral += 0.5 * step * (diag[n_int - 1] + diag[n_int]);
  const std::complex<double> partial = -integral;

  const bool straddles = from < 0.0 && to > 0.0;
  const double tail =
      straddles ? std::sqrt(0.5 / -from) + std::sqrt(0.5 / to) : 0.0;

  if (format == "csv") {
    std::string csv = "x,greens_re,greens_im\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      csv += ptcubic::format_number(xs[i]) + "," + ptcubic::format_number(diag[i].real()) + "," +
             ptcubic::format_number(diag[i].imag()) + "\n";
    csv += "# trace_partial " + ptcubic::format_number(partial.real()) + "\n";
    if (straddles) {
      csv += "# tail_estimate " + ptcubic::format_number(tail) + "\n";
      csv += "# trace_total " + ptcubic::format_number(partial.real() + tail) + "\n";
    }
    return emit(csv, out_path);
  }

  ptcubic::OutputRecord record;
  record.command = "greens";
  record.add_input("from", from);
  record.add_input("to", to);
  record.add_input("step", step);
  record.add_result("points", std::to_string(xs.size()));
  record.add_result("trace_partial", partial.real());
  record.add_result("trace_partial_im", partial.imag());
  if (straddles) {
    record.add_result("tail_estimate", tail);
    record.add_result("trace_total", partial.real() + tail);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::string j = std::to_string(i);
    record.add_result("x_" + j, xs[i]);
    record.add_result("greens_re_" + j, diag[i].real());
    record.add_result("greens_im_" + j, diag[i].imag());
  }
  return emit_record(record, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric cubic oscillator: spectrum, Green's function, spectral zeta"};
  app.require_subcommand(1);

  std::string method = "closed";
  int n = 5;
  int round_digits = 0;
  double x_max = 15.0;
  double tol = 1e-10;
  std::string format = "json";
  std::string out_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--x-max", x_max, "integration cutoff X")->capture_default_str();
    cmd->add_option("--tol", tol, "step / Newton tolerance")->capture_default_str();
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  CLI::App* zeta = app.add_subcommand("zeta", "spectral zeta Z(1) by several routes");
  zeta->add_option("--method", method, "closed | quad | wkb | hybrid")
      ->required()
      ->check(CLI::IsMember({"closed", "quad", "wkb", "hybrid"}));
  zeta->add_option("--n", n, "numeric eigenvalues in the hybrid sum")->capture_default_str();
  zeta->add_option("--round-digits", round_digits,
                   "round numeric eigenvalues to this many significant digits first")
      ->check(CLI::Range(0, 17))
      ->capture_default_str();
  add_common(zeta);

  CLI::App* eigen = app.add_subcommand("eigen", "eigenvalues by Riccati shooting");
  eigen->add_option("--n", n, "number of eigenvalues")->capture_default_str();
  add_common(eigen);

  CLI::App* greens = app.add_subcommand("greens", "Green's function values");
  double gx = 0.0, gy = 0.0, from = 0.0, to = 0.0, step = 0.0;
  CLI::Option* opt_x = greens->add_option("--x", gx, "first argument");
  CLI::Option* opt_y = greens->add_option("--y", gy, "second argument");
  CLI::Option* opt_from = greens->add_option("--from", from, "diagonal sweep start");
  CLI::Option* opt_to = greens->add_option("--to", to, "diagonal sweep end");
  CLI::Option* opt_step = greens->add_option("--step", step, "diagonal sweep spacing");
  add_common(greens);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // help text, not an error
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (zeta->parsed()) return run_zeta(method, n, round_digits, x_max, tol, format, out_path);
    if (eigen->parsed()) {
      if (n < 1) {
        std::cerr << "eigen requires --n >= 1\n";
        return 2;
      }
      return run_eigen(n, x_max, tol, format, out_path);
    }
    if (greens->parsed()) {
      const bool point = *opt_x || *opt_y;
      const bool sweep = *opt_from || *opt_to || *opt_step;
      if (point == sweep) {
        std::cerr << "greens needs either --x/--y or --from/--to/--step\n";
        return 2;
      }
      if (point) {
        if (!*opt_x || !*opt_y) {
          std::cerr << "greens point mode needs both --x and --y\n";
          return 2;
        }
        return run_greens_point(gx, gy, format, out_path);
      }
      if (!*opt_from || !*opt_to || !*opt_step) {
        std::cerr << "greens sweep mode needs --from, --to and --step\n";
        return 2;
      }
      return run_greens_sweep(from, to, step, format, out_path);
    }
  } catch (const ptcubic::ConvergenceError& e) {
    std::cerr << "computation failed";
    if (e.index >= 0) std::cerr << " at index " << e.index;
    std::cerr << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
