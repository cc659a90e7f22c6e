#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qlab/suites.hpp"

namespace {

std::string default_output(const std::string& command, const std::string& format) {
  const char* dir = std::getenv("QLAB_OUT_DIR");
  const std::filesystem::path base = (dir && *dir) ? std::filesystem::path(dir) : std::filesystem::path(".");
  return (base / (command + "." + format)).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlab: deformed-algebra verification suites"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  qlab::RunConfig cfg;
  std::string out;
  std::string format = "json";
  double q = 0.0;
  double q0 = 0.0;
  std::vector<double> window;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "random cases per check")->capture_default_str();
    sub->add_option("--out", out, "report path (default $QLAB_OUT_DIR/<command>.<format>)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--tol-scale", cfg.tol_scale, "multiplier applied to every floating-point tolerance")
        ->capture_default_str();
  };

  auto* unc = app.add_subcommand("uncertainty", "deformed oscillator and x-p uncertainty checks");
  auto* q_opt = unc->add_option("--q", q, "oscillator deformation q > 0");
  auto* q0_opt = unc->add_option("--q0", q0, "x-p deformation q0 > 0");
  unc->add_option("--L", cfg.L, "length scale")->capture_default_str();
  unc->add_option("--hbar", cfg.hbar)->capture_default_str();
  unc->add_option("--trunc", cfg.trunc, "Fock truncation N")->capture_default_str();
  unc->add_option("--scan-samples", cfg.scan_samples, "states in the minimal-spread scan (0 skips)")
      ->capture_default_str();
  add_common(unc);

  auto* lat = app.add_subcommand("lattice", "lattice Schrodinger convergence study");
  lat->add_option("--preset", cfg.preset, "harmonic, box or free")->capture_default_str();
  lat->add_option("--potential", cfg.potential, "potential U(x) as an expression in x");
  lat->add_option("--spacings", cfg.spacings, "successively halving spacings")->delimiter(',')->capture_default_str();
  lat->add_option("--levels", cfg.levels, "number of lowest levels")->capture_default_str();
  lat->add_option("--window", window, "x_min,x_max")->delimiter(',')->expected(2);
  add_common(lat);

  auto* qc = app.add_subcommand("qcalc", "exchange algebra and Jackson derivative checks");
  qc->add_option("--qe", cfg.qe, "lattice spacings q_E")->delimiter(',')->capture_default_str();
  add_common(qc);

  auto* nc = app.add_subcommand("nc", "shift-operator calculus and flat-coordinate algebra");
  nc->add_option("--suite", cfg.suite, "all, leibniz, brownian, commutator_identity, heisenberg, hamilton, "
                                       "curvature or confluence")
      ->capture_default_str();
  nc->add_option("--hbar", cfg.hbar)->capture_default_str();
  add_common(nc);

  auto* fib = app.add_subcommand("fiber", "Grassmann fiber and covariant derivative checks");
  fib->add_option("--gamma", cfg.gamma, "pauli or zero")->capture_default_str();
  add_common(fib);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (*q_opt) cfg.q = q;
  if (*q0_opt) cfg.q0 = q0;
  if (window.size() == 2) cfg.window = std::make_pair(window[0], window[1]);

  try {
    qlab::Report report;
    const std::string name = sub->get_name();
    if (name == "uncertainty") {
      report = qlab::run_uncertainty(cfg);
    } else if (name == "lattice") {
      report = qlab::run_lattice(cfg);
    } else if (name == "qcalc") {
      report = qlab::run_qcalc(cfg);
    } else if (name == "nc") {
      report = qlab::run_nc(cfg);
    } else {
      report = qlab::run_fiber(cfg);
    }
    const std::string path = out.empty() ? default_output(name, format) : out;
    for (const auto& f : qlab::write_report(report, path, format)) std::cout << "wrote " << f << '\n';
    bool first_failure = true;
    for (const auto& c : report.checks) {
      std::cout << (c.pass ? "pass " : "FAIL ") << c.name << ' ' << c.value << ' ' << c.relation << ' ' << c.limit
                << '\n';
      if (!c.pass && first_failure) {
        first_failure = false;
        if (!c.detail.empty()) std::cerr << "first failure: " << c.name << ": " << c.detail << '\n';
      }
    }
    return report.pass() ? 0 : 1;
  } catch (const qlab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << sub->help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
