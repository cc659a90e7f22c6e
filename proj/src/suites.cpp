#include "qlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>

#include <json.hpp>

#include "qlab/expr.hpp"
#include "qlab/fiber.hpp"
#include "qlab/jseries.hpp"
#include "qlab/lattice.hpp"
#include "qlab/ncalc.hpp"
#include "qlab/ncpoly.hpp"
#include "qlab/qcalc.hpp"
#include "qlab/qfock.hpp"
#include "qlab/rng.hpp"
#include "qlab/uncertainty.hpp"

namespace qlab {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string num_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + num(v[i]);
  return out;
}

CheckRow at_most(std::string name, double value, double limit, std::string detail = {}) {
  return {std::move(name), value, limit, "<=", value <= limit, std::move(detail)};
}

CheckRow at_least(std::string name, double value, double limit, std::string detail = {}) {
  return {std::move(name), value, limit, ">=", value >= limit, std::move(detail)};
}

CheckRow mismatches(std::string name, int count, int total, std::string detail = {}) {
  if (detail.empty()) detail = std::to_string(count) + " of " + std::to_string(total) + " cases differ";
  return {std::move(name), static_cast<double>(count), 0.0, "==", count == 0, std::move(detail)};
}

// Runs one check; any library exception becomes a failing row so the
// remaining checks still run.
void guarded(Report& r, const std::string& name, const std::function<CheckRow()>& fn) {
  try {
    r.checks.push_back(fn());
  } catch (const std::exception& e) {
    r.checks.push_back({name, std::numeric_limits<double>::quiet_NaN(), 0.0, "error", false, e.what()});
  }
}

// Per-check random streams: sample i of check k draws from stream (k << 32) + i.
std::mt19937_64 stream(const RunConfig& cfg, std::uint64_t check, std::uint64_t sample) {
  return stream_for(cfg.seed, (check << 32) + sample);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void common_params(Report& r, const RunConfig& cfg) {
  r.params.emplace_back("seed", std::to_string(cfg.seed));
  r.params.emplace_back("samples", std::to_string(cfg.samples));
  r.params.emplace_back("tol_scale", num(cfg.tol_scale));
}

void validate_common(const RunConfig& cfg) {
  require(cfg.samples >= 1, "--samples must be at least 1");
  require(std::isfinite(cfg.tol_scale), "--tol-scale must be finite");
}

// ------------------------------------------------------------- uncertainty

StateVector interior_state(std::mt19937_64& rng, int dim) {
  ComplexVector v = ComplexVector::Zero(dim);
  for (int i = 0; i < dim - 2; ++i) v(i) = random_complex(rng);
  return StateVector(std::move(v));
}

void oscillator_checks(Report& r, const RunConfig& cfg) {
  const double q = *cfg.q;
  const double ts = cfg.tol_scale;
  const QOscillator osc(q, cfg.trunc);

  guarded(r, "deformed_commutator", [&] {
    const Residual res = osc.relation_residual();
    return at_most("deformed_commutator", res.value / res.scale, 1e-12 * ts);
  });

  guarded(r, "pq_identity", [&] {
    double worst = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      auto rng = stream(cfg, 1, static_cast<std::uint64_t>(i));
      const Complex alpha = random_complex(rng);
      const Complex beta = random_complex(rng);
      const Residual res = check_deformed_commutator(build_pq(osc, alpha, beta), osc);
      worst = std::max(worst, res.value / res.scale);
    }
    return at_most("pq_identity", worst, 1e-12 * ts);
  });

  guarded(r, "uncertainty_slack", [&] {
    Table t{"uncertainty_samples", {"sample", "var_Q", "var_P", "half_abs_R", "slack", "scale"}, {}, {}};
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.samples; ++i) {
      auto rng = stream(cfg, 2, static_cast<std::uint64_t>(i));
      const Complex alpha = random_complex(rng);
      const Complex beta = random_complex(rng);
      const StateVector s = random_state(rng, cfg.trunc);
      const UncertaintyReport rep = uncertainty_report(build_pq(osc, alpha, beta), s);
      const double rel = rep.slack / rep.scale;
      worst = std::min(worst, rel);
      t.rows.push_back({static_cast<double>(i), rep.var_Q, rep.var_P, rep.half_abs_R, rep.slack, rep.scale});
      t.row_pass.push_back(rel >= -1e-10 * ts);
    }
    r.tables.push_back(std::move(t));
    return at_least("uncertainty_slack", worst, -1e-10 * ts);
  });

  if (q == 1.0) {
    guarded(r, "vacuum_saturation", [&] {
      const double h = 1.0 / std::sqrt(2.0);
      const UncertaintyReport rep =
          uncertainty_report(build_pq(osc, Complex(0.0, h), Complex(h, 0.0)), StateVector::basis(cfg.trunc, 0));
      return at_most("vacuum_saturation", std::abs(rep.slack), 1e-12 * ts);
    });
  }

  guarded(r, "coherent_moments", [&] {
    double worst = 0.0;
    int trunc = cfg.trunc;
    const int count = std::min(cfg.samples, 20);
    for (int i = 0; i < count; ++i) {
      auto rng = stream(cfg, 3, static_cast<std::uint64_t>(i));
      const Complex z = std::polar(0.8 * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2.0 * M_PI));
      const Complex alpha = random_complex(rng);
      const Complex beta = random_complex(rng);
      for (;;) {
        try {
          worst = std::max(worst, coherent_moment_check(QOscillator(q, trunc), alpha, beta, z).max());
          break;
        } catch (const TruncationError& e) {
          if (e.required_trunc() <= trunc) throw;
          trunc = e.required_trunc();
        }
      }
    }
    std::string detail;
    if (trunc != cfg.trunc) detail = "coherent states evaluated at truncation " + std::to_string(trunc);
    return at_most("coherent_moments", worst, 1e-8 * ts, detail);
  });
}

void xp_checks(Report& r, const RunConfig& cfg) {
  const double q0 = *cfg.q0;
  const double ts = cfg.tol_scale;
  const XPRealization xp(q0, cfg.L, cfg.trunc, cfg.hbar);

  guarded(r, "xp_commutator", [&] {
    const Residual res = xp_commutator_check(xp);
    return at_most("xp_commutator", res.value / res.scale, 1e-10 * ts);
  });

  guarded(r, "heisenberg_bound", [&] {
    Table t{"bound_samples", {"sample", "dx", "slack", "scale"}, {}, {}};
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.samples; ++i) {
      auto rng = stream(cfg, 4, static_cast<std::uint64_t>(i));
      const StateVector s = interior_state(rng, cfg.trunc);
      const Slack sl = heisenberg_bound_check(xp, s);
      const double rel = sl.value / sl.scale;
      worst = std::min(worst, rel);
      t.rows.push_back({static_cast<double>(i), position_spread(xp, s), sl.value, sl.scale});
      t.row_pass.push_back(rel >= -1e-8 * ts);
    }
    r.tables.push_back(std::move(t));
    return at_least("heisenberg_bound", worst, -1e-8 * ts);
  });

  if (q0 > 1.0 && cfg.scan_samples > 0) {
    try {
      const ScanResult scan = minimal_uncertainty_scan(xp, cfg.scan_samples, cfg.seed);
      const std::string detail = "dx0 = " + num(scan.dx0) + ", min dx = " + num(scan.min_dx) + ", states tried " +
                                 std::to_string(scan.states_tried);
      r.checks.push_back(at_least("minimal_spread_floor", scan.min_dx / scan.dx0, 1.0 - 1e-6 * ts, detail));
      r.checks.push_back(at_most("minimal_spread_reached", scan.min_trial / scan.dx0, 1.0 + 0.05 * ts, detail));
    } catch (const std::exception& e) {
      r.checks.push_back({"minimal_spread_floor", std::numeric_limits<double>::quiet_NaN(), 0.0, "error", false,
                          e.what()});
    }
  }
}

// ------------------------------------------------------------------ qcalc

Rational exact(double v) { return Rational(v); }

GridFunction<Rational> power_grid(const Rational& spacing, int first, int count, int n, const Rational& offset) {
  return GridFunction<Rational>::sample(spacing, first, count, [&](const Rational& x) {
    Rational v(1);
    for (int k = 0; k < n; ++k) v *= x + offset;
    return v;
  });
}

bool same_oneform(const DiscreteOneForm<Rational>& a, const DiscreteOneForm<Rational>& b) {
  // Compare on the common window of the dx coefficients; the 0-form parts
  // must both vanish there.
  const auto diff = a - b;
  for (const auto& v : diff.zero_form().values()) {
    if (v != 0) return false;
  }
  for (const auto& v : diff.dx_coefficient().values()) {
    if (v != 0) return false;
  }
  return true;
}

}  // namespace

bool Report::pass() const {
  if (!std::all_of(checks.begin(), checks.end(), [](const CheckRow& c) { return c.pass; })) return false;
  for (const auto& t : tables) {
    if (!std::all_of(t.row_pass.begin(), t.row_pass.end(), [](bool b) { return b; })) return false;
  }
  return true;
}

Report run_uncertainty(const RunConfig& cfg) {
  validate_common(cfg);
  require(cfg.q.has_value() || cfg.q0.has_value(), "one of --q or --q0 is required");
  require(cfg.trunc >= 4, "--trunc must be at least 4");
  if (cfg.q) require(*cfg.q > 0.0 && std::isfinite(*cfg.q), "--q must be positive");
  if (cfg.q0) require(*cfg.q0 > 0.0 && std::isfinite(*cfg.q0), "--q0 must be positive");
  require(cfg.L > 0.0 && cfg.hbar > 0.0, "--L and --hbar must be positive");
  require(cfg.scan_samples == 0 || cfg.scan_samples >= 100, "--scan-samples must be 0 or at least 100");

  Report r;
  r.command = "uncertainty";
  if (cfg.q) r.params.emplace_back("q", num(*cfg.q));
  if (cfg.q0) {
    r.params.emplace_back("q0", num(*cfg.q0));
    r.params.emplace_back("L", num(cfg.L));
    r.params.emplace_back("hbar", num(cfg.hbar));
    r.params.emplace_back("scan_samples", std::to_string(cfg.scan_samples));
  }
  r.params.emplace_back("trunc", std::to_string(cfg.trunc));
  common_params(r, cfg);

  if (cfg.q) oscillator_checks(r, cfg);
  if (cfg.q0) xp_checks(r, cfg);
  return r;
}

Report run_lattice(const RunConfig& cfg) {
  validate_common(cfg);
  PotentialSpec pot;
  std::pair<double, double> window{-10.0, 10.0};
  if (!cfg.potential.empty()) {
    try {
      pot = {"expression", parse_expression(cfg.potential), Oracle::None};
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  } else if (cfg.preset == "harmonic") {
    pot = harmonic_potential();
  } else if (cfg.preset == "box") {
    pot = box_potential();
    window = {0.0, 1.0};
  } else if (cfg.preset == "free") {
    pot = free_potential();
    window = {0.0, 1.0};
  } else {
    throw ConfigError("unknown preset '" + cfg.preset + "' (harmonic, box, free)");
  }
  if (cfg.window) window = *cfg.window;
  require(window.first < window.second, "--window must satisfy min < max");
  std::pair<double, double> sites = window;
  if (pot.oracle == Oracle::InfiniteWell) {
    // The window ends are the walls: no lattice site sits on them, so the
    // well width is the window length at every spacing.
    const double inset = 1e-7 * (window.second - window.first);
    sites = {window.first + inset, window.second - inset};
  }
  require(!cfg.spacings.empty(), "--spacings must not be empty");
  for (std::size_t i = 0; i < cfg.spacings.size(); ++i) {
    require(cfg.spacings[i] > 0.0, "--spacings must be positive");
    if (i > 0) require(cfg.spacings[i] == 0.5 * cfg.spacings[i - 1], "--spacings must halve successively");
  }
  require(cfg.levels >= 1, "--levels must be at least 1");
  const int coarse_points = make_lattice_problem(pot.U, sites.first, sites.second, cfg.spacings.front()).points();
  require(cfg.levels <= coarse_points, "--levels (" + std::to_string(cfg.levels) + ") exceeds the " +
                                           std::to_string(coarse_points) + " points of the coarsest lattice");

  Report r;
  r.command = "lattice";
  r.params.emplace_back("potential", cfg.potential.empty() ? cfg.preset : cfg.potential);
  r.params.emplace_back("window", num(window.first) + "," + num(window.second));
  r.params.emplace_back("spacings", num_list(cfg.spacings));
  r.params.emplace_back("levels", std::to_string(cfg.levels));
  r.params.emplace_back("tol_scale", num(cfg.tol_scale));

  const double ts = cfg.tol_scale;
  std::vector<ConvergenceRow> rows;
  try {
    rows = convergence_study(pot, sites.first, sites.second, cfg.spacings, cfg.levels);
  } catch (const std::exception& e) {
    r.checks.push_back({"convergence", std::numeric_limits<double>::quiet_NaN(), 0.0, "error", false, e.what()});
    return r;
  }

  Table t{"convergence", {"spacing", "level", "eigenvalue", "error", "ratio"}, {}, {}};
  const bool exact_oracle = pot.oracle == Oracle::DiscreteFree;
  const double lo = 4.0 - 0.5 * ts;
  const double hi = 4.0 + 0.5 * ts;
  double worst = 0.0;
  for (const auto& row : rows) {
    t.rows.push_back({row.spacing, static_cast<double>(row.level), row.eigenvalue, row.error, row.ratio});
    if (exact_oracle) {
      t.row_pass.push_back(row.error <= 1e-9 * ts);
      worst = std::max(worst, row.error);
    } else if (std::isnan(row.ratio)) {
      t.row_pass.push_back(true);
    } else {
      t.row_pass.push_back(row.ratio >= lo && row.ratio <= hi);
      worst = std::max(worst, std::abs(row.ratio - 4.0));
    }
  }
  r.tables.push_back(std::move(t));
  if (exact_oracle) {
    r.checks.push_back(at_most("discrete_exact", worst, 1e-9 * ts, "max |E - closed form|"));
  } else {
    r.checks.push_back(at_most("ratio_band", worst, 0.5 * ts, "max |ratio - 4|"));
  }
  r.checks.push_back({"convergence_contract", 0.0, 0.0, "==",
                      convergence_contract_holds(rows, pot.oracle, lo, hi, 1e-9 * ts),
                      "every ratio in [" + num(lo) + ", " + num(hi) + "]"});
  r.checks.back().value = r.checks.back().pass ? 0.0 : 1.0;
  return r;
}

Report run_qcalc(const RunConfig& cfg) {
  validate_common(cfg);
  require(!cfg.qe.empty(), "--qe must not be empty");
  for (double v : cfg.qe) require(v > 0.0 && std::isfinite(v), "--qe values must be positive");

  Report r;
  r.command = "qcalc";
  r.params.emplace_back("qe", num_list(cfg.qe));
  r.params.emplace_back("tol_scale", num(cfg.tol_scale));
  const double ts = cfg.tol_scale;
  constexpr int kFirst = -6;
  constexpr int kCount = 13;

  guarded(r, "exchange_commutator", [&] {
    int bad = 0;
    for (double d : cfg.qe) {
      const Rational h = exact(d);
      const auto x = power_grid(h, kFirst, kCount, 1, 0);
      const auto lhs = commutator_with_dx(x);
      const auto expected = DiscreteOneForm<Rational>::dx_times(
          GridFunction<Rational>(h, kFirst, std::vector<Rational>(kCount, h)));
      if (!same_oneform(lhs, expected)) ++bad;
    }
    return mismatches("exchange_commutator", bad, static_cast<int>(cfg.qe.size()));
  });

  guarded(r, "power_exchange", [&] {
    int bad = 0;
    int total = 0;
    for (double d : cfg.qe) {
      const Rational h = exact(d);
      const auto x = power_grid(h, kFirst, kCount, 1, 0);
      auto form = DiscreteOneForm<Rational>::times_dx(power_grid(h, kFirst, kCount, 0, 0));
      for (int n = 1; n <= 5; ++n) {
        form = oneform_mul(x, form);
        const auto expected = DiscreteOneForm<Rational>::dx_times(power_grid(h, kFirst, kCount, n, h));
        ++total;
        if (!same_oneform(form, expected)) ++bad;
      }
    }
    return mismatches("power_exchange", bad, total);
  });

  guarded(r, "derivative_shift_identity", [&] {
    int bad = 0;
    int total = 0;
    for (int i = 0; i < cfg.samples; ++i) {
      auto rng = stream(cfg, 10, static_cast<std::uint64_t>(i));
      std::uniform_int_distribution<int> val(-20, 20);
      std::vector<Rational> v(12);
      for (auto& e : v) e = val(rng);
      const GridFunction<Rational> f(exact(cfg.qe[static_cast<std::size_t>(i) % cfg.qe.size()]), val(rng), v);
      ++total;
      if (!(backward_diff(f) == forward_diff(f).shifted(-1))) ++bad;
    }
    return mismatches("derivative_shift_identity", bad, total);
  });

  guarded(r, "modified_leibniz", [&] {
    int bad = 0;
    int total = 0;
    for (int i = 0; i < cfg.samples; ++i) {
      auto rng = stream(cfg, 11, static_cast<std::uint64_t>(i));
      std::uniform_int_distribution<int> val(-20, 20);
      const int first = val(rng);
      std::vector<Rational> a(10);
      std::vector<Rational> b(10);
      for (auto& e : a) e = val(rng);
      for (auto& e : b) e = val(rng);
      const Rational h = exact(cfg.qe[static_cast<std::size_t>(i) % cfg.qe.size()]);
      const GridFunction<Rational> f(h, first, a);
      const GridFunction<Rational> g(h, first, b);
      const auto defects = plain_leibniz_defects(f, g);
      const auto expected_naive = scaled(forward_diff(f) * forward_diff(g), h);
      ++total;
      const bool shifted_zero = std::all_of(defects.shifted_rule.values().begin(), defects.shifted_rule.values().end(),
                                            [](const Rational& e) { return e == 0; });
      if (!shifted_zero || !(defects.naive_rule == expected_naive)) ++bad;
    }
    return mismatches("modified_leibniz", bad, total);
  });

  guarded(r, "correspondence", [&] {
    double worst = 0.0;
    const std::vector<std::pair<int, ScalarFn>> fns{
        {1, [](double y) { return y; }}, {2, [](double y) { return y * y; }}, {3, [](double y) { return y * y * y; }}};
    for (double d : cfg.qe) {
      for (const auto& [n, f] : fns) {
        for (double x : {-1.0, -0.37, 0.0, 0.5, 1.0, 2.0}) {
          const Residual res = hyperplane_correspondence_check(f, x, d);
          worst = std::max(worst, res.value / res.scale);
        }
      }
    }
    return at_most("correspondence", worst, 1e-10 * ts);
  });

  guarded(r, "jackson_power", [&] {
    double worst = 0.0;
    for (double d : cfg.qe) {
      const double q = std::sqrt(q_squared_from_spacing(d));
      for (int n = 1; n <= 8; ++n) {
        for (double y : {0.25, 1.0, 1.7, 3.0}) {
          const double got = jackson_derivative([n](double t) { return std::pow(t, n); }, y, q);
          const double expected = q_number(n, q * q) * std::pow(y, n - 1);
          worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
        }
      }
    }
    return at_most("jackson_power", worst, 1e-12 * ts);
  });
  return r;
}

Report run_nc(const RunConfig& cfg) {
  validate_common(cfg);
  static const std::vector<std::string> kSuites{"leibniz", "brownian", "commutator_identity", "heisenberg",
                                                "hamilton", "curvature", "confluence"};
  require(cfg.suite == "all" || std::find(kSuites.begin(), kSuites.end(), cfg.suite) != kSuites.end(),
          "unknown --suite '" + cfg.suite + "'");
  require(cfg.hbar > 0.0, "--hbar must be positive");
  const auto wanted = [&](const std::string& s) { return cfg.suite == "all" || cfg.suite == s; };

  Report r;
  r.command = "nc";
  r.params.emplace_back("suite", cfg.suite);
  r.params.emplace_back("hbar", num(cfg.hbar));
  common_params(r, cfg);
  const double ts = cfg.tol_scale;
  const int n = cfg.samples;

  const auto integer_series = [](std::mt19937_64& rng, const Rational& tau, int first, int len) {
    std::uniform_int_distribution<int> val(-9, 9);
    std::vector<Rational> v(static_cast<std::size_t>(len));
    for (auto& e : v) e = val(rng);
    return TimeSeries<Rational>(tau, first, std::move(v));
  };
  const std::vector<Rational> taus{Rational(1), Rational(1, 2), Rational(2), Rational(3, 4)};

  if (wanted("leibniz")) {
    guarded(r, "leibniz", [&] {
      int bad = 0;
      for (int i = 0; i < 2 * n; ++i) {
        auto rng = stream(cfg, 20, static_cast<std::uint64_t>(i));
        const Rational& tau = taus[static_cast<std::size_t>(i) % taus.size()];
        const int len = std::uniform_int_distribution<int>(3, 12)(rng);
        const int first = std::uniform_int_distribution<int>(-5, 5)(rng);
        const auto f = integer_series(rng, tau, first, len);
        const auto g = integer_series(rng, tau, first, len);
        if (!jseries_leibniz_check(f, g).is_zero()) ++bad;
      }
      return mismatches("leibniz", bad, 2 * n);
    });
  }

  if (wanted("commutator_identity")) {
    guarded(r, "commutator_identity", [&] {
      int bad = 0;
      for (int i = 0; i < n; ++i) {
        auto rng = stream(cfg, 21, static_cast<std::uint64_t>(i));
        const Rational& tau = taus[static_cast<std::size_t>(i) % taus.size()];
        const auto x = integer_series(rng, tau, 0, std::uniform_int_distribution<int>(2, 12)(rng));
        if (!(observation_commutator(x) == squared_increment_series(x))) ++bad;
      }
      return mismatches("commutator_identity", bad, n);
    });
  }

  if (wanted("brownian")) {
    guarded(r, "brownian", [&] {
      double worst = 0.0;
      int bad = 0;
      for (int i = 0; i < n; ++i) {
        auto rng = stream(cfg, 22, static_cast<std::uint64_t>(i));
        const double k = uniform(rng, 0.1, 5.0);
        const double tau = uniform(rng, 0.01, 1.0);
        std::vector<int> signs(static_cast<std::size_t>(std::uniform_int_distribution<int>(5, 64)(rng)));
        for (auto& s : signs) s = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
        const double step = std::sqrt(k * tau);
        const double target = step * step / tau;
        const BrownianResult res = brownian_check(signs, k, tau);
        if (!res.pass) ++bad;
        for (double v : res.observed_k) worst = std::max(worst, std::abs(v - target) / target);
      }
      CheckRow row = at_most("brownian", worst, 1e-12 * ts);
      if (bad) {
        row.pass = false;
        row.detail = std::to_string(bad) + " walks failed brownian_check";
      }
      return row;
    });
  }

  if (wanted("heisenberg")) {
    guarded(r, "heisenberg", [&] {
      double worst = 0.0;
      for (int i = 0; i < n; ++i) {
        auto rng = stream(cfg, 23, static_cast<std::uint64_t>(i));
        const int dim = 2 + i % 7;
        const ComplexMatrix psi = random_matrix(rng, dim);
        const ComplexMatrix h = random_hermitian(rng, dim);
        const double dt = uniform(rng, 0.05, 1.0);
        const Residual res = heisenberg_check(psi, h, dt, cfg.hbar);
        worst = std::max(worst, res.value / res.scale);
      }
      return at_most("heisenberg", worst, 1e-12 * ts);
    });
  }

  if (wanted("hamilton")) {
    guarded(r, "hamilton", [&] {
      int bad = 0;
      int total = 0;
      for (int i = 0; i < std::max(1, n / 2); ++i) {
        auto rng = stream(cfg, 24, static_cast<std::uint64_t>(i));
        const int dims = 1 + i % 3;
        const NCPolynomial h = random_nc_polynomial(rng, dims, 3, 4, false);
        for (int k = 1; k <= dims; ++k) {
          const HamiltonResult res = hamilton_check(h, k);
          ++total;
          if (!res.x_equation || !res.p_equation) ++bad;
        }
      }
      return mismatches("hamilton", bad, total);
    });
  }

  if (wanted("curvature")) {
    guarded(r, "curvature", [&] {
      int bad = 0;
      int total = 0;
      for (int i = 0; i < std::max(1, n / 2); ++i) {
        auto rng = stream(cfg, 25, static_cast<std::uint64_t>(i));
        const int dims = 2 + i % 2;
        std::vector<NCPolynomial> a;
        for (int k = 0; k < dims; ++k) a.push_back(random_nc_polynomial(rng, dims, 2, 3, true));
        const NCPolynomial f = random_nc_polynomial(rng, dims, 2, 3, false);
        for (int p = 1; p <= dims; ++p) {
          for (int q = p + 1; q <= dims; ++q) {
            ++total;
            if (!curvature_identity_check(a, f, p, q).is_zero()) ++bad;
          }
        }
      }
      return mismatches("curvature", bad, total);
    });
  }

  if (wanted("confluence")) {
    guarded(r, "confluence", [&] {
      int bad = 0;
      for (int i = 0; i < 10 * n; ++i) {
        auto rng = stream(cfg, 26, static_cast<std::uint64_t>(i));
        const NCPolynomial w = random_nc_polynomial(rng, 3, 4, 1, false);
        const NCPolynomial left = nc_normal_form(w, RewriteOrder::Leftmost);
        const NCPolynomial right = nc_normal_form(w, RewriteOrder::Rightmost);
        const NCPolynomial rand = nc_normal_form(w, RewriteOrder::Random, cfg.seed + static_cast<std::uint64_t>(i));
        const bool normal = std::all_of(left.terms().begin(), left.terms().end(),
                                        [](const auto& t) { return is_normal_word(t.first); });
        if (!(left == right) || !(left == rand) || !normal) ++bad;
      }
      return mismatches("confluence", bad, 10 * n);
    });
  }
  return r;
}

Report run_fiber(const RunConfig& cfg) {
  validate_common(cfg);
  GammaSet g;
  if (cfg.gamma == "pauli") {
    g = pauli_gamma_set();
  } else if (cfg.gamma == "zero") {
    g = zero_gamma_set();
  } else {
    throw ConfigError("unknown --gamma '" + cfg.gamma + "' (pauli, zero)");
  }

  Report r;
  r.command = "fiber";
  r.params.emplace_back("gamma", cfg.gamma);
  common_params(r, cfg);

  guarded(r, "nilpotency", [&] {
    int bad = 0;
    int total = 0;
    for (int a = 0; a < 4; ++a) {
      const auto ga = GrassmannElement::generator(static_cast<Odd>(a));
      ++total;
      if (!(ga * ga).is_zero()) ++bad;
      for (int b = 0; b < 4; ++b) {
        const auto gb = GrassmannElement::generator(static_cast<Odd>(b));
        ++total;
        if (!(ga * gb + gb * ga).is_zero()) ++bad;
      }
    }
    return mismatches("nilpotency", bad, total);
  });

  guarded(r, "graded_leibniz", [&] {
    int bad = 0;
    for (int i = 0; i < 2 * cfg.samples; ++i) {
      auto rng = stream(cfg, 30, static_cast<std::uint64_t>(i));
      const GrassmannElement a = random_grassmann(rng, 4, 2);
      const GrassmannElement b = random_grassmann(rng, 4, 2);
      for (int alpha = 1; alpha <= 2; ++alpha) {
        const GrassmannElement lhs = berezin_partial(a * b, alpha);
        const GrassmannElement db = berezin_partial(b, alpha);
        const GrassmannElement rhs = berezin_partial(a, alpha) * b + a.parity_part(0) * db - a.parity_part(1) * db;
        if (!(lhs == rhs)) {
          ++bad;
          break;
        }
      }
    }
    return mismatches("graded_leibniz", bad, 2 * cfg.samples);
  });

  guarded(r, "jacobian", [&] {
    int bad = 0;
    for (int mu = 0; mu < 4; ++mu) {
      for (int alpha = 1; alpha <= 2; ++alpha) {
        if (!jacobian_check(g, mu, alpha, DerivativeSide::Left).is_zero()) ++bad;
      }
    }
    return mismatches("jacobian", bad, 8);
  });

  guarded(r, "jacobian_right_derivative", [&] {
    int bad = 0;
    for (int mu = 0; mu < 4; ++mu) {
      for (int alpha = 1; alpha <= 2; ++alpha) {
        if (!jacobian_check(g, mu, alpha, DerivativeSide::Right).is_zero()) ++bad;
      }
    }
    return mismatches("jacobian_right_derivative", bad, 8);
  });

  guarded(r, "nabla_superfield", [&] {
    int bad = 0;
    int total = 0;
    std::vector<XPolynomial::Exponents> exps;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        for (int c = 0; c < 4; ++c) {
          for (int d = 0; d < 4; ++d) {
            if (a + b + c + d <= 2) exps.push_back({a, b, c, d});
          }
        }
      }
    }
    for (GrassmannElement::Mask m = 0; m < 4; ++m) {
      for (const auto& e : exps) {
        const Superfield phi(GrassmannElement::basis(m, XPolynomial::monomial(e)));
        const auto res = nabla_superfield_check(phi, g);
        ++total;
        if (!res[0].is_zero() || !res[1].is_zero()) ++bad;
      }
    }
    return mismatches("nabla_superfield", bad, total);
  });
  return r;
}

std::vector<std::string> write_report(const Report& r, const std::string& path, const std::string& format) {
  namespace fs = std::filesystem;
  const fs::path out(path);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::vector<std::string> written;

  const auto open = [&](const fs::path& p) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + p.string());
    written.push_back(p.string());
    return f;
  };

  if (format == "json") {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["status"] = r.pass() ? "pass" : "fail";
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    nlohmann::ordered_json checks = nlohmann::ordered_json::object();
    for (const auto& c : r.checks) {
      nlohmann::ordered_json e;
      e["status"] = c.pass ? "pass" : "fail";
      e["value"] = c.value;
      e["relation"] = c.relation;
      e["limit"] = c.limit;
      if (!c.detail.empty()) e["detail"] = c.detail;
      checks[c.name] = e;
    }
    j["checks"] = checks;
    nlohmann::ordered_json tables = nlohmann::ordered_json::object();
    for (const auto& t : r.tables) {
      nlohmann::ordered_json tj;
      tj["columns"] = t.columns;
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (double v : t.rows[i]) row.push_back(v);
        row.push_back(t.row_pass[i] ? "pass" : "fail");
        rows.push_back(row);
      }
      tj["rows"] = rows;
      tables[t.name] = tj;
    }
    j["tables"] = tables;
    auto f = open(out);
    f << j.dump(2) << '\n';
  } else if (format == "csv") {
    const auto quote = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    {
      auto f = open(out);
      f << "check,value,relation,limit,status,detail\n";
      for (const auto& c : r.checks) {
        f << quote(c.name) << ',' << num(c.value) << ',' << c.relation << ',' << num(c.limit) << ','
          << (c.pass ? "pass" : "fail") << ',' << quote(c.detail) << '\n';
      }
    }
    for (const auto& t : r.tables) {
      fs::path tp = out;
      tp.replace_filename(out.stem().string() + "_" + t.name + ".csv");
      auto f = open(tp);
      for (const auto& c : t.columns) f << c << ',';
      f << "status\n";
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (double v : t.rows[i]) f << num(v) << ',';
        f << (t.row_pass[i] ? "pass" : "fail") << '\n';
      }
    }
  } else {
    throw ConfigError("unknown format '" + format + "' (csv, json)");
  }
  return written;
}

}  // namespace qlab
