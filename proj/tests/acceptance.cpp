// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qlab/qfock.hpp"
#include "qlab/rng.hpp"
#include "qlab/suites.hpp"
#include "qlab/uncertainty.hpp"

namespace fs = std::filesystem;
using namespace qlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed >= budget_s) {
    out.pass = false;
    out.detail += "; over time budget";
  }
  if (!out.pass) ++failures;
  std::printf("%s %2d %-34s %s [%.2f s of %.0f s]\n", out.pass ? "PASS" : "FAIL", id, title.c_str(),
              out.detail.c_str(), elapsed, budget_s);
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Collects the named rows of a report; every one must be present and pass.
Outcome require_checks(const Report& r, const std::vector<std::string>& names) {
  Outcome out{true, ""};
  for (const auto& name : names) {
    const CheckRow* row = nullptr;
    for (const auto& c : r.checks) {
      if (c.name == name) row = &c;
    }
    if (!out.detail.empty()) out.detail += ", ";
    if (row == nullptr) {
      out.pass = false;
      out.detail += name + " missing";
      continue;
    }
    out.pass = out.pass && row->pass;
    out.detail += name + " " + sci(row->value) + " " + row->relation + " " + sci(row->limit);
  }
  return out;
}

Outcome require_tables(const Report& r, Outcome out) {
  for (const auto& t : r.tables) {
    for (bool ok : t.row_pass) {
      if (!ok) {
        out.pass = false;
        out.detail += "; failing row in " + t.name;
        return out;
      }
    }
  }
  return out;
}

const std::vector<double> kQ{0.3, 0.5, 0.9, 1.0, 1.5, 2.0};

int exit_status(const std::string& cmd) {
  const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Every file under `a` must exist under `b` with identical bytes, and vice versa.
bool same_tree(const fs::path& a, const fs::path& b, int& files) {
  files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const fs::path other = b / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) return false;
    ++files;
  }
  return files == static_cast<int>(std::distance(fs::directory_iterator(b), fs::directory_iterator{}));
}

}  // namespace

int main() {
  const std::uint64_t seed = 20240601;

  criterion(1, "deformed commutator", 1.0, [] {
    double worst = 0.0;
    for (double q : kQ) {
      for (int n : {8, 32, 128}) {
        const Residual res = QOscillator(q, n).relation_residual();
        worst = std::max(worst, res.value / res.scale);
      }
    }
    return Outcome{worst <= 1e-12, "max residual/scale " + sci(worst) + " <= 1e-12"};
  });

  criterion(2, "pq operator identity", 1.0, [&] {
    double worst = 0.0;
    for (double q : kQ) {
      const QOscillator osc(q, 32);
      for (int i = 0; i < 50; ++i) {
        auto rng = stream_for(seed, 200 + i);
        const Complex alpha = random_complex(rng);
        const Complex beta = random_complex(rng);
        const Residual res = check_deformed_commutator(build_pq(osc, alpha, beta), osc);
        worst = std::max(worst, res.value / res.scale);
      }
    }
    return Outcome{worst <= 1e-12, "max residual/scale " + sci(worst) + " <= 1e-12"};
  });

  criterion(3, "uncertainty inequality", 5.0, [&] {
    double worst = std::numeric_limits<double>::infinity();
    for (double q : kQ) {
      const QOscillator osc(q, 32);
      for (int i = 0; i < 1000; ++i) {
        auto rng = stream_for(seed, 300000 + i);
        const Complex alpha = random_complex(rng);
        const Complex beta = random_complex(rng);
        const UncertaintyReport rep = uncertainty_report(build_pq(osc, alpha, beta), random_state(rng, 32));
        worst = std::min(worst, rep.slack / rep.scale);
      }
    }
    const double h = 1.0 / std::sqrt(2.0);
    const QOscillator canonical(1.0, 32);
    const UncertaintyReport vac =
        uncertainty_report(build_pq(canonical, Complex(0.0, h), Complex(h, 0.0)), StateVector::basis(32, 0));
    const bool ok = worst >= -1e-10 && std::abs(vac.slack) <= 1e-12;
    return Outcome{ok, "min slack/scale " + sci(worst) + " >= -1e-10, vacuum |slack| " + sci(std::abs(vac.slack)) +
                           " <= 1e-12"};
  });

  criterion(4, "coherent-state moments", 1.0, [&] {
    double worst = 0.0;
    for (double q : kQ) {
      const QOscillator osc(q, 64);
      for (int i = 0; i < 10; ++i) {
        auto rng = stream_for(seed, 400 + i);
        const Complex z = std::polar(0.8 * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2.0 * M_PI));
        worst = std::max(worst, coherent_moment_check(osc, random_complex(rng), random_complex(rng), z).max());
      }
      worst = std::max(worst, coherent_moment_check(osc, {0.3, 1.0}, {1.0, -0.2}, {0.8, 0.0}).max());
    }
    return Outcome{worst <= 1e-8, "max residual " + sci(worst) + " <= 1e-8"};
  });

  criterion(5, "xp operator identity", 1.0, [] {
    double worst = 0.0;
    for (double q0 : {1.0, 1.3, 2.0}) {
      const Residual res = xp_commutator_check(XPRealization(q0, 1.0, 64, 1.0));
      worst = std::max(worst, res.value / res.scale);
    }
    return Outcome{worst <= 1e-10, "max residual/scale " + sci(worst) + " <= 1e-10"};
  });

  criterion(6, "deformed Heisenberg bound", 5.0, [&] {
    double worst = std::numeric_limits<double>::infinity();
    for (double q0 : {1.1, 1.5, 2.0}) {
      const XPRealization xp(q0, 1.0, 64, 1.0);
      for (int i = 0; i < 500; ++i) {
        auto rng = stream_for(seed, 600000 + i);
        ComplexVector v = ComplexVector::Zero(64);
        for (int k = 0; k < 62; ++k) v(k) = random_complex(rng);
        const Slack sl = heisenberg_bound_check(xp, StateVector(std::move(v)));
        worst = std::min(worst, sl.value / sl.scale);
      }
    }
    return Outcome{worst >= -1e-8, "min slack/scale " + sci(worst) + " >= -1e-8"};
  });

  criterion(7, "minimal position spread", 30.0, [&] {
    const XPRealization xp(1.2, 1.0, 128, 1.0);
    const ScanResult scan = minimal_uncertainty_scan(xp, 2000, seed);
    const double expected_floor = std::sqrt(1.0 - 1.0 / (1.2 * 1.2));
    const bool ok = scan.states_tried >= 2000 && std::abs(scan.dx0 - expected_floor) <= 1e-12 &&
                    scan.min_dx >= scan.dx0 * (1.0 - 1e-6) && scan.min_trial <= 1.05 * scan.dx0;
    return Outcome{ok, std::to_string(scan.states_tried) + " states, min/floor " + sci(scan.min_dx / scan.dx0) +
                           ", trial/floor " + sci(scan.min_trial / scan.dx0)};
  });

  RunConfig qc;
  qc.seed = seed;
  criterion(8, "exchange algebra", 1.0,
            [&] { return require_checks(run_qcalc(qc), {"exchange_commutator", "power_exchange"}); });
  criterion(9, "shift identity and Leibniz defect", 1.0,
            [&] { return require_checks(run_qcalc(qc), {"derivative_shift_identity", "modified_leibniz"}); });
  criterion(10, "hyperplane correspondence", 1.0, [&] { return require_checks(run_qcalc(qc), {"correspondence"}); });

  criterion(11, "lattice convergence", 10.0, [&] {
    RunConfig lc;
    lc.preset = "harmonic";
    const Report harmonic = run_lattice(lc);
    lc.preset = "free";
    const Report free = run_lattice(lc);
    Outcome a = require_tables(harmonic, require_checks(harmonic, {"ratio_band", "convergence_contract"}));
    Outcome b = require_tables(free, require_checks(free, {"discrete_exact", "convergence_contract"}));
    return Outcome{a.pass && b.pass, "harmonic " + a.detail + "; free " + b.detail};
  });

  RunConfig nc;
  nc.seed = seed;
  nc.samples = 100;
  criterion(12, "time calculus", 2.0, [&] {
    Report r;
    for (const char* s : {"leibniz", "commutator_identity", "brownian"}) {
      nc.suite = s;
      for (auto& c : run_nc(nc).checks) r.checks.push_back(std::move(c));
    }
    return require_checks(r, {"leibniz", "commutator_identity", "brownian"});
  });
  criterion(13, "matrix Heisenberg equation", 1.0, [&] {
    nc.suite = "heisenberg";
    return require_checks(run_nc(nc), {"heisenberg"});
  });
  criterion(14, "symbolic algebra", 30.0, [&] {
    Report r;
    for (const char* s : {"hamilton", "curvature", "confluence"}) {
      nc.suite = s;
      for (auto& c : run_nc(nc).checks) r.checks.push_back(std::move(c));
    }
    return require_checks(r, {"hamilton", "curvature", "confluence"});
  });

  criterion(15, "Grassmann fiber", 2.0, [&] {
    RunConfig fc;
    fc.gamma = "pauli";
    return require_checks(run_fiber(fc), {"jacobian", "nabla_superfield"});
  });

  criterion(16, "CLI determinism and exit codes", 10.0, [] {
    const fs::path root = fs::temp_directory_path() / ("qlab_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    const std::string bin = QLAB_BINARY;
    const auto run = [&](const std::string& dir, const std::string& args) {
      return exit_status(bin + " " + args + " --out " + (root / dir).string());
    };
    std::vector<std::string> problems;
    int files_total = 0;
    const std::vector<std::pair<std::string, std::string>> configs{
        {"u.csv", "uncertainty --q 0.5 --seed 9 --format csv"},
        {"x.json", "uncertainty --q0 1.3 --trunc 48 --seed 9 --format json"},
        {"nc.json", "nc --seed 9 --samples 20 --format json"},
        {"lat.csv", "lattice --preset harmonic --format csv"}};
    for (const auto& [name, args] : configs) {
      const int first = run("a/" + name.substr(0, name.find('.')) + "/" + name, args);
      const int second = run("b/" + name.substr(0, name.find('.')) + "/" + name, args);
      if (first != 0 || second != 0) problems.push_back(name + " exit " + std::to_string(first));
      int files = 0;
      const std::string sub = name.substr(0, name.find('.'));
      if (!same_tree(root / "a" / sub, root / "b" / sub, files)) problems.push_back(name + " reports differ");
      files_total += files;
    }
    const int perturbed = run("f/fail.json", "uncertainty --q 0.5 --seed 9 --tol-scale -1 --format json");
    if (perturbed != 1) problems.push_back("perturbed run exit " + std::to_string(perturbed));
    const int bad_args = exit_status(bin + " uncertainty --trunc 16");
    if (bad_args != 2) problems.push_back("invalid-argument exit " + std::to_string(bad_args));
    fs::remove_all(root);
    std::string detail = std::to_string(files_total) + " report files byte-identical, exit codes 0/1/2";
    if (!problems.empty()) {
      detail.clear();
      for (const auto& p : problems) detail += (detail.empty() ? "" : ", ") + p;
    }
    return Outcome{problems.empty(), detail};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
