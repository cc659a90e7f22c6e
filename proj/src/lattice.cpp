#include "qlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qlab/error.hpp"
#include "qlab/linalg.hpp"

namespace qlab {

LatticeProblem make_lattice_problem(const std::function<double(double)>& U, double x_min, double x_max,
                                    double spacing) {
  if (!(spacing > 0.0)) throw ContractError("make_lattice_problem: spacing must be positive");
  if (!(x_max >= x_min)) throw ContractError("make_lattice_problem: empty window");
  // Snap to lattice indices with a small tolerance so that e.g. -10 / 0.1 lands on -100.
  const int first = static_cast<int>(std::ceil(x_min / spacing - 1e-9));
  const int last = static_cast<int>(std::floor(x_max / spacing + 1e-9));
  if (last < first) throw ContractError("make_lattice_problem: window contains no lattice point");
  LatticeProblem p;
  p.spacing = spacing;
  p.first_index = first;
  p.potential.reserve(static_cast<std::size_t>(last - first + 1));
  for (int n = first; n <= last; ++n) p.potential.push_back(U(n * spacing));
  return p;
}

double Tridiagonal::norm() const {
  double best = 0.0;
  const std::size_t n = diagonal.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(offdiagonal[i - 1]);
    if (i + 1 < n) row += std::abs(offdiagonal[i]);
    best = std::max(best, row);
  }
  return best;
}

Tridiagonal assemble_hamiltonian(const LatticeProblem& p) {
  if (!(p.spacing > 0.0)) throw ContractError("assemble_hamiltonian: spacing must be positive");
  if (p.potential.empty()) throw ContractError("assemble_hamiltonian: no lattice points");
  const double inv_l2 = 1.0 / (p.spacing * p.spacing);
  Tridiagonal h;
  h.diagonal.resize(p.potential.size());
  for (std::size_t i = 0; i < p.potential.size(); ++i) h.diagonal[i] = inv_l2 + p.potential[i];
  h.offdiagonal.assign(p.potential.size() - 1, -0.5 * inv_l2);
  return h;
}

SpectrumResult solve_spectrum(const LatticeProblem& p, int levels) {
  if (levels < 1 || levels > p.points()) {
    throw ContractError("solve_spectrum: levels must lie in [1, points]");
  }
  const Tridiagonal h = assemble_hamiltonian(p);
  std::vector<double> all = tridiag_eigen(h.diagonal, h.offdiagonal);
  SpectrumResult out;
  out.eigenvalues.assign(all.begin(), all.begin() + levels);
  out.eigenvectors = tridiag_eigenvectors(h.diagonal, h.offdiagonal, out.eigenvalues);
  out.hamiltonian_norm = h.norm();

  const std::size_t n = h.diagonal.size();
  for (int k = 0; k < levels; ++k) {
    const auto& v = out.eigenvectors[k];
    double worst = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double hv = h.diagonal[i] * v[i];
      if (i > 0) hv += h.offdiagonal[i - 1] * v[i - 1];
      if (i + 1 < n) hv += h.offdiagonal[i] * v[i + 1];
      const double r = hv - out.eigenvalues[k] * v[i];
      acc += r * r;
      worst = std::max(worst, std::abs(r));
    }
    out.max_residual = std::max(out.max_residual, std::sqrt(acc));
  }
  if (out.max_residual > 1e-9 * out.hamiltonian_norm) {
    throw NumericError("solve_spectrum: eigenpair residual exceeds 1e-9 |H|");
  }
  return out;
}

double free_lattice_level(double spacing, int points, int k) {
  return (1.0 - std::cos(k * std::numbers::pi / (points + 1))) / (spacing * spacing);
}

double oracle_level(Oracle oracle, const LatticeProblem& p, int level) {
  switch (oracle) {
    case Oracle::Harmonic:
      return level + 0.5;
    case Oracle::InfiniteWell: {
      const double width = (p.points() + 1) * p.spacing;
      const double k = level + 1.0;
      return k * k * std::numbers::pi * std::numbers::pi / (2.0 * width * width);
    }
    case Oracle::DiscreteFree:
      return free_lattice_level(p.spacing, p.points(), level + 1);
    case Oracle::None:
      break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<ConvergenceRow> convergence_study(const PotentialSpec& potential, double x_min, double x_max,
                                              const std::vector<double>& spacings, int levels) {
  if (spacings.empty()) throw ContractError("convergence_study: no spacings given");
  for (std::size_t i = 1; i < spacings.size(); ++i) {
    if (std::abs(spacings[i] * 2.0 - spacings[i - 1]) > 1e-12 * spacings[i - 1]) {
      throw ContractError("convergence_study: each spacing must be half of the previous one");
    }
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<std::vector<double>> energies;
  std::vector<std::vector<double>> errors;
  for (double l : spacings) {
    const LatticeProblem p = make_lattice_problem(potential.U, x_min, x_max, l);
    const SpectrumResult s = solve_spectrum(p, levels);
    energies.push_back(s.eigenvalues);
    std::vector<double> err(levels, nan);
    if (potential.oracle != Oracle::None) {
      for (int k = 0; k < levels; ++k) err[k] = std::abs(s.eigenvalues[k] - oracle_level(potential.oracle, p, k));
    }
    errors.push_back(std::move(err));
  }
  if (potential.oracle == Oracle::None) {
    for (std::size_t i = 0; i + 1 < spacings.size(); ++i) {
      for (int k = 0; k < levels; ++k) errors[i][k] = std::abs(energies[i][k] - energies[i + 1][k]);
    }
  }

  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    for (int k = 0; k < levels; ++k) {
      double ratio = nan;
      if (i > 0 && std::isfinite(errors[i][k]) && errors[i][k] > 0.0) ratio = errors[i - 1][k] / errors[i][k];
      rows.push_back({spacings[i], k, energies[i][k], errors[i][k], ratio});
    }
  }
  return rows;
}

bool convergence_contract_holds(const std::vector<ConvergenceRow>& rows, Oracle oracle, double ratio_lo,
                                double ratio_hi, double exact_tol) {
  if (oracle == Oracle::DiscreteFree) {
    return std::all_of(rows.begin(), rows.end(), [&](const ConvergenceRow& r) { return r.error <= exact_tol; });
  }
  // The first spacing carries no ratio; without an oracle the second carries
  // none either. Every other row must have a ratio inside the band.
  double first_spacing = rows.empty() ? 0.0 : rows.front().spacing;
  bool any_ratio = false;
  for (const auto& r : rows) {
    if (r.spacing == first_spacing) continue;
    if (std::isnan(r.ratio)) {
      if (oracle == Oracle::None && std::isnan(r.error)) continue;
      return false;
    }
    any_ratio = true;
    if (r.ratio < ratio_lo || r.ratio > ratio_hi) return false;
  }
  return any_ratio;
}

PotentialSpec harmonic_potential() {
  return {"harmonic", [](double x) { return 0.5 * x * x; }, Oracle::Harmonic};
}

PotentialSpec box_potential() {
  return {"box", [](double) { return 0.0; }, Oracle::InfiniteWell};
}

PotentialSpec free_potential() {
  return {"free", [](double) { return 0.0; }, Oracle::DiscreteFree};
}

}  // namespace qlab
