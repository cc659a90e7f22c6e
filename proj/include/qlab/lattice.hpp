#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qlab {

/// Discrete Schrodinger problem on x_n = n * spacing, n = first..first+points-1,
/// with the wavefunction pinned to zero just outside the window. Units are
/// hbar = m = 1.
struct LatticeProblem {
  double spacing = 1.0;
  int first_index = 0;
  std::vector<double> potential;  // U(x_n)

  int points() const { return static_cast<int>(potential.size()); }
  double x_at(int k) const { return (first_index + k) * spacing; }
};

/// Samples U on every lattice point inside [x_min, x_max].
LatticeProblem make_lattice_problem(const std::function<double(double)>& U, double x_min, double x_max,
                                    double spacing);

struct Tridiagonal {
  std::vector<double> diagonal;
  std::vector<double> offdiagonal;

  /// Max absolute row sum.
  double norm() const;
};

/// diagonal 1/l^2 + U(x_n), off-diagonal -1/(2 l^2).
Tridiagonal assemble_hamiltonian(const LatticeProblem& p);

struct SpectrumResult {
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // orthonormal, one per eigenvalue
  double max_residual = 0.0;                      // max |H v - E v|
  double hamiltonian_norm = 0.0;
};

/// Lowest `levels` eigenpairs. ContractError if levels > points,
/// NumericError if any pair misses |Hv - Ev| <= 1e-9 |H|.
SpectrumResult solve_spectrum(const LatticeProblem& p, int levels);

/// Closed-form spectrum of the free lattice Hamiltonian with n points:
/// (1/l^2)(1 - cos(k pi / (n + 1))), k = 1..n.
double free_lattice_level(double spacing, int points, int k);

enum class Oracle {
  Harmonic,      // E_n = n + 1/2 for U = x^2 / 2
  InfiniteWell,  // E_n = (n+1)^2 pi^2 / (2 W^2), W = (points + 1) spacing
  DiscreteFree,  // the exact lattice spectrum of U = 0
  None,          // no reference; successive differences are compared
};

struct PotentialSpec {
  std::string name;
  std::function<double(double)> U;
  Oracle oracle = Oracle::None;
};

/// Reference energy for `level` (0-based) under the given oracle.
double oracle_level(Oracle oracle, const LatticeProblem& p, int level);

struct ConvergenceRow {
  double spacing;
  int level;
  double eigenvalue;
  double error;  // |E - reference|, or |E_h - E_{h/2}| without an oracle (NaN on the finest spacing)
  double ratio;  // error at the previous spacing / error here; NaN when undefined
};

/// Solves the problem on [x_min, x_max] for each spacing. Spacings must be
/// strictly descending and each exactly half of its predecessor
/// (ContractError otherwise). Rows are ordered by spacing, then level.
std::vector<ConvergenceRow> convergence_study(const PotentialSpec& potential, double x_min, double x_max,
                                              const std::vector<double>& spacings, int levels);

/// Contract of a convergence table: ratios in [ratio_lo, ratio_hi] for
/// oracle-less and continuum oracles; errors <= exact_tol for DiscreteFree.
bool convergence_contract_holds(const std::vector<ConvergenceRow>& rows, Oracle oracle, double ratio_lo = 3.5,
                                double ratio_hi = 4.5, double exact_tol = 1e-9);

PotentialSpec harmonic_potential();
PotentialSpec box_potential();
PotentialSpec free_potential();

}  // namespace qlab
