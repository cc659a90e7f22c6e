#include <doctest.h>

#include <cmath>

#include "qlab/error.hpp"
#include "qlab/lattice.hpp"

using namespace qlab;

namespace {

const auto kHarmonic = [](double x) { return 0.5 * x * x; };

}  // namespace

TEST_CASE("hamiltonian assembly") {
  LatticeProblem single{1.0, 0, {2.5}};
  const auto h = assemble_hamiltonian(single);
  CHECK(h.diagonal == std::vector<double>{3.5});
  CHECK(h.offdiagonal.empty());

  const auto p = make_lattice_problem([](double) { return 0.0; }, 0.0, 1.0, 0.25);
  CHECK(p.points() == 5);
  const auto free = assemble_hamiltonian(p);
  for (double d : free.diagonal) CHECK(d == 16.0);
  for (double o : free.offdiagonal) CHECK(o == -8.0);
}

TEST_CASE("free spectrum matches the closed form") {
  LatticeProblem p{1.0, 0, std::vector<double>(5, 0.0)};
  const auto s = solve_spectrum(p, 5);
  CHECK(s.eigenvalues[0] == doctest::Approx(0.1339746).epsilon(1e-7));
  for (int k = 1; k <= 5; ++k) {
    CHECK(std::abs(s.eigenvalues[k - 1] - (1.0 - std::cos(k * M_PI / 6.0))) <= 1e-12);
    CHECK(free_lattice_level(1.0, 5, k) == doctest::Approx(1.0 - std::cos(k * M_PI / 6.0)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(solve_spectrum(p, 6), ContractError);
}

TEST_CASE("harmonic ground state and convergence") {
  const auto p05 = make_lattice_problem(kHarmonic, -10.0, 10.0, 0.05);
  const auto p025 = make_lattice_problem(kHarmonic, -10.0, 10.0, 0.025);
  const double e05 = solve_spectrum(p05, 1).eigenvalues[0];
  const double e025 = solve_spectrum(p025, 1).eigenvalues[0];
  CHECK(std::abs(e05 - 0.5) <= 2e-4);
  const double ratio = std::abs(e05 - 0.5) / std::abs(e025 - 0.5);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);

  const auto wide = make_lattice_problem(kHarmonic, -20.0, 20.0, 0.05);
  CHECK(std::abs(solve_spectrum(wide, 1).eigenvalues[0] - e05) <= 1e-10);
}

TEST_CASE("spectrum properties") {
  const auto p = make_lattice_problem([](double x) { return 0.5 * x * x + 0.1 * x * x * x * x; }, -6.0, 6.0, 0.1);
  const auto s = solve_spectrum(p, 6);
  CHECK(s.max_residual <= 1e-9 * s.hamiltonian_norm);
  for (std::size_t i = 0; i < s.eigenvectors.size(); ++i) {
    for (std::size_t j = 0; j < s.eigenvectors.size(); ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < s.eigenvectors[i].size(); ++k) dot += s.eigenvectors[i][k] * s.eigenvectors[j][k];
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-9);
    }
  }
  // symmetric potential: eigenvectors alternate even / odd about the centre
  const int n = p.points();
  for (std::size_t level = 0; level < s.eigenvectors.size(); ++level) {
    const double parity = level % 2 == 0 ? 1.0 : -1.0;
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(s.eigenvectors[level][k] - parity * s.eigenvectors[level][n - 1 - k]) <= 1e-8);
    }
  }
  // constant shift of U shifts every level by the same constant
  LatticeProblem shifted = p;
  for (auto& u : shifted.potential) u += 3.25;
  const auto t = solve_spectrum(shifted, 6);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(t.eigenvalues[k] - s.eigenvalues[k] - 3.25) <= 1e-10);
  // assembled matrix is symmetric by construction: one off-diagonal array serves both sides
  const auto h = assemble_hamiltonian(p);
  CHECK(h.offdiagonal.size() + 1 == h.diagonal.size());
}

TEST_CASE("convergence study") {
  const auto rows = convergence_study(harmonic_potential(), -10.0, 10.0, {0.1, 0.05, 0.025}, 4);
  REQUIRE(rows.size() == 12);
  for (const auto& r : rows) {
    CHECK(std::abs(r.error - std::abs(r.eigenvalue - (r.level + 0.5))) <= 1e-15);
    if (r.spacing < 0.1) {
      CHECK(r.ratio >= 3.5);
      CHECK(r.ratio <= 4.5);
    } else {
      CHECK(std::isnan(r.ratio));
    }
  }
  CHECK(convergence_contract_holds(rows, Oracle::Harmonic));

  const auto free = convergence_study(free_potential(), 0.0, 1.0, {0.1, 0.05, 0.025}, 4);
  for (const auto& r : free) CHECK(r.error <= 1e-9);
  CHECK(convergence_contract_holds(free, Oracle::DiscreteFree));

  // walls just outside the window ends keep the well width fixed at 1
  const auto box = convergence_study(box_potential(), 1e-7, 1.0 - 1e-7, {0.1, 0.05, 0.025}, 3);
  for (const auto& r : box) {
    const double oracle = (r.level + 1) * (r.level + 1) * M_PI * M_PI / 2.0;
    CHECK(std::abs(r.error - std::abs(r.eigenvalue - oracle)) <= 1e-12 * oracle);
  }
  CHECK(convergence_contract_holds(box, Oracle::InfiniteWell));

  CHECK_THROWS_AS(convergence_study(harmonic_potential(), -10.0, 10.0, {0.1, 0.04}, 2), ContractError);
  CHECK_THROWS_AS(convergence_study(harmonic_potential(), -10.0, 10.0, {0.05, 0.1}, 2), ContractError);
}

TEST_CASE("oracle-free convergence uses successive differences") {
  PotentialSpec quartic{"quartic", [](double x) { return x * x * x * x; }, Oracle::None};
  const auto rows = convergence_study(quartic, -5.0, 5.0, {0.1, 0.05, 0.025, 0.0125}, 2);
  int ratios = 0;
  for (const auto& r : rows) {
    if (r.spacing == 0.0125) CHECK(std::isnan(r.error));
    if (!std::isnan(r.ratio)) {
      ++ratios;
      CHECK(r.ratio >= 3.5);
      CHECK(r.ratio <= 4.5);
    }
  }
  CHECK(ratios == 2 * 2);
}
