#pragma once

#include <vector>

#include "qlab/jseries.hpp"
#include "qlab/linalg.hpp"
#include "qlab/ncpoly.hpp"
#include "qlab/residual.hpp"

namespace qlab {

/// nabla_N F = [F, N].
ComplexMatrix nabla_matrix(const ComplexMatrix& f, const ComplexMatrix& n);

/// With J = I + H dt / (i hbar) and nabla psi = [psi, J / dt], returns the
/// max entry of i hbar nabla psi - [psi, H].
Residual heisenberg_check(const ComplexMatrix& psi, const ComplexMatrix& h, double dt, double hbar);

struct BrownianResult {
  bool pass = false;
  std::vector<double> observed_k;  // coefficient of J in [X, nabla X], per tick
  std::vector<int> failing_ticks;  // ticks whose coefficient misses k by more than 1e-12 relative
};

/// Tests [X, nabla X] = J k on an existing series.
BrownianResult brownian_check(const TimeSeries<double>& x, double k);

/// Builds the walk X_0 = 0, X_{t+1} = X_t + sign_t sqrt(k tau) and tests it.
BrownianResult brownian_check(const std::vector<int>& signs, double k, double tau);

struct HamiltonResult {
  NCPolynomial dx_dt;  // [X_i, H]
  NCPolynomial dp_dt;  // [P_i, H]
  bool x_equation = false;  // [X_i, H] == dH/dP_i
  bool p_equation = false;  // [P_i, H] == -dH/dX_i
};

/// Time derivatives of X_i, P_i under H by commutators, compared with the
/// term-by-term derivatives of H.
HamiltonResult hamilton_check(const NCPolynomial& h, int i);

/// R_ij = d_i A_j - d_j A_i + [A_i, A_j] with d_i = [., P_i]. `a[k]` is A_{k+1}
/// and must be X-only (ContractError otherwise).
NCPolynomial gauge_curvature(const std::vector<NCPolynomial>& a, int i, int j);

/// nabla_i F = [F, P_i - A_i].
NCPolynomial covariant_nabla(const NCPolynomial& f, const std::vector<NCPolynomial>& a, int i);

/// [nabla_i, nabla_j] F - [R_ij, F], in normal form.
NCPolynomial curvature_identity_check(const std::vector<NCPolynomial>& a, const NCPolynomial& f, int i, int j);

}  // namespace qlab
