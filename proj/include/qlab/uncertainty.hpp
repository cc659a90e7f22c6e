#pragma once

#include <cstdint>

#include "qlab/linalg.hpp"
#include "qlab/qfock.hpp"
#include "qlab/residual.hpp"

namespace qlab {

/// Hermitian pair P = alpha a + conj(alpha) a+, Q = beta a + conj(beta) a+
/// and their commutator R = [P, Q].
struct ConjugatePair {
  ComplexMatrix P;
  ComplexMatrix Q;
  Complex alpha;
  Complex beta;
  ComplexMatrix R;
};

ConjugatePair build_pq(const QOscillator& osc, Complex alpha, Complex beta);

/// alpha conj(beta) - conj(alpha) beta, the prefactor of [P, Q].
Complex pair_prefactor(Complex alpha, Complex beta);

/// [P,Q] against (alpha conj(beta) - conj(alpha) beta)(I + (q-1) a+ a) on the
/// leading (N-1)x(N-1) block.
Residual check_deformed_commutator(const ConjugatePair& pair, const QOscillator& osc);

struct UncertaintyReport {
  Complex mean_Q;
  Complex mean_P;
  double var_Q = 0.0;
  double var_P = 0.0;
  double half_abs_R = 0.0;  // |<R>| / 2
  double slack = 0.0;       // var_Q var_P - |<R>|^2 / 4
  double scale = 1.0;
};

UncertaintyReport uncertainty_report(const ConjugatePair& pair, const StateVector& s);

struct CoherentMomentResiduals {
  double var_Q = 0.0;
  double var_P = 0.0;
  double commutator = 0.0;

  double max() const;
};

/// Second moments of P, Q on the q-coherent state |z> against the closed
/// forms |beta|^2 (1 + (q-1)|z|^2), |alpha|^2 (1 + (q-1)|z|^2) and
/// (alpha conj(beta) - conj(alpha) beta)(1 + (q-1)|z|^2).
CoherentMomentResiduals coherent_moment_check(const QOscillator& osc, Complex alpha, Complex beta, Complex z);

/// x = L (a + a+), p = i K (a+ - a) over an oscillator with deformation
/// q0^2, where K L = (hbar / 4)(q0^2 + 1).
class XPRealization {
 public:
  XPRealization(double q0, double L, int trunc, double hbar = 1.0);

  double q0() const noexcept { return q0_; }
  double L() const noexcept { return L_; }
  double K() const noexcept { return K_; }
  double hbar() const noexcept { return hbar_; }
  int trunc() const noexcept { return osc_.trunc(); }
  const QOscillator& oscillator() const noexcept { return osc_; }
  const ComplexMatrix& x() const noexcept { return x_; }
  const ComplexMatrix& p() const noexcept { return p_; }

  /// Operator f = ((q0^2 - 1)/4)(x^2/L^2 + p^2/K^2).
  ComplexMatrix f_operator() const;

  /// Scalar f evaluated at given second moments of x and p.
  double f_scalar(double x_second_moment, double p_second_moment) const;

 private:
  double q0_;
  double L_;
  double K_;
  double hbar_;
  QOscillator osc_;
  ComplexMatrix x_;
  ComplexMatrix p_;
};

inline XPRealization build_xp(double q0, double L, int trunc, double hbar = 1.0) {
  return XPRealization(q0, L, trunc, hbar);
}

/// [x,p] against i hbar (I + f) on the leading (N-2)x(N-2) block.
Residual xp_commutator_check(const XPRealization& r);

/// Delta x Delta p - (hbar/2)[1 + f((Dx)^2 + <x>^2, (Dp)^2 + <p>^2)].
/// Throws TruncationError when more than 1e-10 of the state lies in the top
/// two levels.
Slack heisenberg_bound_check(const XPRealization& r, const StateVector& s);

/// Standard deviation of x in state s.
double position_spread(const XPRealization& r, const StateVector& s);

struct MinimalUncertainty {
  double dx0;
  double dp0;
};

/// L sqrt(1 - q0^-2), K sqrt(1 - q0^-2). Throws DomainError for q0 <= 1.
MinimalUncertainty minimal_uncertainty(double q0, double L, double K);

struct ScanResult {
  double dx0 = 0.0;
  double min_dx = 0.0;         // over everything tried
  double min_random = 0.0;     // over the random interior states
  double min_trial = 0.0;      // over the deterministic trial family
  int states_tried = 0;
};

/// Searches for small Delta x over `samples` random interior-supported
/// states plus a deterministic trial family (deformed vacuum, Gaussians over
/// the eigenbasis of a leading block of x, and minimum-<x^2> states of
/// leading blocks). Throws DomainError for q0 <= 1, ContractError for
/// samples < 100.
ScanResult minimal_uncertainty_scan(const XPRealization& r, int samples, std::uint64_t seed);

}  // namespace qlab
