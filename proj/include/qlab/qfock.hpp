#pragma once

#include "qlab/linalg.hpp"
#include "qlab/residual.hpp"

namespace qlab {

/// Deformed integer [n]_q = 1 + q + ... + q^(n-1). Summed directly, so q = 1
/// needs no special case.
double q_number(int n, double q);

/// log([n]_q!) accumulated term by term.
double log_q_factorial(int n, double q);

/// Truncated Fock representation of a, a+ with a a+ - q a+ a = I holding on
/// every level except the last.
class QOscillator {
 public:
  /// Throws ContractError unless q > 0 and trunc >= 2.
  QOscillator(double q, int trunc);

  double q() const noexcept { return q_; }
  int trunc() const noexcept { return trunc_; }
  const ComplexMatrix& lowering() const noexcept { return a_; }
  const ComplexMatrix& raising() const noexcept { return ad_; }
  const ComplexMatrix& number_op() const noexcept { return n_; }

  /// max entry of a a+ - q a+ a - I on the leading (N-1)x(N-1) block.
  Residual relation_residual() const;

 private:
  double q_;
  int trunc_;
  ComplexMatrix a_;
  ComplexMatrix ad_;
  ComplexMatrix n_;
};

inline QOscillator build_q_oscillator(double q, int trunc) { return QOscillator(q, trunc); }

struct QCoherentState {
  Complex z;
  StateVector state;
  double tail_weight;  // probability in the top two retained levels
};

/// Eigenstate of the deformed lowering operator with amplitudes
/// z^n / sqrt([n]_q!). Throws TruncationError (carrying the smallest
/// sufficient truncation, or -1 when none exists) if more than 1e-12 of the
/// probability sits in the top two levels.
QCoherentState q_coherent_state(const QOscillator& osc, Complex z);

}  // namespace qlab
