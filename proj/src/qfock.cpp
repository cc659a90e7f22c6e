#include "qlab/qfock.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qlab/error.hpp"

namespace qlab {

double q_number(int n, double q) {
  double sum = 0.0;
  double term = 1.0;
  for (int j = 0; j < n; ++j) {
    sum += term;
    term *= q;
  }
  return sum;
}

double log_q_factorial(int n, double q) {
  double acc = 0.0;
  for (int k = 2; k <= n; ++k) acc += std::log(q_number(k, q));
  return acc;
}

QOscillator::QOscillator(double q, int trunc) : q_(q), trunc_(trunc) {
  if (!(q > 0.0) || !std::isfinite(q)) throw ContractError("QOscillator: q must be a finite positive number");
  if (trunc < 2) throw ContractError("QOscillator: truncation must be at least 2");
  a_ = ComplexMatrix::Zero(trunc, trunc);
  // Running [n]_q keeps construction linear in N.
  double bracket = 0.0;
  double power = 1.0;
  for (int n = 1; n < trunc; ++n) {
    bracket += power;
    power *= q;
    a_(n - 1, n) = std::sqrt(bracket);
  }
  ad_ = a_.adjoint();
  n_ = ad_ * a_;
}

Residual QOscillator::relation_residual() const {
  const ComplexMatrix aad = a_ * ad_;
  const ComplexMatrix ada = q_ * (ad_ * a_);
  const ComplexMatrix rel = aad - ada - ComplexMatrix::Identity(trunc_, trunc_);
  const int k = trunc_ - 1;
  return {max_abs(leading_block(rel, k)),
          std::max(scale_of(leading_block(aad, k)), scale_of(leading_block(ada, k)))};
}

namespace {

constexpr double kTailLimit = 1e-12;
constexpr int kMaxSearchTrunc = 1 << 14;

// log|c_n| for c_n = z^n / sqrt([n]_q!), n = 0..count-1.
std::vector<double> log_magnitudes(double q, double log_abs_z, int count) {
  std::vector<double> out(count);
  double log_fact = 0.0;
  for (int n = 0; n < count; ++n) {
    if (n >= 2) log_fact += std::log(q_number(n, q));
    out[n] = n * log_abs_z - 0.5 * log_fact;
  }
  return out;
}

double tail_of(const std::vector<double>& logs, int count) {
  const double peak = *std::max_element(logs.begin(), logs.begin() + count);
  double total = 0.0;
  double tail = 0.0;
  for (int n = 0; n < count; ++n) {
    const double w = std::exp(2.0 * (logs[n] - peak));
    total += w;
    if (n >= count - 2) tail += w;
  }
  return tail / total;
}

}  // namespace

QCoherentState q_coherent_state(const QOscillator& osc, Complex z) {
  const int n_levels = osc.trunc();
  if (z == Complex(0.0, 0.0)) {
    return {z, StateVector::basis(n_levels, 0), 0.0};
  }
  const double log_abs_z = std::log(std::abs(z));
  const double phase = std::arg(z);
  const auto logs = log_magnitudes(osc.q(), log_abs_z, n_levels);
  const double tail = tail_of(logs, n_levels);
  if (tail > kTailLimit) {
    int required = -1;
    // Incremental search; bracket growth makes this terminate quickly unless
    // the series diverges (|z|^2 >= 1/(1-q) for q < 1).
    std::vector<double> more = log_magnitudes(osc.q(), log_abs_z, std::min(4 * n_levels + 64, kMaxSearchTrunc));
    for (int m = n_levels + 1; m <= static_cast<int>(more.size()); ++m) {
      if (tail_of(more, m) <= kTailLimit) {
        required = m;
        break;
      }
    }
    throw TruncationError("q_coherent_state: tail weight " + std::to_string(tail) + " exceeds 1e-12 at N=" +
                              std::to_string(n_levels) +
                              (required > 0 ? "; need N >= " + std::to_string(required)
                                            : "; no truncation suffices for this z"),
                          required);
  }
  const double peak = *std::max_element(logs.begin(), logs.end());
  ComplexVector amps(n_levels);
  for (int n = 0; n < n_levels; ++n) {
    const double mag = std::exp(logs[n] - peak);
    amps(n) = phase == 0.0 ? Complex(mag, 0.0) : std::polar(mag, n * phase);
  }
  return {z, StateVector(std::move(amps)), tail};
}

}  // namespace qlab
