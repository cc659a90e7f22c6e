#include "qlab/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlab/error.hpp"
#include "qlab/rng.hpp"

namespace qlab {

Complex pair_prefactor(Complex alpha, Complex beta) {
  return alpha * std::conj(beta) - std::conj(alpha) * beta;
}

ConjugatePair build_pq(const QOscillator& osc, Complex alpha, Complex beta) {
  const auto& a = osc.lowering();
  const auto& ad = osc.raising();
  ConjugatePair pair;
  pair.alpha = alpha;
  pair.beta = beta;
  pair.P = alpha * a + std::conj(alpha) * ad;
  pair.Q = beta * a + std::conj(beta) * ad;
  pair.R = commutator(pair.P, pair.Q);
  return pair;
}

Residual check_deformed_commutator(const ConjugatePair& pair, const QOscillator& osc) {
  const int n = osc.trunc();
  const ComplexMatrix rhs = pair_prefactor(pair.alpha, pair.beta) *
                            (ComplexMatrix::Identity(n, n) + (osc.q() - 1.0) * osc.number_op());
  const ComplexMatrix lhs_block = leading_block(pair.R, n - 1);
  const ComplexMatrix rhs_block = leading_block(rhs, n - 1);
  return {max_abs(lhs_block - rhs_block), std::max(scale_of(lhs_block), scale_of(rhs_block))};
}

UncertaintyReport uncertainty_report(const ConjugatePair& pair, const StateVector& s) {
  UncertaintyReport rep;
  rep.mean_Q = expectation(pair.Q, s);
  rep.mean_P = expectation(pair.P, s);
  rep.var_Q = variance(pair.Q, s);
  rep.var_P = variance(pair.P, s);
  const double abs_r = std::abs(expectation(pair.R, s));
  rep.half_abs_R = 0.5 * abs_r;
  const double product = rep.var_Q * rep.var_P;
  const double bound = 0.25 * abs_r * abs_r;
  rep.slack = product - bound;
  rep.scale = std::max({1.0, product, bound});
  return rep;
}

double CoherentMomentResiduals::max() const { return std::max({var_Q, var_P, commutator}); }

CoherentMomentResiduals coherent_moment_check(const QOscillator& osc, Complex alpha, Complex beta, Complex z) {
  const QCoherentState coh = q_coherent_state(osc, z);
  const ConjugatePair pair = build_pq(osc, alpha, beta);
  const Complex mean_a = expectation(osc.lowering(), coh.state);
  const double deform = 1.0 + (osc.q() - 1.0) * std::norm(mean_a);

  CoherentMomentResiduals res;
  res.var_Q = std::abs(variance(pair.Q, coh.state) - std::norm(beta) * deform);
  res.var_P = std::abs(variance(pair.P, coh.state) - std::norm(alpha) * deform);
  const Complex pq = expectation(pair.P * pair.Q, coh.state);
  const Complex qp = expectation(pair.Q * pair.P, coh.state);
  res.commutator = std::abs((pq - qp) - pair_prefactor(alpha, beta) * deform);
  return res;
}

XPRealization::XPRealization(double q0, double L, int trunc, double hbar)
    : q0_(q0), L_(L), K_(0.0), hbar_(hbar), osc_(q0 * q0, trunc) {
  if (!(q0 > 0.0) || !(L > 0.0) || !(hbar > 0.0)) {
    throw ContractError("XPRealization: q0, L and hbar must be positive");
  }
  K_ = hbar * (q0 * q0 + 1.0) / (4.0 * L);
  const auto& a = osc_.lowering();
  const auto& ad = osc_.raising();
  x_ = L_ * (a + ad);
  p_ = (kI * K_) * (ad - a);
}

ComplexMatrix XPRealization::f_operator() const {
  const double c = (q0_ * q0_ - 1.0) / 4.0;
  return c * ((x_ * x_) / (L_ * L_) + (p_ * p_) / (K_ * K_));
}

double XPRealization::f_scalar(double x_second_moment, double p_second_moment) const {
  return (q0_ * q0_ - 1.0) / 4.0 * (x_second_moment / (L_ * L_) + p_second_moment / (K_ * K_));
}

Residual xp_commutator_check(const XPRealization& r) {
  const int n = r.trunc();
  if (n < 3) throw ContractError("xp_commutator_check: truncation must be at least 3");
  const ComplexMatrix lhs = commutator(r.x(), r.p());
  const ComplexMatrix rhs = (kI * r.hbar()) * (ComplexMatrix::Identity(n, n) + r.f_operator());
  const ComplexMatrix lb = leading_block(lhs, n - 2);
  const ComplexMatrix rb = leading_block(rhs, n - 2);
  return {max_abs(lb - rb), std::max(scale_of(lb), scale_of(rb))};
}

namespace {

struct Moments {
  double mean;
  double spread;
};

// Mean and standard deviation of Hermitian m, computed from the centred
// vector (m - <m>) s to avoid cancellation in <m^2> - <m>^2.
Moments moments(const ComplexMatrix& m, const StateVector& s) {
  if (m.rows() != s.dim()) throw ShapeError("moments: dimension mismatch");
  const ComplexVector ms = m * s.amplitudes();
  const double mean = s.amplitudes().dot(ms).real();
  return {mean, (ms - mean * s.amplitudes()).norm()};
}

}  // namespace

double position_spread(const XPRealization& r, const StateVector& s) { return moments(r.x(), s).spread; }

Slack heisenberg_bound_check(const XPRealization& r, const StateVector& s) {
  if (s.dim() != r.trunc()) throw ShapeError("heisenberg_bound_check: state dimension mismatch");
  const double tail = s.tail_weight(2);
  if (tail > 1e-10) {
    throw TruncationError("heisenberg_bound_check: state has weight " + std::to_string(tail) +
                              " in the top two levels (limit 1e-10)",
                          -1);
  }
  const Moments mx = moments(r.x(), s);
  const Moments mp = moments(r.p(), s);
  const double bound = 0.5 * r.hbar() *
                       (1.0 + r.f_scalar(mx.spread * mx.spread + mx.mean * mx.mean,
                                         mp.spread * mp.spread + mp.mean * mp.mean));
  const double product = mx.spread * mp.spread;
  return {product - bound, std::max({1.0, std::abs(bound), product})};
}

MinimalUncertainty minimal_uncertainty(double q0, double L, double K) {
  if (!(q0 > 1.0)) throw DomainError("minimal_uncertainty: requires q0 > 1");
  const double root = std::sqrt(1.0 - 1.0 / (q0 * q0));
  return {L * root, K * root};
}

ScanResult minimal_uncertainty_scan(const XPRealization& r, int samples, std::uint64_t seed) {
  if (!(r.q0() > 1.0)) throw DomainError("minimal_uncertainty_scan: requires q0 > 1");
  if (samples < 100) throw ContractError("minimal_uncertainty_scan: need at least 100 samples");
  const int n = r.trunc();
  const int interior = n - 2;
  if (interior < 2) throw ContractError("minimal_uncertainty_scan: truncation too small");

  ScanResult out;
  out.dx0 = minimal_uncertainty(r.q0(), r.L(), r.K()).dx0;
  out.min_random = std::numeric_limits<double>::infinity();
  out.min_trial = std::numeric_limits<double>::infinity();

  auto embed = [n](const ComplexVector& head) {
    ComplexVector v = ComplexVector::Zero(n);
    v.head(head.size()) = head;
    return StateVector(std::move(v));
  };

  for (int i = 0; i < samples; ++i) {
    auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
    const double decay = uniform(rng, 0.2, 1.0);
    ComplexVector amps(interior);
    double envelope = 1.0;
    for (int k = 0; k < interior; ++k) {
      amps(k) = random_complex(rng) * envelope;
      envelope *= decay;
    }
    if (amps.norm() == 0.0) continue;
    out.min_random = std::min(out.min_random, position_spread(r, embed(amps)));
    ++out.states_tried;
  }

  auto try_trial = [&](const StateVector& s) {
    out.min_trial = std::min(out.min_trial, position_spread(r, s));
    ++out.states_tried;
  };

  try_trial(StateVector::basis(n, 0));

  // Blocks are limited to sizes where x^2 stays well conditioned in doubles.
  const ComplexMatrix x2 = r.x() * r.x();
  constexpr double kConditionCap = 1e8;
  std::vector<int> blocks;
  for (int k = 4; k <= interior; k += 4) {
    if (max_abs(leading_block(x2, k)) > kConditionCap) break;
    blocks.push_back(k);
  }
  if (blocks.empty()) blocks.push_back(std::min(interior, 2));

  for (int k : blocks) {
    // Gaussians over the eigenbasis of the block of x.
    const HermitianEigen ex = hermitian_eigen(leading_block(r.x(), k));
    for (int w = 0; w < 24; ++w) {
      const double width = r.L() * std::pow(10.0, -2.0 + 3.0 * w / 23.0);
      ComplexVector amp(k);
      for (int j = 0; j < k; ++j) {
        const double lam = ex.values[j];
        amp(j) = std::exp(-lam * lam / (4.0 * width * width));
      }
      const ComplexVector head = ex.vectors * amp;
      if (head.norm() > 1e-300) try_trial(embed(head));
    }
    // Smallest <x^2> attainable with support on the block.
    const HermitianEigen e2 = hermitian_eigen(leading_block(x2, k));
    try_trial(embed(e2.vectors.col(0)));
  }

  out.min_dx = std::min(out.min_random, out.min_trial);
  return out;
}

}  // namespace qlab
