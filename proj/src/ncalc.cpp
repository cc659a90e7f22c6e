#include "qlab/ncalc.hpp"

#include <cmath>

#include "qlab/error.hpp"

namespace qlab {

ComplexMatrix nabla_matrix(const ComplexMatrix& f, const ComplexMatrix& n) { return commutator(f, n); }

Residual heisenberg_check(const ComplexMatrix& psi, const ComplexMatrix& h, double dt, double hbar) {
  if (!(dt > 0.0) || !(hbar > 0.0)) throw ContractError("heisenberg_check: dt and hbar must be positive");
  if (psi.rows() != psi.cols() || h.rows() != h.cols() || psi.rows() != h.rows()) {
    throw ShapeError("heisenberg_check: operands must be square of equal dimension");
  }
  if (hermiticity_defect(h) > 1e-10 * scale_of(h)) throw ContractError("heisenberg_check: H not Hermitian");
  const auto n = psi.rows();
  const ComplexMatrix shift = ComplexMatrix::Identity(n, n) + h * (dt / (kI * hbar));
  const ComplexMatrix nabla = commutator(psi, shift / dt);
  const ComplexMatrix lhs = (kI * hbar) * nabla;
  const ComplexMatrix rhs = commutator(psi, h);
  return {max_abs(lhs - rhs), std::max(scale_of(lhs), scale_of(rhs))};
}

BrownianResult brownian_check(const TimeSeries<double>& x, double k) {
  if (!(k > 0.0)) throw ContractError("brownian_check: k must be positive");
  const JSeries<double> comm = observation_commutator(x);
  BrownianResult out;
  const auto& terms = comm.terms();
  if (terms.size() != 1 || terms.begin()->first != 1) {
    out.pass = false;
    return out;
  }
  const auto& coeff = terms.begin()->second;
  for (int t = coeff.first_index(); t <= coeff.last_index(); ++t) {
    const double v = coeff.at(t);
    out.observed_k.push_back(v);
    if (std::abs(v - k) > 1e-12 * k) out.failing_ticks.push_back(t);
  }
  out.pass = out.failing_ticks.empty();
  return out;
}

BrownianResult brownian_check(const std::vector<int>& signs, double k, double tau) {
  if (signs.empty()) throw ContractError("brownian_check: empty sign list");
  if (!(k > 0.0) || !(tau > 0.0)) throw ContractError("brownian_check: k and tau must be positive");
  const double step = std::sqrt(k * tau);
  std::vector<double> walk{0.0};
  for (int s : signs) {
    if (s != 1 && s != -1) throw ContractError("brownian_check: signs must be +1 or -1");
    walk.push_back(walk.back() + s * step);
  }
  return brownian_check(TimeSeries<double>(tau, 0, std::move(walk)), k);
}

HamiltonResult hamilton_check(const NCPolynomial& h, int i) {
  HamiltonResult out;
  out.dx_dt = nc_commutator(NCPolynomial::X(i), h);
  out.dp_dt = nc_commutator(NCPolynomial::P(i), h);
  out.x_equation = out.dx_dt == formal_partial_p(h, i);
  out.p_equation = out.dp_dt == -formal_partial_x(h, i);
  return out;
}

namespace {

const NCPolynomial& connection(const std::vector<NCPolynomial>& a, int i) {
  if (i < 1 || i > static_cast<int>(a.size())) throw ContractError("gauge: connection index out of range");
  return a[static_cast<std::size_t>(i - 1)];
}

void require_x_only(const std::vector<NCPolynomial>& a) {
  for (const auto& ai : a) {
    if (!nc_normal_form(ai).x_only()) {
      throw ContractError("gauge: connection components must be polynomials in X only");
    }
  }
}

}  // namespace

NCPolynomial gauge_curvature(const std::vector<NCPolynomial>& a, int i, int j) {
  require_x_only(a);
  const NCPolynomial& ai = connection(a, i);
  const NCPolynomial& aj = connection(a, j);
  return nc_normal_form(partial_x(aj, i) - partial_x(ai, j) + nc_commutator(ai, aj));
}

NCPolynomial covariant_nabla(const NCPolynomial& f, const std::vector<NCPolynomial>& a, int i) {
  return nc_commutator(f, NCPolynomial::P(i) - connection(a, i));
}

NCPolynomial curvature_identity_check(const std::vector<NCPolynomial>& a, const NCPolynomial& f, int i, int j) {
  const NCPolynomial r = gauge_curvature(a, i, j);
  const NCPolynomial lhs =
      covariant_nabla(covariant_nabla(f, a, j), a, i) - covariant_nabla(covariant_nabla(f, a, i), a, j);
  return nc_normal_form(lhs - nc_commutator(r, f));
}

}  // namespace qlab
