#include "qlab/fiber.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "qlab/error.hpp"

namespace qlab {

namespace {

constexpr int kGenerators = 4;
constexpr GrassmannElement::Mask kThetaBarMask = 0b1100;

void require_mu(int mu) {
  if (mu < 0 || mu > 3) throw ContractError("spacetime index must be 0..3");
}

void require_alpha(int alpha) {
  if (alpha != 1 && alpha != 2) throw ContractError("spinor index must be 1 or 2");
}

// Sign of reordering the concatenation (a)(b) into ascending generator order:
// one transposition per pair (i in a, j in b) with i > j.
int merge_sign(GrassmannElement::Mask a, GrassmannElement::Mask b) {
  int swaps = 0;
  for (int j = 0; j < kGenerators; ++j) {
    if (b & (1u << j)) swaps += std::popcount(static_cast<unsigned>(a >> (j + 1)));
  }
  return swaps % 2 == 0 ? 1 : -1;
}

}  // namespace

// --------------------------------------------------------------- XPolynomial

XPolynomial XPolynomial::constant(ExactComplex c) { return monomial({0, 0, 0, 0}, std::move(c)); }

XPolynomial XPolynomial::coordinate(int mu) {
  require_mu(mu);
  Exponents e{0, 0, 0, 0};
  e[static_cast<std::size_t>(mu)] = 1;
  return monomial(e);
}

XPolynomial XPolynomial::monomial(Exponents e, ExactComplex c) {
  XPolynomial out;
  out.add_term(e, c);
  return out;
}

int XPolynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void XPolynomial::add_term(const Exponents& e, const ExactComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

XPolynomial& XPolynomial::operator+=(const XPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

XPolynomial& XPolynomial::operator-=(const XPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

XPolynomial operator*(const XPolynomial& a, const XPolynomial& b) {
  XPolynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      XPolynomial::Exponents e{};
      for (std::size_t k = 0; k < 4; ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

XPolynomial operator*(const ExactComplex& c, const XPolynomial& a) {
  XPolynomial out;
  for (const auto& [e, v] : a.terms_) out.add_term(e, c * v);
  return out;
}

XPolynomial XPolynomial::partial(int mu) const {
  require_mu(mu);
  const auto k = static_cast<std::size_t>(mu);
  XPolynomial out;
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents d = e;
    --d[k];
    out.add_term(d, ExactComplex(Rational(e[k])) * c);
  }
  return out;
}

std::string XPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    std::string body = "(" + c.to_string() + ")";
    for (std::size_t k = 0; k < 4; ++k) {
      if (e[k] == 0) continue;
      body += " x" + std::to_string(k);
      if (e[k] > 1) body += "^" + std::to_string(e[k]);
    }
    out += body;
  }
  return out;
}

// ---------------------------------------------------------- GrassmannElement

GrassmannElement GrassmannElement::scalar(XPolynomial c) { return basis(0, std::move(c)); }

GrassmannElement GrassmannElement::generator(Odd g) {
  return basis(static_cast<Mask>(1u << static_cast<unsigned>(g)), XPolynomial::constant(ExactComplex(1)));
}

GrassmannElement GrassmannElement::basis(Mask m, XPolynomial c) {
  GrassmannElement out;
  out.add_term(m, c);
  return out;
}

void GrassmannElement::add_term(Mask m, const XPolynomial& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GrassmannElement GrassmannElement::parity_part(int parity) const {
  GrassmannElement out;
  for (const auto& [m, c] : terms_) {
    if (std::popcount(static_cast<unsigned>(m)) % 2 == parity) out.add_term(m, c);
  }
  return out;
}

bool GrassmannElement::theta_only() const {
  return std::none_of(terms_.begin(), terms_.end(), [](const auto& t) { return (t.first & kThetaBarMask) != 0; });
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, ExactComplex(-1) * c);
  return *this;
}

GrassmannElement operator-(const GrassmannElement& a) {
  GrassmannElement out;
  for (const auto& [m, c] : a.terms_) out.add_term(m, ExactComplex(-1) * c);
  return out;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  GrassmannElement out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma & mb) continue;  // repeated generator
      const XPolynomial prod = ca * cb;
      out.add_term(static_cast<GrassmannElement::Mask>(ma | mb),
                   merge_sign(ma, mb) > 0 ? prod : ExactComplex(-1) * prod);
    }
  }
  return out;
}

GrassmannElement operator*(const XPolynomial& c, const GrassmannElement& a) {
  GrassmannElement out;
  for (const auto& [m, v] : a.terms_) out.add_term(m, c * v);
  return out;
}

std::string GrassmannElement::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[kGenerators] = {"th1", "th2", "tb1", "tb2"};
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += "[" + c.to_string() + "]";
    for (int j = 0; j < kGenerators; ++j) {
      if (m & (1u << j)) out += std::string(" ") + names[j];
    }
  }
  return out;
}

GrassmannElement berezin_partial(const GrassmannElement& a, int alpha) {
  require_alpha(alpha);
  const int bit = static_cast<int>(theta(alpha));
  const auto mask = static_cast<GrassmannElement::Mask>(1u << bit);
  GrassmannElement out;
  for (const auto& [m, c] : a.terms()) {
    if (!(m & mask)) continue;
    const int before = std::popcount(static_cast<unsigned>(m & (mask - 1)));
    const auto rest = static_cast<GrassmannElement::Mask>(m & ~mask);
    out.add_term(rest, before % 2 == 0 ? c : ExactComplex(-1) * c);
  }
  return out;
}

GrassmannElement berezin_partial_right(const GrassmannElement& a, int alpha) {
  require_alpha(alpha);
  const int bit = static_cast<int>(theta(alpha));
  const auto mask = static_cast<GrassmannElement::Mask>(1u << bit);
  GrassmannElement out;
  for (const auto& [m, c] : a.terms()) {
    if (!(m & mask)) continue;
    const int after = std::popcount(static_cast<unsigned>(m >> (bit + 1)));
    const auto rest = static_cast<GrassmannElement::Mask>(m & ~mask);
    out.add_term(rest, after % 2 == 0 ? c : ExactComplex(-1) * c);
  }
  return out;
}

GrassmannElement x_partial(const GrassmannElement& a, int mu) {
  GrassmannElement out;
  for (const auto& [m, c] : a.terms()) out.add_term(m, c.partial(mu));
  return out;
}

// ------------------------------------------------------------------- gammas

GammaSet pauli_gamma_set() {
  GammaSet g{};
  const ExactComplex one(1);
  const ExactComplex i = ExactComplex::i();
  g.m[0][0][0] = one;
  g.m[0][1][1] = one;
  g.m[1][0][1] = one;
  g.m[1][1][0] = one;
  g.m[2][0][1] = -i;
  g.m[2][1][0] = i;
  g.m[3][0][0] = one;
  g.m[3][1][1] = ExactComplex(-1);
  return g;
}

GammaSet zero_gamma_set() { return GammaSet{}; }

namespace {
GrassmannElement const_times(const ExactComplex& c, const GrassmannElement& e) {
  return XPolynomial::constant(c) * e;
}
}  // namespace

GrassmannElement x_from_theta(const GammaSet& g, int mu) {
  require_mu(mu);
  GrassmannElement out;
  for (int beta = 1; beta <= 2; ++beta) {
    for (int alpha = 1; alpha <= 2; ++alpha) {
      out += const_times(g.at(mu, beta, alpha), GrassmannElement::generator(theta_bar(beta)) *
                                                    GrassmannElement::generator(theta(alpha)));
    }
  }
  return out;
}

GrassmannElement jacobian_expected(const GammaSet& g, int mu, int alpha, DerivativeSide side) {
  require_mu(mu);
  require_alpha(alpha);
  GrassmannElement out;
  for (int beta = 1; beta <= 2; ++beta) {
    out += const_times(g.at(mu, beta, alpha), GrassmannElement::generator(theta_bar(beta)));
  }
  return side == DerivativeSide::Left ? -out : out;
}

GrassmannElement jacobian_check(const GammaSet& g, int mu, int alpha, DerivativeSide side) {
  const GrassmannElement x = x_from_theta(g, mu);
  const GrassmannElement d = side == DerivativeSide::Left ? berezin_partial(x, alpha) : berezin_partial_right(x, alpha);
  return d - jacobian_expected(g, mu, alpha, side);
}

// --------------------------------------------------------------- superfields

Superfield::Superfield(XPolynomial phi, XPolynomial psi1, XPolynomial psi2, XPolynomial f) {
  const auto t1 = GrassmannElement::generator(Odd::Theta1);
  const auto t2 = GrassmannElement::generator(Odd::Theta2);
  e_ = GrassmannElement::scalar(std::move(phi)) + psi1 * t1 + psi2 * t2 + f * (t1 * t2);
}

Superfield::Superfield(GrassmannElement e) : e_(std::move(e)) {
  if (!e_.theta_only()) throw ContractError("Superfield: theta-bar' content is not allowed");
}

GrassmannElement connection_form(const GammaSet& g, int mu, int alpha) {
  require_mu(mu);
  require_alpha(alpha);
  GrassmannElement out;
  for (int beta = 1; beta <= 2; ++beta) {
    out += const_times(ExactComplex::i() * g.at(mu, alpha, beta), GrassmannElement::generator(theta(beta)));
  }
  return out;
}

GrassmannElement covariant_D(const Superfield& phi, int alpha, const GammaSet& g) {
  require_alpha(alpha);
  GrassmannElement out = berezin_partial(phi.element(), alpha);
  for (int mu = 0; mu < 4; ++mu) out -= connection_form(g, mu, alpha) * x_partial(phi.element(), mu);
  return out;
}

std::array<GrassmannElement, 2> nabla_superfield_check(const Superfield& phi, const GammaSet& g) {
  std::array<GrassmannElement, 2> residual;
  std::array<GrassmannElement, 4> phi_mu;
  for (int mu = 0; mu < 4; ++mu) phi_mu[static_cast<std::size_t>(mu)] = x_partial(phi.element(), mu);
  for (int alpha = 1; alpha <= 2; ++alpha) {
    GrassmannElement contracted;
    for (int mu = 0; mu < 4; ++mu) {
      const auto& comp = phi_mu[static_cast<std::size_t>(mu)];
      const GrassmannElement gamma = connection_form(g, mu, alpha);
      // Gamma is odd: passing it across the odd part of Phi_mu costs a sign.
      contracted += comp.parity_part(0) * gamma - comp.parity_part(1) * gamma;
    }
    const GrassmannElement route = berezin_partial(phi.element(), alpha) - contracted;
    residual[static_cast<std::size_t>(alpha - 1)] = route - covariant_D(phi, alpha, g);
  }
  return residual;
}

GrassmannElement random_grassmann(std::mt19937_64& rng, int terms, int max_x_degree) {
  std::uniform_int_distribution<int> mask_dist(0, 15);
  std::uniform_int_distribution<int> coeff_dist(-3, 3);
  std::uniform_int_distribution<int> deg_dist(0, max_x_degree);
  std::uniform_int_distribution<int> mu_dist(0, 3);
  GrassmannElement out;
  for (int t = 0; t < terms; ++t) {
    XPolynomial::Exponents e{0, 0, 0, 0};
    const int deg = deg_dist(rng);
    for (int k = 0; k < deg; ++k) ++e[static_cast<std::size_t>(mu_dist(rng))];
    const ExactComplex c(Rational(coeff_dist(rng)), Rational(coeff_dist(rng)));
    out.add_term(static_cast<GrassmannElement::Mask>(mask_dist(rng)), XPolynomial::monomial(e, c));
  }
  return out;
}

}  // namespace qlab
