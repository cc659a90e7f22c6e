#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "qlab/exact.hpp"

namespace qlab {

/// Commuting polynomial in the spacetime coordinates x^0..x^3.
class XPolynomial {
 public:
  using Exponents = std::array<int, 4>;

  XPolynomial() = default;
  static XPolynomial constant(ExactComplex c);
  /// x^mu
  static XPolynomial coordinate(int mu);
  static XPolynomial monomial(Exponents e, ExactComplex c = ExactComplex(1));

  const std::map<Exponents, ExactComplex>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const;

  void add_term(const Exponents& e, const ExactComplex& c);

  XPolynomial& operator+=(const XPolynomial& o);
  XPolynomial& operator-=(const XPolynomial& o);
  friend XPolynomial operator+(XPolynomial a, const XPolynomial& b) { return a += b; }
  friend XPolynomial operator-(XPolynomial a, const XPolynomial& b) { return a -= b; }
  friend XPolynomial operator*(const XPolynomial& a, const XPolynomial& b);
  friend XPolynomial operator*(const ExactComplex& c, const XPolynomial& a);
  friend bool operator==(const XPolynomial& a, const XPolynomial& b) { return a.terms_ == b.terms_; }

  /// d/dx^mu
  XPolynomial partial(int mu) const;

  std::string to_string() const;

 private:
  std::map<Exponents, ExactComplex> terms_;
};

/// Odd generators: theta^1, theta^2 (differentiated) and the spectators
/// theta-bar'^1, theta-bar'^2.
enum class Odd : std::uint8_t { Theta1 = 0, Theta2 = 1, ThetaBar1 = 2, ThetaBar2 = 3 };

inline constexpr Odd theta(int alpha) { return alpha == 1 ? Odd::Theta1 : Odd::Theta2; }
inline constexpr Odd theta_bar(int beta) { return beta == 1 ? Odd::ThetaBar1 : Odd::ThetaBar2; }

/// Element of the Grassmann algebra over the four odd generators with
/// XPolynomial coefficients. A basis monomial is a generator subset, stored
/// as a bitmask and read in ascending generator order.
class GrassmannElement {
 public:
  using Mask = std::uint8_t;

  GrassmannElement() = default;
  static GrassmannElement scalar(XPolynomial c);
  static GrassmannElement generator(Odd g);
  static GrassmannElement basis(Mask m, XPolynomial c);

  const std::map<Mask, XPolynomial>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(Mask m, const XPolynomial& c);

  /// Even (parity 0) or odd (parity 1) component.
  GrassmannElement parity_part(int parity) const;

  /// True when every monomial avoids the theta-bar' generators.
  bool theta_only() const;

  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator-=(const GrassmannElement& o);
  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator-(const GrassmannElement& a);
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
  friend GrassmannElement operator*(const XPolynomial& c, const GrassmannElement& a);
  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  std::map<Mask, XPolynomial> terms_;
};

inline GrassmannElement grassmann_mul(const GrassmannElement& a, const GrassmannElement& b) { return a * b; }

/// Left derivative: theta^alpha is moved to the front of each monomial
/// (one sign per generator it passes) and then removed. alpha in {1, 2}.
GrassmannElement berezin_partial(const GrassmannElement& a, int alpha);

/// Right derivative: theta^alpha is moved to the back before removal.
GrassmannElement berezin_partial_right(const GrassmannElement& a, int alpha);

/// d/dx^mu applied to every coefficient.
GrassmannElement x_partial(const GrassmannElement& a, int mu);

/// Four 2x2 matrices (gamma^mu)_{ab}, mu = 0..3, with exact entries.
struct GammaSet {
  std::array<std::array<std::array<ExactComplex, 2>, 2>, 4> m;

  const ExactComplex& at(int mu, int row, int col) const {
    return m[static_cast<std::size_t>(mu)][static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(col - 1)];
  }
};

/// (identity, sigma_1, sigma_2, sigma_3).
GammaSet pauli_gamma_set();
GammaSet zero_gamma_set();

/// x^mu = sum_{beta, alpha} theta-bar'^beta (gamma^mu)_{beta alpha} theta^alpha.
GrassmannElement x_from_theta(const GammaSet& g, int mu);

enum class DerivativeSide { Left, Right };

/// Expected dx^mu/dtheta^alpha: sum_beta theta-bar'^beta (gamma^mu)_{beta alpha}
/// for the right derivative; the left derivative carries an extra minus
/// sign from moving theta^alpha past theta-bar'^beta.
GrassmannElement jacobian_expected(const GammaSet& g, int mu, int alpha, DerivativeSide side);

/// Derivative of x^mu minus jacobian_expected(); zero element when the
/// identity holds.
GrassmannElement jacobian_check(const GammaSet& g, int mu, int alpha,
                                DerivativeSide side = DerivativeSide::Left);

/// Phi = phi + theta^1 psi_1 + theta^2 psi_2 + theta^1 theta^2 F.
class Superfield {
 public:
  Superfield(XPolynomial phi, XPolynomial psi1, XPolynomial psi2, XPolynomial f);
  /// ContractError if `e` contains theta-bar' content.
  explicit Superfield(GrassmannElement e);

  const GrassmannElement& element() const noexcept { return e_; }

 private:
  GrassmannElement e_;
};

/// Connection form Gamma_alpha^mu = i (gamma^mu theta)_alpha.
GrassmannElement connection_form(const GammaSet& g, int mu, int alpha);

/// D_alpha Phi = d_alpha Phi - Gamma_alpha^mu d_mu Phi, summed over mu.
GrassmannElement covariant_D(const Superfield& phi, int alpha, const GammaSet& g);

/// Phi_alpha - Phi_mu Gamma_alpha^mu (components formed first, contracted
/// afterwards, graded reordering applied) minus covariant_D, for alpha = 1, 2.
std::array<GrassmannElement, 2> nabla_superfield_check(const Superfield& phi, const GammaSet& g);

/// Random element with small integer coefficients over all four generators.
GrassmannElement random_grassmann(std::mt19937_64& rng, int terms, int max_x_degree);

}  // namespace qlab
