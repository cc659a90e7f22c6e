#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qlab/exact.hpp"

namespace qlab {

/// Flat coordinate X_i or its conjugate P_i (indices start at 1).
struct Generator {
  enum class Kind : std::uint8_t { X = 0, P = 1 };
  Kind kind;
  int index;

  auto operator<=>(const Generator&) const = default;
};

using Word = std::vector<Generator>;

/// Element of the algebra generated by X_i, P_i with
///   [X_i, X_j] = 0, [P_i, P_j] = 0, [X_i, P_j] = delta_ij.
/// Terms may hold arbitrary words; nc_normal_form() produces the canonical
/// representative (X's left of P's, each sorted by index).
class NCPolynomial {
 public:
  NCPolynomial() = default;

  static NCPolynomial constant(ExactComplex c);
  static NCPolynomial X(int i);
  static NCPolynomial P(int i);
  static NCPolynomial word(Word w, ExactComplex c = ExactComplex(1));

  const std::map<Word, ExactComplex>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// True when no term contains a P generator.
  bool x_only() const;

  /// Highest word length.
  int degree() const;

  /// Adds c * w, dropping the entry when it cancels.
  void add_term(const Word& w, const ExactComplex& c);

  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);

  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator-(const NCPolynomial& a);
  /// Concatenation product (no reordering).
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  friend NCPolynomial operator*(const ExactComplex& c, const NCPolynomial& a);

  /// Structural equality of the stored term maps. Compare normal forms to
  /// test equality in the algebra.
  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) { return a.terms_ == b.terms_; }

  /// e.g. "X1 X1 P1 - 2 X1"; "0" for the zero element.
  std::string to_string() const;

 private:
  std::map<Word, ExactComplex> terms_;
};

bool is_normal_word(const Word& w);

/// Which redex the rewriting engine contracts next. The normal form does not
/// depend on the choice; the alternatives exist to probe that.
enum class RewriteOrder { Leftmost, Rightmost, Random };

/// Rewrites P_j X_i -> X_i P_j - delta_ij and sorts commuting neighbours
/// until no descent remains.
NCPolynomial nc_normal_form(const NCPolynomial& e, RewriteOrder order = RewriteOrder::Leftmost,
                            std::uint64_t seed = 0);

/// Normal form of AB - BA.
NCPolynomial nc_commutator(const NCPolynomial& a, const NCPolynomial& b);

/// dF/dX_i as [F, P_i].
NCPolynomial partial_x(const NCPolynomial& f, int i);

/// dF/dP_i as [X_i, F].
NCPolynomial partial_p(const NCPolynomial& f, int i);

/// Term-by-term differentiation of the normal form, independent of the
/// commutator route.
NCPolynomial formal_partial_x(const NCPolynomial& f, int i);
NCPolynomial formal_partial_p(const NCPolynomial& f, int i);

/// Random polynomial with `terms` monomials over d coordinates, word length
/// up to `max_degree`, small rational coefficients. P generators are left
/// out when x_only is set. Words are random, not normal ordered.
NCPolynomial random_nc_polynomial(std::mt19937_64& rng, int dims, int max_degree, int terms, bool x_only);

}  // namespace qlab
