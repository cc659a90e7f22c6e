#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace qlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Unit-norm state in a finite Hilbert space. The constructor normalizes,
/// so every StateVector in circulation satisfies |psi| = 1 to rounding.
class StateVector {
 public:
  /// Throws ContractError for an empty, non-finite or zero vector.
  explicit StateVector(ComplexVector amplitudes);

  /// Fock/basis state |index> of dimension `dim`.
  static StateVector basis(int dim, int index);

  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  Complex operator[](int i) const { return amps_(i); }

  /// Probability carried by the top `levels` basis states.
  double tail_weight(int levels) const;

 private:
  ComplexVector amps_;
};

/// Largest entry magnitude.
double max_abs(const ComplexMatrix& a);

/// Tolerance scale of an operand: its largest entry magnitude, floored at 1
/// so that relative bounds on near-zero inputs do not collapse to zero.
double scale_of(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a);

/// max |A - A^dagger| entry.
double hermiticity_defect(const ComplexMatrix& a);

/// AB - BA. Throws ShapeError unless both are square of equal size.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Leading k-by-k block (the interior of a truncated representation).
ComplexMatrix leading_block(const ComplexMatrix& a, int k);

/// Pauli matrices sigma_1..sigma_3; index 0 gives the identity.
ComplexMatrix pauli(int index);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Dense Hermitian eigensolver. Throws ContractError if the input is not
/// Hermitian within 1e-10 * scale, NumericError on non-convergence.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

/// Eigenvalues (ascending) of the real symmetric tridiagonal matrix with the
/// given diagonal and first off-diagonal. Implicit-shift QL.
std::vector<double> tridiag_eigen(std::span<const double> diagonal,
                                  std::span<const double> offdiagonal);

/// Orthonormal eigenvectors of a symmetric tridiagonal matrix for the given
/// (already computed) eigenvalues, by shifted inverse iteration. Vectors
/// belonging to nearly equal eigenvalues are re-orthogonalised.
std::vector<std::vector<double>> tridiag_eigenvectors(
    std::span<const double> diagonal, std::span<const double> offdiagonal,
    std::span<const double> eigenvalues);

/// Dense embedding of a symmetric tridiagonal matrix.
ComplexMatrix tridiag_dense(std::span<const double> diagonal,
                            std::span<const double> offdiagonal);

/// Expectation s^dagger M s. Throws ShapeError on dimension mismatch.
Complex expectation(const ComplexMatrix& m, const StateVector& s);

/// <M^2> - <M>^2 for Hermitian M, clamped to 0 when in [-1e-12, 0).
double variance(const ComplexMatrix& m, const StateVector& s);

}  // namespace qlab
