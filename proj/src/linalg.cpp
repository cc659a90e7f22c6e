#include "qlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qlab/error.hpp"

namespace qlab {

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ContractError("StateVector: empty amplitude list");
  if (!amps_.allFinite()) throw ContractError("StateVector: non-finite amplitude");
  const double norm = amps_.norm();
  if (!(norm > 0.0)) throw ContractError("StateVector: zero vector cannot be normalized");
  amps_ /= norm;
}

StateVector StateVector::basis(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) {
    throw ContractError("StateVector::basis: index out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

double StateVector::tail_weight(int levels) const {
  double w = 0.0;
  for (int i = std::max(0, dim() - levels); i < dim(); ++i) w += std::norm(amps_(i));
  return w;
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double scale_of(const ComplexMatrix& a) { return std::max(1.0, max_abs(a)); }

bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw ShapeError("hermiticity_defect: matrix not square");
  return max_abs(a - a.adjoint());
}

namespace {
void require_square_pair(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ShapeError(std::string(who) + ": operands must be square of equal dimension (" +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}
}  // namespace

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square_pair(a, b, "commutator");
  ComplexMatrix ab = a * b;
  ComplexMatrix ba = b * a;
  return ab - ba;
}

ComplexMatrix leading_block(const ComplexMatrix& a, int k) {
  if (k < 0 || k > a.rows() || k > a.cols()) throw ShapeError("leading_block: block larger than matrix");
  return a.topLeftCorner(k, k);
}

ComplexMatrix pauli(int index) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  switch (index) {
    case 0:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw ContractError("pauli: index must be 0..3");
  }
  return m;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ShapeError("hermitian_eigen: matrix not square");
  if (!all_finite(a)) throw ContractError("hermitian_eigen: non-finite entry");
  const double defect = hermiticity_defect(a);
  if (defect > 1e-10 * scale_of(a)) {
    throw ContractError("hermitian_eigen: input not Hermitian (defect " + std::to_string(defect) + ")");
  }
  // Solve the exactly Hermitian part so the returned basis is unitary.
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericError("hermitian_eigen: no convergence");
  HermitianEigen out;
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
  out.vectors = solver.eigenvectors();
  return out;
}

std::vector<double> tridiag_eigen(std::span<const double> diagonal,
                                  std::span<const double> offdiagonal) {
  const std::size_t n = diagonal.size();
  if (n == 0) throw ShapeError("tridiag_eigen: empty diagonal");
  if (offdiagonal.size() + 1 != n) {
    throw ShapeError("tridiag_eigen: offdiagonal length must be diagonal length - 1");
  }
  std::vector<double> d(diagonal.begin(), diagonal.end());
  // e[i] couples rows i and i+1; e[n-1] is a zero sentinel.
  std::vector<double> e(offdiagonal.begin(), offdiagonal.end());
  e.push_back(0.0);

  constexpr int kMaxIter = 60;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxIter) throw NumericError("tridiag_eigen: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

// LU factorisation with partial pivoting of (T - shift I), tridiagonal T.
// Mirrors the banded layout of LAPACK gttrf: U has two superdiagonals.
struct TridiagLU {
  std::vector<double> dl, d, du, du2;
  std::vector<char> swapped;

  TridiagLU(std::span<const double> diag, std::span<const double> off, double shift, double tiny) {
    const std::size_t n = diag.size();
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - shift;
    dl.assign(off.begin(), off.end());
    du.assign(off.begin(), off.end());
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped.assign(n > 0 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        swapped[i] = 1;
      }
    }
    if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;
    for (auto& v : d) {
      if (std::abs(v) < tiny) v = std::copysign(tiny, v == 0.0 ? 1.0 : v);
    }
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      } else {
        b[i + 1] -= dl[i] * b[i];
      }
    }
    for (std::size_t k = n; k-- > 0;) {
      double v = b[k];
      if (k + 1 < n) v -= du[k] * b[k + 1];
      if (k + 2 < n) v -= du2[k] * b[k + 2];
      b[k] = v / d[k];
    }
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(std::vector<double>& v) {
  const double n = std::sqrt(dot(v, v));
  for (auto& x : v) x /= n;
}

}  // namespace

std::vector<std::vector<double>> tridiag_eigenvectors(std::span<const double> diagonal,
                                                      std::span<const double> offdiagonal,
                                                      std::span<const double> eigenvalues) {
  const std::size_t n = diagonal.size();
  if (n == 0 || offdiagonal.size() + 1 != n) {
    throw ShapeError("tridiag_eigenvectors: offdiagonal length must be diagonal length - 1");
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(offdiagonal[i - 1]);
    if (i + 1 < n) row += std::abs(offdiagonal[i]);
    norm = std::max(norm, row);
  }
  if (norm == 0.0) norm = 1.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const double tiny = eps * norm;
  const double cluster = 1e-7 * norm;

  std::vector<std::vector<double>> out;
  out.reserve(eigenvalues.size());
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    const double lambda = eigenvalues[k];
    // Perturb the shift slightly so the factorisation is not exactly singular.
    const TridiagLU lu(diagonal, offdiagonal, lambda + 10.0 * eps * norm, tiny);
    std::vector<double> v(n);
    // Deterministic, non-symmetric start vector.
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * std::sin(0.7 * static_cast<double>(i) + 0.3 * k);
    normalize(v);
    for (int it = 0; it < 4; ++it) {
      lu.solve(v);
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (std::abs(eigenvalues[j] - lambda) <= cluster) {
          const double c = dot(out[j], v);
          for (std::size_t i = 0; i < n; ++i) v[i] -= c * out[j][i];
        }
      }
      normalize(v);
    }
    // Fix the sign so the first significant component is positive.
    for (double x : v) {
      if (std::abs(x) > 1e-8) {
        if (x < 0) for (auto& y : v) y = -y;
        break;
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

ComplexMatrix tridiag_dense(std::span<const double> diagonal, std::span<const double> offdiagonal) {
  const auto n = static_cast<Eigen::Index>(diagonal.size());
  if (offdiagonal.size() + 1 != diagonal.size()) throw ShapeError("tridiag_dense: length mismatch");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = diagonal[i];
    if (i + 1 < n) {
      m(i, i + 1) = offdiagonal[i];
      m(i + 1, i) = offdiagonal[i];
    }
  }
  return m;
}

Complex expectation(const ComplexMatrix& m, const StateVector& s) {
  if (m.rows() != m.cols() || m.rows() != s.dim()) throw ShapeError("expectation: dimension mismatch");
  return s.amplitudes().dot(m * s.amplitudes());
}

double variance(const ComplexMatrix& m, const StateVector& s) {
  if (m.rows() != m.cols() || m.rows() != s.dim()) throw ShapeError("variance: dimension mismatch");
  if (hermiticity_defect(m) > 1e-10 * scale_of(m)) throw ContractError("variance: operator not Hermitian");
  const ComplexVector ms = m * s.amplitudes();
  const double mean = s.amplitudes().dot(ms).real();
  const double second = ms.squaredNorm();
  double var = second - mean * mean;
  if (var < 0.0 && var >= -1e-12 * std::max(1.0, second)) var = 0.0;
  return var;
}

}  // namespace qlab
