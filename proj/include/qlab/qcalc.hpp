#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qlab/error.hpp"
#include "qlab/residual.hpp"

namespace qlab {

/// Samples of a function on the lattice x = n * spacing, n = first..last.
/// T is double for numerics or Rational for exact checks.
template <class T>
class GridFunction {
 public:
  GridFunction(T spacing, int first_index, std::vector<T> values)
      : spacing_(std::move(spacing)), first_(first_index), values_(std::move(values)) {
    if (!(spacing_ > 0)) throw ContractError("GridFunction: spacing must be positive");
    if (values_.empty()) throw WindowError("GridFunction: empty window");
  }

  /// fn(x) at x = n * spacing for n = first..first+count-1.
  template <class Fn>
  static GridFunction sample(const T& spacing, int first_index, int count, Fn&& fn) {
    std::vector<T> vals;
    vals.reserve(count > 0 ? count : 0);
    for (int k = 0; k < count; ++k) vals.push_back(fn(T(first_index + k) * spacing));
    return GridFunction(spacing, first_index, std::move(vals));
  }

  const T& spacing() const noexcept { return spacing_; }
  int first_index() const noexcept { return first_; }
  int last_index() const noexcept { return first_ + static_cast<int>(values_.size()) - 1; }
  int size() const noexcept { return static_cast<int>(values_.size()); }
  const std::vector<T>& values() const noexcept { return values_; }

  bool contains(int n) const noexcept { return n >= first_ && n <= last_index(); }

  const T& at(int n) const {
    if (!contains(n)) {
      throw WindowError("GridFunction: index " + std::to_string(n) + " outside window [" +
                        std::to_string(first_) + ", " + std::to_string(last_index()) + "]");
    }
    return values_[static_cast<std::size_t>(n - first_)];
  }

  T x_at(int n) const { return T(n) * spacing_; }

  /// g(n) = f(n + steps); the window moves left by `steps`.
  GridFunction shifted(int steps = 1) const { return GridFunction(spacing_, first_ - steps, values_); }

  friend bool operator==(const GridFunction& a, const GridFunction& b) {
    return a.spacing_ == b.spacing_ && a.first_ == b.first_ && a.values_ == b.values_;
  }

 private:
  T spacing_;
  int first_;
  std::vector<T> values_;
};

namespace detail {

template <class T, class Op>
GridFunction<T> zip(const GridFunction<T>& a, const GridFunction<T>& b, Op op, const char* who) {
  if (!(a.spacing() == b.spacing())) throw ShapeError(std::string(who) + ": spacing mismatch");
  const int lo = std::max(a.first_index(), b.first_index());
  const int hi = std::min(a.last_index(), b.last_index());
  if (lo > hi) throw WindowError(std::string(who) + ": windows do not overlap");
  std::vector<T> vals;
  vals.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int n = lo; n <= hi; ++n) vals.push_back(op(a.at(n), b.at(n)));
  return GridFunction<T>(a.spacing(), lo, std::move(vals));
}

}  // namespace detail

/// Pointwise product on the common window.
template <class T>
GridFunction<T> operator*(const GridFunction<T>& a, const GridFunction<T>& b) {
  return detail::zip(a, b, [](const T& u, const T& v) { return u * v; }, "grid product");
}

template <class T>
GridFunction<T> operator+(const GridFunction<T>& a, const GridFunction<T>& b) {
  return detail::zip(a, b, [](const T& u, const T& v) { return u + v; }, "grid sum");
}

template <class T>
GridFunction<T> operator-(const GridFunction<T>& a, const GridFunction<T>& b) {
  return detail::zip(a, b, [](const T& u, const T& v) { return u - v; }, "grid difference");
}

/// Pointwise scaling.
template <class T>
GridFunction<T> scaled(const GridFunction<T>& f, const T& c) {
  std::vector<T> vals = f.values();
  for (auto& v : vals) v = v * c;
  return GridFunction<T>(f.spacing(), f.first_index(), std::move(vals));
}

/// (f(n+1) - f(n)) / spacing on first..last-1.
template <class T>
GridFunction<T> forward_diff(const GridFunction<T>& f) {
  if (f.size() < 2) throw WindowError("forward_diff: needs at least two samples");
  std::vector<T> vals;
  vals.reserve(static_cast<std::size_t>(f.size() - 1));
  for (int n = f.first_index(); n < f.last_index(); ++n) vals.push_back((f.at(n + 1) - f.at(n)) / f.spacing());
  return GridFunction<T>(f.spacing(), f.first_index(), std::move(vals));
}

/// (f(n) - f(n-1)) / spacing on first+1..last.
template <class T>
GridFunction<T> backward_diff(const GridFunction<T>& f) {
  if (f.size() < 2) throw WindowError("backward_diff: needs at least two samples");
  std::vector<T> vals;
  vals.reserve(static_cast<std::size_t>(f.size() - 1));
  for (int n = f.first_index() + 1; n <= f.last_index(); ++n) vals.push_back((f.at(n) - f.at(n - 1)) / f.spacing());
  return GridFunction<T>(f.spacing(), f.first_index() + 1, std::move(vals));
}

/// f + dx * g: a 0-form part and the coefficient standing to the right of dx.
/// Functions cross dx by the exchange rule h(x) dx = dx h(x + spacing).
template <class T>
class DiscreteOneForm {
 public:
  DiscreteOneForm(GridFunction<T> zero_form, GridFunction<T> dx_coefficient)
      : f_(std::move(zero_form)), g_(std::move(dx_coefficient)) {
    if (!(f_.spacing() == g_.spacing())) throw ShapeError("DiscreteOneForm: spacing mismatch");
  }

  /// dx * g with vanishing 0-form part.
  static DiscreteOneForm dx_times(const GridFunction<T>& g) {
    return DiscreteOneForm(scaled(g, T(0)), g);
  }

  /// h * dx, rewritten as dx * h(x + spacing).
  static DiscreteOneForm times_dx(const GridFunction<T>& h) { return dx_times(h.shifted(1)); }

  const GridFunction<T>& zero_form() const noexcept { return f_; }
  const GridFunction<T>& dx_coefficient() const noexcept { return g_; }

  friend DiscreteOneForm operator+(const DiscreteOneForm& a, const DiscreteOneForm& b) {
    return {a.f_ + b.f_, a.g_ + b.g_};
  }
  friend DiscreteOneForm operator-(const DiscreteOneForm& a, const DiscreteOneForm& b) {
    return {a.f_ - b.f_, a.g_ - b.g_};
  }
  friend bool operator==(const DiscreteOneForm& a, const DiscreteOneForm& b) {
    return a.f_ == b.f_ && a.g_ == b.g_;
  }

 private:
  GridFunction<T> f_;
  GridFunction<T> g_;
};

/// omega * h = f h + dx (g h).
template <class T>
DiscreteOneForm<T> oneform_mul(const DiscreteOneForm<T>& omega, const GridFunction<T>& h) {
  return {omega.zero_form() * h, omega.dx_coefficient() * h};
}

/// h * omega = h f + dx (h~ g), h~(x) = h(x + spacing).
template <class T>
DiscreteOneForm<T> oneform_mul(const GridFunction<T>& h, const DiscreteOneForm<T>& omega) {
  return {h * omega.zero_form(), h.shifted(1) * omega.dx_coefficient()};
}

/// [h, dx] = h dx - dx h.
template <class T>
DiscreteOneForm<T> commutator_with_dx(const GridFunction<T>& h) {
  return DiscreteOneForm<T>::times_dx(h) - DiscreteOneForm<T>::dx_times(h);
}

// ---------------------------------------------------------------------------
// Multiplicative grid and Jackson derivatives (double precision).

using ScalarFn = std::function<double(double)>;

/// q^2 = 1 + q_E. Every conversion between the lattice spacing and the
/// deformation parameter goes through these two helpers.
double q_squared_from_spacing(double spacing);
double spacing_from_q_squared(double q_squared);

/// y = (1 + q_E)^(x / q_E). Throws DomainError unless q_E > -1, q_E != 0.
double y_of_x(double x, double spacing);

/// Samples of f re-indexed onto y_n = ratio^n, ratio = 1 + spacing.
struct GeometricGrid {
  double ratio;
  int first_index;
  std::vector<double> values;

  double y_at(int n) const;
  double at(int n) const;
  int last_index() const { return first_index + static_cast<int>(values.size()) - 1; }
};

GeometricGrid exp_map(const GridFunction<double>& f);

/// (f(q^2 y) - f(y)) / ((q^2 - 1) y). DomainError for y = 0 or q^2 = 1.
double jackson_derivative(const ScalarFn& f, double y, double q);

/// Same on a geometric grid at index n, with q^2 the grid ratio.
double jackson_derivative(const GeometricGrid& g, int n);

/// (f(y) - f(q^2 y)) / ((1 - q^-2) y).
double jackson_backward(const ScalarFn& f, double y, double q);
double jackson_backward(const GeometricGrid& g, int n);

/// |D_q f(y) - (1/y) * forward difference in x of f(y(x))| at the point x,
/// with y = (1 + q_E)^(x/q_E) and q^2 = 1 + q_E.
Residual hyperplane_correspondence_check(const ScalarFn& f, double x, double spacing);

}  // namespace qlab
