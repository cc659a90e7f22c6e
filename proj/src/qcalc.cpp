#include "qlab/qcalc.hpp"

#include <cmath>

namespace qlab {

double q_squared_from_spacing(double spacing) { return 1.0 + spacing; }
double spacing_from_q_squared(double q_squared) { return q_squared - 1.0; }

double y_of_x(double x, double spacing) {
  if (!(spacing > -1.0) || spacing == 0.0) throw DomainError("y_of_x: spacing must satisfy q_E > -1, q_E != 0");
  return std::pow(1.0 + spacing, x / spacing);
}

double GeometricGrid::y_at(int n) const { return std::pow(ratio, n); }

double GeometricGrid::at(int n) const {
  if (n < first_index || n > last_index()) throw WindowError("GeometricGrid: index outside window");
  return values[static_cast<std::size_t>(n - first_index)];
}

GeometricGrid exp_map(const GridFunction<double>& f) {
  return {q_squared_from_spacing(f.spacing()), f.first_index(), f.values()};
}

namespace {
void require_domain(double y, double q_squared) {
  if (y == 0.0) throw DomainError("jackson derivative: y must be nonzero");
  if (q_squared == 1.0) throw DomainError("jackson derivative: q^2 must differ from 1");
}
}  // namespace

double jackson_derivative(const ScalarFn& f, double y, double q) {
  const double q2 = q * q;
  require_domain(y, q2);
  return (f(q2 * y) - f(y)) / ((q2 - 1.0) * y);
}

double jackson_derivative(const GeometricGrid& g, int n) {
  const double y = g.y_at(n);
  require_domain(y, g.ratio);
  return (g.at(n + 1) - g.at(n)) / ((g.ratio - 1.0) * y);
}

double jackson_backward(const ScalarFn& f, double y, double q) {
  const double q2 = q * q;
  require_domain(y, q2);
  return (f(y) - f(q2 * y)) / ((1.0 - 1.0 / q2) * y);
}

double jackson_backward(const GeometricGrid& g, int n) {
  const double y = g.y_at(n);
  require_domain(y, g.ratio);
  return (g.at(n) - g.at(n + 1)) / ((1.0 - 1.0 / g.ratio) * y);
}

Residual hyperplane_correspondence_check(const ScalarFn& f, double x, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("hyperplane_correspondence_check: spacing must be positive");
  const double y = y_of_x(x, spacing);
  const double q = std::sqrt(q_squared_from_spacing(spacing));
  const double jackson = jackson_derivative(f, y, q);
  const double lattice = (f(y_of_x(x + spacing, spacing)) - f(y)) / spacing / y;
  return {std::abs(jackson - lattice), std::max({1.0, std::abs(jackson), std::abs(lattice)})};
}

}  // namespace qlab
