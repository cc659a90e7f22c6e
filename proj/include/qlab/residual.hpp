#pragma once

namespace qlab {

/// A non-negative residual together with the magnitude it is judged against.
struct Residual {
  double value = 0.0;
  double scale = 1.0;

  bool within(double rel_tol) const { return value <= rel_tol * scale; }
};

/// Signed margin of an inequality (>= 0 when it holds) and its scale.
struct Slack {
  double value = 0.0;
  double scale = 1.0;

  bool holds(double rel_tol) const { return value >= -rel_tol * scale; }
};

}  // namespace qlab
