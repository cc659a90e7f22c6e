#pragma once

#include <map>
#include <utility>

#include "qlab/error.hpp"
#include "qlab/qcalc.hpp"

namespace qlab {

/// A time series X(t0), X(t0+1), ... sampled with step tau. Structurally a
/// lattice function in time; `spacing()` is the step.
template <class T>
using TimeSeries = GridFunction<T>;

/// Formal sum of J^k * c_k with J always written on the left. Moving a
/// coefficient across J advances it one tick: c J = J c', c'(t) = c(t+1).
template <class T>
class JSeries {
 public:
  JSeries() = default;

  /// Degree-0 series c.
  explicit JSeries(TimeSeries<T> c) { terms_.emplace(0, std::move(c)); }

  /// J^power * c.
  static JSeries monomial(int power, TimeSeries<T> c) {
    if (power < 0) throw ContractError("JSeries: negative J power");
    JSeries s;
    s.terms_.emplace(power, std::move(c));
    return s;
  }

  const std::map<int, TimeSeries<T>>& terms() const noexcept { return terms_; }

  bool empty() const noexcept { return terms_.empty(); }

  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

  const TimeSeries<T>& coefficient(int power) const {
    auto it = terms_.find(power);
    if (it == terms_.end()) throw ContractError("JSeries: no term of that power");
    return it->second;
  }

  /// True when every coefficient sample is exactly zero.
  bool is_zero() const {
    for (const auto& [k, c] : terms_) {
      for (const auto& v : c.values()) {
        if (!(v == T(0))) return false;
      }
    }
    return true;
  }

  friend JSeries operator+(const JSeries& a, const JSeries& b) { return combine(a, b, false); }
  friend JSeries operator-(const JSeries& a, const JSeries& b) { return combine(a, b, true); }

  /// (J^a c)(J^b d) = J^(a+b) (c shifted by b) d, on the window where every
  /// needed sample exists.
  friend JSeries operator*(const JSeries& a, const JSeries& b) {
    JSeries out;
    for (const auto& [pa, ca] : a.terms_) {
      for (const auto& [pb, cb] : b.terms_) {
        out = out + monomial(pa + pb, ca.shifted(pb) * cb);
      }
    }
    return out;
  }

  friend bool operator==(const JSeries& a, const JSeries& b) { return a.terms_ == b.terms_; }

 private:
  static JSeries combine(const JSeries& a, const JSeries& b, bool subtract) {
    JSeries out = a;
    for (const auto& [k, c] : b.terms_) {
      auto it = out.terms_.find(k);
      const TimeSeries<T> term = subtract ? scaled(c, T(-1)) : c;
      if (it == out.terms_.end()) {
        out.terms_.emplace(k, term);
      } else {
        it->second = it->second + term;
      }
    }
    return out;
  }

  std::map<int, TimeSeries<T>> terms_;
};

template <class T>
JSeries<T> jseries_mul(const JSeries<T>& a, const JSeries<T>& b) {
  return a * b;
}

/// Nabla X = J (X' - X) / tau.
template <class T>
JSeries<T> discrete_nabla(const TimeSeries<T>& x) {
  return JSeries<T>::monomial(1, forward_diff(x));
}

/// nabla(fg) - nabla(f) g - f nabla(g); identically zero when the shift
/// operator does its job.
template <class T>
JSeries<T> jseries_leibniz_check(const TimeSeries<T>& f, const TimeSeries<T>& g) {
  if (f.first_index() != g.first_index() || f.size() != g.size()) {
    throw WindowError("jseries_leibniz_check: series must share a window");
  }
  const JSeries<T> jf(f);
  const JSeries<T> jg(g);
  return discrete_nabla(f * g) - discrete_nabla(f) * jg - jf * discrete_nabla(g);
}

template <class T>
struct PlainLeibnizDefects {
  TimeSeries<T> shifted_rule;  // D(fg) - D(f) g - f~ D(g): zero
  TimeSeries<T> naive_rule;    // D(fg) - D(f) g - f D(g): tau D(f) D(g), nonzero in general
};

/// The two product rules of the plain difference quotient D, without J.
template <class T>
PlainLeibnizDefects<T> plain_leibniz_defects(const TimeSeries<T>& f, const TimeSeries<T>& g) {
  const auto dfg = forward_diff(f * g);
  const auto dfg_rule = forward_diff(f) * g;
  return {dfg - dfg_rule - f.shifted(1) * forward_diff(g), dfg - dfg_rule - f * forward_diff(g)};
}

/// [X, nabla X] evaluated through the J-series product.
template <class T>
JSeries<T> observation_commutator(const TimeSeries<T>& x) {
  const JSeries<T> jx(x);
  const JSeries<T> dx = discrete_nabla(x);
  return jx * dx - dx * jx;
}

/// J (X' - X)^2 / tau assembled sample by sample.
template <class T>
JSeries<T> squared_increment_series(const TimeSeries<T>& x) {
  if (x.size() < 2) throw WindowError("squared_increment_series: needs at least two samples");
  std::vector<T> vals;
  for (int t = x.first_index(); t < x.last_index(); ++t) {
    const T step = x.at(t + 1) - x.at(t);
    vals.push_back(step * step / x.spacing());
  }
  return JSeries<T>::monomial(1, TimeSeries<T>(x.spacing(), x.first_index(), std::move(vals)));
}

}  // namespace qlab
