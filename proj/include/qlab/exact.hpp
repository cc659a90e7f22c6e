#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

namespace qlab {

/// Arbitrary-precision rational; the coefficient field of every symbolic
/// algebra in the library.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                                boost::multiprecision::et_off>;

/// Exact Gaussian rational re + i*im.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static ExactComplex i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  ExactComplex conj() const { return {re_, -im_}; }

  ExactComplex& operator+=(const ExactComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re_), static_cast<double>(im_)};
  }

  /// "3/2", "-i", "1/2+3i".
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

}  // namespace qlab
