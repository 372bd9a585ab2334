#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace wordavg {

using Complex = std::complex<double>;

enum class Mode { exact, floating };

/// Raised for invalid user input (bad parameters, malformed words, refused requests).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot deliver a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gaussian rational re + i*im with arbitrary precision parts.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  GaussRat(long re) : re_(re), im_(0) {}

  static GaussRat rational(long num, long den = 1) {
    mpq_class q(num, den);
    q.canonicalize();
    return GaussRat(q);
  }
  static GaussRat imaginary(long num, long den = 1) {
    mpq_class q(num, den);
    q.canonicalize();
    return GaussRat(0, q);
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  GaussRat conj() const { return GaussRat(re_, -im_); }
  GaussRat times_i() const { return GaussRat(-im_, re_); }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re_, -a.im_); }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  /// "3/8", "-1/2i", "1/4+3/2i"; zero prints as "0".
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Uniform coefficient interface so polynomial and coefficient-map code can be
/// written once for exact and floating arithmetic.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<GaussRat> {
  static constexpr Mode mode = Mode::exact;
  static GaussRat zero() { return GaussRat(); }
  static GaussRat one() { return GaussRat(1); }
  static GaussRat from_int(long k) { return GaussRat(k); }
  static bool is_zero(const GaussRat& c) { return c.is_zero(); }
  static GaussRat times_i(const GaussRat& c) { return c.times_i(); }
  static GaussRat conj(const GaussRat& c) { return c.conj(); }
  static Complex to_complex(const GaussRat& c) { return c.to_complex(); }
};

template <>
struct CoeffTraits<Complex> {
  static constexpr Mode mode = Mode::floating;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(long k) { return {static_cast<double>(k), 0.0}; }
  static bool is_zero(const Complex& c) { return c.real() == 0.0 && c.imag() == 0.0; }
  static Complex times_i(const Complex& c) { return {-c.imag(), c.real()}; }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static Complex to_complex(const Complex& c) { return c; }
};

}  // namespace wordavg
