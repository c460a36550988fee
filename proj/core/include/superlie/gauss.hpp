#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace superlie {

using Rational = mpq_class;

/// Exact Gaussian rational re + im*i.
class Gauss {
 public:
  Gauss() = default;
  Gauss(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  // Rationals built as mpq_class(p, q) are not reduced by GMP; reduce here
  // so that structural equality is value equality.
  Gauss(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Gauss(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Gauss i() { return Gauss(0, 1); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Gauss conj() const { return Gauss(re_, -im_); }
  /// |z|^2
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Gauss inverse() const;

  Gauss operator-() const { return Gauss(-re_, -im_); }
  Gauss& operator+=(const Gauss& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gauss& operator-=(const Gauss& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gauss& operator*=(const Gauss& o);
  Gauss& operator/=(const Gauss& o) { return *this *= o.inverse(); }

  friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
  friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
  friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
  friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }

  friend bool operator==(const Gauss& a, const Gauss& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic (re, im); used only for deterministic ordering.
  friend std::strong_ordering operator<=>(const Gauss& a, const Gauss& b);

  /// Renders as "re", "im*i" or "re+im*i" with canonical rationals.
  std::string to_string() const;
  /// Exact inverse of to_string; also accepts "i", "-i", "p/q+r/s*i".
  static Gauss parse(std::string_view text);

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Gauss& z);

inline bool is_zero(const Gauss& z) { return z.is_zero(); }
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace superlie
