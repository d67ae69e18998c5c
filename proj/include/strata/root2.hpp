#pragma once

#include <optional>
#include <string>
#include <utility>

#include "strata/rational.hpp"

namespace strata {

/// Exact element a + b√2 of ℚ(√2).
class Root2 {
 public:
  Root2() = default;
  Root2(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Root2(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT

  static Root2 sqrt2() { return Root2(0, 1); }
  /// 2^{-k/2} for k ≥ 0.
  static Root2 inv_sqrt2_pow(int k);

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  Root2 operator-() const { return Root2(-a_, -b_); }
  Root2& operator+=(const Root2& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Root2& operator-=(const Root2& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Root2& operator*=(const Root2& o) {
    Rational a = a_ * o.a_ + 2 * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  Root2& operator/=(const Root2& o);

  friend Root2 operator+(Root2 x, const Root2& y) { return x += y; }
  friend Root2 operator-(Root2 x, const Root2& y) { return x -= y; }
  friend Root2 operator*(Root2 x, const Root2& y) { return x *= y; }
  friend Root2 operator/(Root2 x, const Root2& y) { return x /= y; }
  friend bool operator==(const Root2& x, const Root2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Root2& x, const Root2& y) { return !(x == y); }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  /// Exact sign (−1, 0, +1).
  int sign() const;
  double to_double() const;

  /// Writes the value as m·2^{-k/2} with integer m and the smallest k ≥ 0, when possible.
  std::optional<std::pair<Integer, int>> as_dyadic_halfpow() const;

  std::string to_string() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

inline double to_double(const Root2& x) { return x.to_double(); }
inline double to_double(double x) { return x; }

}  // namespace strata
