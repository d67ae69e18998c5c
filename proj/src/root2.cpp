#include "strata/root2.hpp"

#include <cmath>
#include <stdexcept>

namespace strata {

Root2 Root2::inv_sqrt2_pow(int k) {
  if (k < 0) throw std::invalid_argument("negative half power");
  Rational scale(1);
  scale /= Rational(Integer(1) << (k / 2));
  if (k % 2 == 0) return Root2(scale, 0);
  return Root2(0, scale / 2);
}

Root2& Root2::operator/=(const Root2& o) {
  Rational norm = o.a_ * o.a_ - 2 * o.b_ * o.b_;
  if (norm == 0) throw std::domain_error("division by zero in Q(sqrt2)");
  Root2 conj(o.a_ / norm, -o.b_ / norm);
  return *this *= conj;
}

int Root2::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b√2 have opposite signs: compare a² with 2b².
  Rational d = a_ * a_ - 2 * b_ * b_;
  return sgn(d) * sa;
}

double Root2::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(2.0); }

namespace {

// q = p / 2^e with p integer and e ≥ 0, or nullopt for non-dyadic q.
std::optional<std::pair<Integer, int>> dyadic(const Rational& q) {
  Integer den = q.get_den();
  int e = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++e;
  }
  if (den != 1) return std::nullopt;
  return std::make_pair(Integer(q.get_num()), e);
}

}  // namespace

std::optional<std::pair<Integer, int>> Root2::as_dyadic_halfpow() const {
  if (is_zero()) return std::make_pair(Integer(0), 0);
  if (b_ == 0) {
    auto d = dyadic(a_);
    if (!d) return std::nullopt;
    return std::make_pair(d->first, 2 * d->second);
  }
  if (a_ == 0) {
    // b√2 = p·2^{1/2 − e} = p·2^{−(2e−1)/2}
    auto d = dyadic(b_);
    if (!d) return std::nullopt;
    if (d->second == 0) return std::make_pair(Integer(2 * d->first), 1);
    return std::make_pair(d->first, 2 * d->second - 1);
  }
  return std::nullopt;
}

std::string Root2::to_string() const {
  if (b_ == 0) return a_.get_str();
  std::string s;
  if (a_ != 0) s = a_.get_str() + (sgn(b_) > 0 ? "+" : "");
  return s + b_.get_str() + "*sqrt2";
}

}  // namespace strata
