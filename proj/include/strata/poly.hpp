#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strata/rational.hpp"

namespace strata {

class ZeroPolynomial : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Univariate polynomial over ℚ, coefficients from low to high degree.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c);
  static UPoly constant(const Rational& c) { return UPoly({c}); }
  static UPoly monomial(const Rational& c, int k);

  /// −1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coefficients() const { return c_; }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Rational& s) const;
  UPoly operator-() const { return *this * Rational(-1); }
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  UPoly derivative() const;
  UPoly monic() const;
  Rational eval(const Rational& x) const;
  double eval(double x) const;
  int sign_at(const Rational& x) const { return sgn(eval(x)); }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly gcd(UPoly a, UPoly b);
/// p = c·∏ f_k^k with f_k square-free, pairwise coprime, monic and nonconstant.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p);
UPoly squarefree_part(const UPoly& p);
/// Order of vanishing of p at x (p nonzero).
int order_at(const UPoly& p, const Rational& x);

std::vector<UPoly> sturm_sequence(const UPoly& p);
/// Number of distinct roots in (a, b] of the square-free polynomial behind seq.
int sturm_count(const std::vector<UPoly>& seq, const Rational& a, const Rational& b);

/// Either an exact rational root (lo == hi) or an open interval (lo, hi) holding exactly one
/// root, with neither endpoint a root.
struct RootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
  double approx() const { return to_double((lo + hi) / 2); }
};

/// Cauchy bound: all real roots have |x| < bound.
Rational root_bound(const UPoly& p);
/// Distinct real roots, sorted, as disjoint isolating intervals.
std::vector<RootInterval> isolate_real_roots(const UPoly& p);
/// Shrinks an isolating interval of a root of the square-free polynomial p to width ≤ w.
RootInterval refine_root(const UPoly& p, RootInterval r, const Rational& w);
/// True when the square-free polynomial p has a root inside r (or at r.lo when exact).
bool has_root_in(const UPoly& p, const RootInterval& r);

/// Exponent vector over variable indices 0..k−1 (trailing zeros trimmed).
using Monomial = std::vector<int>;

/// Sparse multivariate polynomial over ℚ; variables are indices, names only for printing.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(int c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MultiPoly(const Rational& c);                   // NOLINT(google-explicit-constructor)
  static MultiPoly var(int idx, int power = 1);
  static MultiPoly from_univariate(const UPoly& p, int idx);

  const std::map<Monomial, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
  Rational constant_term() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  bool operator==(const MultiPoly& o) const { return t_ == o.t_; }
  bool operator!=(const MultiPoly& o) const { return t_ != o.t_; }

  int degree(int var) const;
  /// Coefficient of var^k as a polynomial in the other variables.
  MultiPoly coeff(int var, int k) const;
  MultiPoly derivative(int var) const;
  /// Antiderivative in var vanishing at var = 0.
  MultiPoly integrate(int var) const;
  MultiPoly substitute(int var, const Rational& v) const;
  MultiPoly substitute(int var, const MultiPoly& p) const;
  /// Requires every other variable to be absent.
  UPoly to_univariate(int var) const;
  /// Largest variable index used, plus one.
  int num_vars() const;

  /// Canonical text: terms by descending total degree then lexicographic exponent, e.g.
  /// "1/2*t^2 + x1*t - x2".
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::map<Monomial, Rational> t_;
};

/// a / b when b divides a exactly; throws std::domain_error otherwise.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);
/// Sylvester resultant in var.
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, int var);
/// (−1)^{k(k−1)/2} res(p, ∂p)/lc(p) for deg p = k ≥ 2; 1 for k ≤ 1.
MultiPoly discriminant(const MultiPoly& p, int var);

/// Quotient of multivariate polynomials, reduced only when the denominator divides the
/// numerator; equality by cross-multiplication.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(int c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(MultiPoly num, MultiPoly den = MultiPoly(1));  // NOLINT(google-explicit-constructor)

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  bool operator==(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

 private:
  void normalize();
  MultiPoly num_{0};
  MultiPoly den_{1};
};

}  // namespace strata
