#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace strata {

/// Sign of e_A e_B relative to e_{A xor B} for the Euclidean metric (blades as bitmasks,
/// bit k ↔ e_{k+1}, ascending index order within a blade).
inline int blade_sign(unsigned a, unsigned b) {
  a >>= 1;
  int swaps = 0;
  while (a) {
    swaps += __builtin_popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

inline int blade_grade(unsigned a) { return __builtin_popcount(a); }

/// Element of the Clifford algebra of ℝ^{n+1} (dense over all 2^{n+1} blades).
/// Spin_{n+1} lives in the even part; odd elements only occur as intermediates.
template <class S>
class Clifford {
 public:
  Clifford() = default;
  explicit Clifford(int n) : n_(n), c_(size_t(1) << (n + 1), S(0)) {
    if (n < 1 || n > 8) throw std::invalid_argument("Clifford rank must be in 1..8");
  }

  static Clifford scalar(int n, const S& s) {
    Clifford z(n);
    z.c_[0] = s;
    return z;
  }
  static Clifford blade(int n, unsigned mask, const S& s) {
    Clifford z(n);
    z.c_.at(mask) = s;
    return z;
  }
  /// Vector e_i, 1 ≤ i ≤ n+1.
  static Clifford basis_vector(int n, int i) { return blade(n, 1u << (i - 1), S(1)); }

  int rank() const { return n_; }
  unsigned blade_count() const { return static_cast<unsigned>(c_.size()); }
  const S& operator[](unsigned mask) const { return c_[mask]; }
  S& operator[](unsigned mask) { return c_[mask]; }
  const std::vector<S>& coefficients() const { return c_; }

  Clifford operator*(const Clifford& o) const {
    check(o);
    Clifford r(n_);
    const unsigned m = blade_count();
    for (unsigned a = 0; a < m; ++a) {
      if (c_[a] == S(0)) continue;
      for (unsigned b = 0; b < m; ++b) {
        if (o.c_[b] == S(0)) continue;
        S p = c_[a] * o.c_[b];
        if (blade_sign(a, b) < 0) r.c_[a ^ b] -= p;
        else r.c_[a ^ b] += p;
      }
    }
    return r;
  }
  Clifford operator+(const Clifford& o) const {
    check(o);
    Clifford r = *this;
    for (unsigned a = 0; a < blade_count(); ++a) r.c_[a] += o.c_[a];
    return r;
  }
  Clifford operator-(const Clifford& o) const {
    check(o);
    Clifford r = *this;
    for (unsigned a = 0; a < blade_count(); ++a) r.c_[a] -= o.c_[a];
    return r;
  }
  Clifford operator-() const {
    Clifford r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Clifford operator*(const S& s) const {
    Clifford r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  bool operator==(const Clifford& o) const { return n_ == o.n_ && c_ == o.c_; }
  bool operator!=(const Clifford& o) const { return !(*this == o); }

  /// Reversion: grade-k part scaled by (−1)^{k(k−1)/2}.
  Clifford reverse() const {
    Clifford r = *this;
    for (unsigned a = 0; a < blade_count(); ++a) {
      int k = blade_grade(a);
      if ((k * (k - 1) / 2) % 2) r.c_[a] = -r.c_[a];
    }
    return r;
  }

  bool is_even() const {
    for (unsigned a = 0; a < blade_count(); ++a)
      if (blade_grade(a) % 2 && !(c_[a] == S(0))) return false;
    return true;
  }

  /// Number of nonzero coefficients.
  int support() const {
    int k = 0;
    for (const auto& x : c_)
      if (!(x == S(0))) ++k;
    return k;
  }

 private:
  void check(const Clifford& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Clifford rank mismatch");
  }
  int n_ = 0;
  std::vector<S> c_;
};

/// Largest coefficient difference; for float elements.
inline double max_abs_diff(const Clifford<double>& a, const Clifford<double>& b) {
  double m = 0;
  for (unsigned k = 0; k < a.blade_count(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace strata
