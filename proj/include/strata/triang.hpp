#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "strata/matrix.hpp"
#include "strata/poly.hpp"
#include "strata/spinalg.hpp"
#include "strata/symgrp.hpp"

namespace strata {

class NotFactorizable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class DegenerateSum : public std::domain_error {
 public:
  DegenerateSum() : std::domain_error("s1 + s3 = 0") {}
};
class NotTotallyPositive : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NotLUDecomposable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NotConnectableInCell : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using RMatrix = Matrix<Rational>;

/// λ_j(t) = I + t·E_{j+1,j} in Lo¹_{n+1}.
template <class T>
Matrix<T> jacobi(int n, int j, const T& t) {
  if (j < 1 || j > n) throw std::invalid_argument("generator index out of range");
  Matrix<T> L = Matrix<T>::identity(n + 1);
  L(j, j - 1) = t;
  return L;
}

/// exp(t𝔫): entry (i, j) is t^{i−j}/(i−j)!.
RMatrix exp_nilpotent(int n, const Rational& t);
/// exp(s𝔥_L) with 𝔥_L = Σ √(j(n+1−j)) 𝔩_j.
Eigen::MatrixXd exp_hL(int n, double s);
/// exp of a strictly lower triangular matrix (finite series).
Eigen::MatrixXd exp_strictly_lower(const Eigen::MatrixXd& X);

/// (s̃1, s̃2, s̃3) with λ_i(s1)λ_{i+1}(s2)λ_i(s3) = λ_{i+1}(s̃1)λ_i(s̃2)λ_{i+1}(s̃3).
std::array<Rational, 3> commute_identity(const Rational& s1, const Rational& s2, const Rational& s3);

/// Inverse of a unit lower triangular matrix by forward substitution.
template <class T>
Matrix<T> unitri_inverse(const Matrix<T>& L) {
  const int N = L.rows();
  Matrix<T> X = Matrix<T>::identity(N);
  for (int j = 0; j < N; ++j)
    for (int i = j + 1; i < N; ++i) {
      T acc(0);
      for (int k = j; k < i; ++k) acc += L(i, k) * X(k, j);
      X(i, j) = -acc;
    }
  return X;
}

/// Bruhat cell (upper triangular double coset) of an invertible matrix by exact elimination:
/// the pivot of each column is its lowest nonzero entry among unused rows.
template <class T, class Zero>
Permutation cell_of(Matrix<T> M, Zero is_zero) {
  const int N = M.rows();
  std::vector<bool> used(N, false);
  std::vector<int> images(N, 0);
  for (int c = 0; c < N; ++c) {
    int r = -1;
    for (int k = N - 1; k >= 0; --k)
      if (!used[k] && !is_zero(M(k, c))) {
        r = k;
        break;
      }
    if (r < 0) throw std::domain_error("cell_of: singular matrix");
    used[r] = true;
    images[r] = c + 1;
    for (int r2 = 0; r2 < r; ++r2) {
      if (is_zero(M(r2, c))) continue;
      T f = M(r2, c) / M(r, c);
      for (int k = 0; k < N; ++k) M(r2, k) -= f * M(r, k);
    }
    for (int c2 = c + 1; c2 < N; ++c2) {
      if (is_zero(M(r, c2))) continue;
      T f = M(r, c2) / M(r, c);
      for (int k = 0; k < N; ++k) M(k, c2) -= f * M(k, c);
    }
  }
  return Permutation(images);
}

/// Parameters t with L = λ_{i_1}(t_1)⋯λ_{i_k}(t_k), peeled from the right. The product over a
/// prefix lies in the cell of the inverse prefix permutation; each step reads off t as the ratio
/// of two minors at which that cell drops. No sign condition is imposed and the result is only
/// meaningful after re-multiplication.
template <class T>
std::vector<T> peel_factors(Matrix<T> L, const ReducedWord& w) {
  const int N = L.rows(), n = N - 1;
  std::vector<T> params(w.size());
  for (int k = static_cast<int>(w.size()) - 1; k >= 0; --k) {
    const int i = w[k];
    const Permutation pi = word_product(n, ReducedWord(w.begin(), w.begin() + k + 1)).inverse();
    std::vector<int> rows, cols, cols2;
    for (int r = 1; r <= N; ++r)
      if (pi(r) <= i) rows.push_back(r - 1);
    for (int c = 0; c < i; ++c) {
      cols.push_back(c);
      cols2.push_back(c == i - 1 ? i : c);
    }
    T g = det_field(L.sub(rows, cols2));
    if (g == T(0)) throw std::domain_error("peel_factors: vanishing minor");
    T t = det_field(L.sub(rows, cols)) / g;
    for (int r = 0; r < N; ++r) L(r, i - 1) -= t * L(r, i);
    params[k] = t;
  }
  return params;
}

/// Product λ_{i_1}(t_1)⋯λ_{i_k}(t_k).
template <class T>
Matrix<T> jacobi_product(int n, const ReducedWord& w, const std::vector<T>& t) {
  Matrix<T> L = Matrix<T>::identity(n + 1);
  for (size_t k = 0; k < w.size(); ++k) {
    // right multiplication by λ_i(t): column i += t·column i+1
    const int i = w[k];
    for (int r = 0; r <= n; ++r) L(r, i - 1) += t[k] * L(r, i);
  }
  return L;
}

/// Exact factorization with all parameters positive; throws NotFactorizable otherwise.
std::vector<Rational> factor_along(const RMatrix& L, const ReducedWord& w);
/// Float factorization; parameters must exceed tol·scale.
std::vector<double> factor_along(const Eigen::MatrixXd& L, const ReducedWord& w, double tol = 1e-10);
/// Factorization over rational functions (no sign test).
std::optional<std::vector<RatFunc>> factor_along_symbolic(const Matrix<RatFunc>& L, const ReducedWord& w);

/// Reduced word of η beginning with the letter i.
ReducedWord eta_word_starting_with(int n, int i);

bool is_ll(const RMatrix& L0, const RMatrix& L1);
bool is_leq(const RMatrix& L0, const RMatrix& L1);
bool is_ll(const Eigen::MatrixXd& L0, const Eigen::MatrixXd& L1, double tol = 1e-10);

/// Nested domain X_k = {t : 0 < t_j < g_j(t_1..t_{j−1})} describing Ac_σ(L_x) along a word.
/// g_j is the first parameter of L_{σ_{j−1}}^{-1} L_x factored along a reduced word of η that
/// starts with the letter i_j.
class Quasiproduct {
 public:
  Quasiproduct(RMatrix Lx, ReducedWord word);
  const ReducedWord& word() const { return word_; }
  const Rational& c1() const { return c1_; }
  /// g_{k+1}(t_1..t_k); nullopt when the prefix leaves the domain.
  std::optional<Rational> bound(const std::vector<Rational>& prefix) const;
  bool contains(const std::vector<Rational>& t) const;
  /// λ_{i_1}(t_1)⋯λ_{i_k}(t_k).
  RMatrix product(const std::vector<Rational>& t) const;

 private:
  RMatrix Lx_;
  ReducedWord word_;
  Rational c1_;
};

Quasiproduct accessibility_quasiproduct(const RMatrix& Lx, const ReducedWord& word);

/// Symbolic g_{k+1}(t_1..t_k) for the same construction.
std::optional<RatFunc> accessibility_bound_symbolic(const Matrix<RatFunc>& Lx, const ReducedWord& word,
                                                    const std::vector<RatFunc>& prefix);

struct LU {
  Eigen::MatrixXd L, U;
};
/// Q = L·U without pivoting.
LU lu_of_rotation(const Eigen::MatrixXd& Q);

struct QR {
  Eigen::MatrixXd Q, R;
};
/// M = Q·R with R upper triangular, positive diagonal.
QR qr_positive(const Eigen::MatrixXd& M);

/// E_λ^{-1} L E_λ with E_λ = diag(1, λ, …, λ^n).
RMatrix projective_scale(const RMatrix& L, const Rational& lambda);
Eigen::MatrixXd projective_scale(const Eigen::MatrixXd& L, double lambda);
/// Q(U^{-1} Γ(t)) for each sample.
std::vector<Eigen::MatrixXd> projective_transform_upper(const std::vector<Eigen::MatrixXd>& points,
                                                        const Eigen::MatrixXd& U);

/// Arc t ↦ A·(exp(tc𝔥))^U, t ∈ [0,1], from A to B inside A·Bru_{acute η}.
class ConvexArc {
 public:
  ConvexArc(SpinF A, Eigen::MatrixXd U, double c, int samples = 256);
  SpinF at(double t) const;
  const Eigen::MatrixXd& U() const { return U_; }
  double c() const { return c_; }

 private:
  SpinF A_;
  Eigen::MatrixXd U_, Uinv_;
  double c_;
  std::vector<SpinF> lifts_;
};

/// Solves U from the Bruhat normal forms of Π(exp(c𝔥)) and Π(A^{-1}B), c = π/4.
ConvexArc convex_connect(const SpinF& A, const SpinF& B);

/// Convex path in Lo¹ from I to P: the product over a reduced word of η of
/// exp(τ_k 𝔩_{i_k} + δ𝔫), one factor per equal subinterval of [0,1].
class Lo1Path {
 public:
  Lo1Path(ReducedWord word, std::vector<double> tau, double delta);
  Eigen::MatrixXd at(double s) const;
  /// Subdiagonal of E^{-1}E' at s (all entries positive).
  std::vector<double> beta(double s) const;
  const std::vector<double>& tau() const { return tau_; }
  double delta() const { return delta_; }

 private:
  int piece(double s, double& r) const;
  ReducedWord word_;
  std::vector<double> tau_;
  double delta_;
  int n_;
  std::vector<Eigen::MatrixXd> prefix_;  // products of whole factors
};

/// Newton solve for P ∈ Pos_η starting from the factorization along the word; δ is shrunk
/// until it converges. Throws NotTotallyPositive when P does not factor with parameters above
/// tol·max|P|.
Lo1Path solve_lo1_path(const Eigen::MatrixXd& P, const ReducedWord& word, double delta_fraction = 0.05,
                       double tol = 1e-10);

}  // namespace strata
