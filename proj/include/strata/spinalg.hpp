#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "strata/clifford.hpp"
#include "strata/matrix.hpp"
#include "strata/root2.hpp"
#include "strata/symgrp.hpp"
#include "strata/word.hpp"

namespace strata {

/// Exact even Clifford elements with coefficients in ℚ(√2).
using CliffordEven = Clifford<Root2>;
/// Float Clifford elements, used for points of Spin_{n+1} along curves.
using SpinF = Clifford<double>;

class NotUnit : public std::domain_error {
 public:
  NotUnit() : std::domain_error("element is not a unit of Spin") {}
};
class IdentityLetter : public std::invalid_argument {
 public:
  IdentityLetter() : std::invalid_argument("word letter is the identity permutation") {}
};
class NotInLiftedSignedGroup : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NoRootInInterval : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bitmask of the blade e_j e_{j+1}.
inline unsigned plane_blade(int j) { return 3u << (j - 1); }

/// α_j(kπ/2), exact.
CliffordEven alpha_quarter(int n, int j, int k);
/// α_j(θ) = cos(θ/2) + sin(θ/2) e_{j+1}e_j.
SpinF alpha(int n, int j, double theta);

/// Product of α_{i}(π/2) over a reduced word of σ.
CliffordEven acute(const Permutation& s);
/// Product of α_{i}(−π/2) over a reduced word of σ.
CliffordEven grave(const Permutation& s);
/// acute σ · (grave σ)^{-1}, an element of Quat_{n+1}.
CliffordEven hat(const Permutation& s);

SpinF to_float(const CliffordEven& z);

/// Inverse of a unit: the reverse.
template <class S>
Clifford<S> spin_inverse(const Clifford<S>& z) {
  return z.reverse();
}

/// Π(z): column i is z e_i z̃ in the basis e_1..e_{n+1}.
Matrix<Root2> project(const CliffordEven& z);
Eigen::MatrixXd project(const SpinF& z);

bool is_unit(const CliffordEven& z);
bool is_unit(const SpinF& z, double tol = 1e-12);
/// ±(single even blade) with coefficient ±1.
bool is_quat(const CliffordEven& z);

/// Σ_j c_j ½ e_{j+1}e_j (the spin image of Σ c_j 𝔞_j).
SpinF tridiagonal_bivector(int n, const std::vector<double>& c);
/// Spin image of an antisymmetric matrix: Σ_{i<j} X_{ji} ½ e_j e_i.
SpinF skew_bivector(const Eigen::MatrixXd& X);
/// exp of a bivector by scaling and squaring of the Taylor series.
SpinF exp_bivector(const SpinF& b);
/// exp(s𝔥) with 𝔥 = Σ √(j(n+1−j)) 𝔞_j.
SpinF exp_h(int n, double s);
/// Coefficients √(j(n+1−j)), j = 1..n.
std::vector<double> h_coefficients(int n);

/// Rescales z to z·|z z̃|^{-1/2}.
SpinF renormalize(const SpinF& z);

/// Orthogonal factor of the QR decomposition with positive diagonal in R.
Eigen::MatrixXd orthogonal_part(const Eigen::MatrixXd& M);

/// One lift of a rotation matrix to Spin (adjacent-plane Givens decomposition).
SpinF lift_rotation(const Eigen::MatrixXd& Q);
/// The lift of Q closest to prev.
SpinF lift_near(const Eigen::MatrixXd& Q, const SpinF& prev);

/// X = V1·P̄·V2 with V1 unit upper triangular, P̄ a signed permutation matrix and V2 upper
/// triangular with positive diagonal. sigma is the permutation of P̄ (row i ↦ column i^σ).
struct BruhatNormalForm {
  Eigen::MatrixXd V1;
  Eigen::MatrixXd P;
  Eigen::MatrixXd V2;
  Permutation sigma;
};

BruhatNormalForm bruhat_normal_form(const Eigen::MatrixXd& X, double tol = 1e-9);
Permutation bruhat_cell(const Eigen::MatrixXd& X, double tol = 1e-9);

/// The element b = ±q·acute σ of B̃⁺ with z ∈ Bru_b, resolving the lift by continuity along
/// the path Q(V1(s) P̄ V2(s)) from Π(z) to P̄.
struct SignedCell {
  Permutation sigma;
  CliffordEven b;
};
SignedCell spin_cell(const SpinF& z, double tol = 1e-9);

/// Exact decomposition z = q·acute σ with q ∈ Quat.
struct LiftedSigned {
  CliffordEven q;
  Permutation sigma;
};
LiftedSigned decompose_lifted(const CliffordEven& z);

/// adv(z0) = q_a acute η where z0 = q_a acute σ0.
CliffordEven adv(const CliffordEven& z0);
/// chop(z0) = q_c grave η where z0 = q_c grave σ0.
CliffordEven chop(const CliffordEven& z0);

/// B(w, j) for j = 1..ℓ+1 and B(w, j+½) for j = 0..ℓ.
struct SpinWordTable {
  Word word;
  int n = 0;
  std::vector<CliffordEven> half;     // half[j] = B(w, j+½)
  std::vector<CliffordEven> integer;  // integer[j-1] = B(w, j)
  const CliffordEven& at_half(int j) const { return half.at(j); }
  const CliffordEven& at(int j) const { return integer.at(j - 1); }
};

SpinWordTable word_table(const Word& w, int n);
/// acute η · hat σ_1 ⋯ hat σ_ℓ · acute η.
CliffordEven q_of_word(const Word& w, int n);

/// θ ∈ (0, π) with y·α_i(−θ) ∈ Bru_{ρ a_i}, for y ∈ Bru_ρ and ρa_i ⊲ ρ. The exit is the zero of
/// the minor with rows {r : r^ρ ≤ i} and columns 1..i of Π(y α_i(−θ)).
double theta_exit(const SpinF& y, int i, const Permutation& rho, double tol = 1e-12);

nlohmann::json to_json(const CliffordEven& z);
CliffordEven clifford_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SpinF& z);

}  // namespace strata
