#include "strata/triang.hpp"

#include <algorithm>
#include <numbers>

namespace strata {

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& M) {
  Eigen::MatrixXd E(M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) E(i, j) = M(i, j);
  return E;
}

Matrix<double> from_eigen(const Eigen::MatrixXd& E) {
  Matrix<double> M(static_cast<int>(E.rows()), static_cast<int>(E.cols()));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) M(i, j) = E(i, j);
  return M;
}

bool is_unit_lower(const RMatrix& L) {
  for (int i = 0; i < L.rows(); ++i)
    for (int j = i; j < L.cols(); ++j)
      if (L(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

int rank_from_word_length(size_t m) {
  int n = 0;
  while (static_cast<size_t>(n * (n + 1) / 2) < m) ++n;
  if (static_cast<size_t>(n * (n + 1) / 2) != m) throw std::invalid_argument("word is not a reduced word of η");
  return n;
}

}  // namespace

RMatrix exp_nilpotent(int n, const Rational& t) {
  const int N = n + 1;
  RMatrix E = RMatrix::identity(N);
  Rational term(1);
  for (int k = 1; k < N; ++k) {
    term = term * t / k;
    for (int j = 0; j + k < N; ++j) E(j + k, j) = term;
  }
  return E;
}

Eigen::MatrixXd exp_strictly_lower(const Eigen::MatrixXd& X) {
  const int N = static_cast<int>(X.rows());
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(N, N), term = E;
  for (int k = 1; k < N; ++k) {
    term = term * X / k;
    E += term;
  }
  return E;
}

Eigen::MatrixXd exp_hL(int n, double s) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int j = 1; j <= n; ++j) X(j, j - 1) = s * std::sqrt(static_cast<double>(j * (n + 1 - j)));
  return exp_strictly_lower(X);
}

std::array<Rational, 3> commute_identity(const Rational& s1, const Rational& s2, const Rational& s3) {
  const Rational sum = s1 + s3;
  if (sum == 0) throw DegenerateSum();
  return {s2 * s3 / sum, sum, s1 * s2 / sum};
}

std::vector<Rational> factor_along(const RMatrix& L, const ReducedWord& w) {
  const int n = L.rows() - 1;
  if (!is_unit_lower(L)) throw NotFactorizable("matrix is not unit lower triangular");
  std::vector<Rational> t;
  try {
    t = peel_factors(L, w);
  } catch (const std::domain_error&) {
    throw NotFactorizable("matrix is not in the positive cell of the word");
  }
  for (const auto& x : t)
    if (x <= 0) throw NotFactorizable("a factor is not positive");
  if (!(jacobi_product(n, w, t) == L)) throw NotFactorizable("matrix is not in the positive cell of the word");
  return t;
}

std::vector<double> factor_along(const Eigen::MatrixXd& L, const ReducedWord& w, double tol) {
  const int n = static_cast<int>(L.rows()) - 1;
  const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
  std::vector<double> t;
  try {
    t = peel_factors(from_eigen(L), w);
  } catch (const std::domain_error&) {
    throw NotFactorizable("matrix is not in the positive cell of the word");
  }
  for (double x : t)
    if (!(x > tol * scale)) throw NotFactorizable("a factor is not positive");
  const Eigen::MatrixXd back = to_eigen(jacobi_product(n, w, t));
  if ((back - L).cwiseAbs().maxCoeff() > 1e3 * tol * scale)
    throw NotFactorizable("matrix is not in the positive cell of the word");
  return t;
}

std::optional<std::vector<RatFunc>> factor_along_symbolic(const Matrix<RatFunc>& L, const ReducedWord& w) {
  const int n = L.rows() - 1;
  std::vector<RatFunc> t;
  try {
    t = peel_factors(L, w);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  const Matrix<RatFunc> back = jacobi_product(n, w, t);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (back(i, j) != L(i, j)) return std::nullopt;
  return t;
}

ReducedWord eta_word_starting_with(int n, int i) {
  ReducedWord w{i};
  for (int k : reduced_word(compose(Permutation::generator(n, i), Permutation::longest(n)))) w.push_back(k);
  return w;
}

bool is_leq(const RMatrix& L0, const RMatrix& L1) {
  const RMatrix P = unitri_inverse(L0) * L1;
  if (P == RMatrix::identity(P.rows())) return true;
  const Permutation pi = cell_of(P, [](const Rational& x) { return x == 0; });
  try {
    factor_along(P, reduced_word(pi));
    return true;
  } catch (const NotFactorizable&) {
    return false;
  }
}

bool is_ll(const RMatrix& L0, const RMatrix& L1) {
  const int n = L0.rows() - 1;
  try {
    factor_along(unitri_inverse(L0) * L1, reduced_word(Permutation::longest(n)));
    return true;
  } catch (const NotFactorizable&) {
    return false;
  }
}

bool is_ll(const Eigen::MatrixXd& L0, const Eigen::MatrixXd& L1, double tol) {
  const int n = static_cast<int>(L0.rows()) - 1;
  const Eigen::MatrixXd P = L0.triangularView<Eigen::UnitLower>().solve(L1);
  try {
    factor_along(P, reduced_word(Permutation::longest(n)), tol);
    return true;
  } catch (const NotFactorizable&) {
    return false;
  }
}

Quasiproduct::Quasiproduct(RMatrix Lx, ReducedWord word) : Lx_(std::move(Lx)), word_(std::move(word)) {
  const int n = Lx_.rows() - 1;
  if (!is_reduced(n, word_)) throw std::invalid_argument("word is not reduced");
  try {
    factor_along(Lx_, reduced_word(Permutation::longest(n)));
  } catch (const NotFactorizable&) {
    throw NotTotallyPositive("L_x is not totally positive");
  }
  if (!word_.empty()) c1_ = *bound({});
}

std::optional<Rational> Quasiproduct::bound(const std::vector<Rational>& prefix) const {
  const int n = Lx_.rows() - 1;
  if (prefix.size() >= word_.size()) throw std::invalid_argument("prefix covers the whole word");
  const RMatrix P = unitri_inverse(product(prefix)) * Lx_;
  try {
    return factor_along(P, eta_word_starting_with(n, word_[prefix.size()])).front();
  } catch (const NotFactorizable&) {
    return std::nullopt;
  }
}

bool Quasiproduct::contains(const std::vector<Rational>& t) const {
  if (t.size() != word_.size()) throw std::invalid_argument("parameter count differs from word length");
  std::vector<Rational> prefix;
  for (const auto& tk : t) {
    auto g = bound(prefix);
    if (!g || tk <= 0 || tk >= *g) return false;
    prefix.push_back(tk);
  }
  return true;
}

RMatrix Quasiproduct::product(const std::vector<Rational>& t) const {
  return jacobi_product(Lx_.rows() - 1, ReducedWord(word_.begin(), word_.begin() + t.size()), t);
}

Quasiproduct accessibility_quasiproduct(const RMatrix& Lx, const ReducedWord& word) { return {Lx, word}; }

std::optional<RatFunc> accessibility_bound_symbolic(const Matrix<RatFunc>& Lx, const ReducedWord& word,
                                                    const std::vector<RatFunc>& prefix) {
  const int n = Lx.rows() - 1;
  if (prefix.size() >= word.size()) throw std::invalid_argument("prefix covers the whole word");
  const Matrix<RatFunc> Lp = jacobi_product(n, ReducedWord(word.begin(), word.begin() + prefix.size()), prefix);
  auto t = factor_along_symbolic(unitri_inverse(Lp) * Lx, eta_word_starting_with(n, word[prefix.size()]));
  if (!t) return std::nullopt;
  return t->front();
}

LU lu_of_rotation(const Eigen::MatrixXd& Q) {
  const int N = static_cast<int>(Q.rows());
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(N, N), U = Q;
  for (int c = 0; c < N; ++c) {
    if (std::abs(U(c, c)) < 1e-13) throw NotLUDecomposable("vanishing leading minor");
    for (int r = c + 1; r < N; ++r) {
      const double f = U(r, c) / U(c, c);
      L(r, c) = f;
      U.row(r) -= f * U.row(c);
      U(r, c) = 0;
    }
  }
  return {L, U};
}

QR qr_positive(const Eigen::MatrixXd& M) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < M.cols(); ++k)
    if (R(k, k) < 0) {
      Q.col(k) *= -1;
      R.row(k) *= -1;
    }
  return {Q, R};
}

RMatrix projective_scale(const RMatrix& L, const Rational& lambda) {
  RMatrix R = L;
  for (int i = 0; i < L.rows(); ++i)
    for (int j = 0; j < L.cols(); ++j) {
      Rational f(1);
      const int e = j - i;
      for (int k = 0; k < std::abs(e); ++k) f *= lambda;
      R(i, j) = e >= 0 ? Rational(L(i, j) * f) : Rational(L(i, j) / f);
    }
  return R;
}

Eigen::MatrixXd projective_scale(const Eigen::MatrixXd& L, double lambda) {
  Eigen::MatrixXd R = L;
  for (int i = 0; i < L.rows(); ++i)
    for (int j = 0; j < L.cols(); ++j) R(i, j) *= std::pow(lambda, j - i);
  return R;
}

std::vector<Eigen::MatrixXd> projective_transform_upper(const std::vector<Eigen::MatrixXd>& points,
                                                        const Eigen::MatrixXd& U) {
  const Eigen::MatrixXd Uinv = U.inverse();
  std::vector<Eigen::MatrixXd> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(orthogonal_part(Uinv * p));
  return out;
}

ConvexArc::ConvexArc(SpinF A, Eigen::MatrixXd U, double c, int samples)
    : A_(std::move(A)), U_(std::move(U)), Uinv_(U_.inverse()), c_(c) {
  if (samples < 2) throw std::invalid_argument("at least two samples are needed");
  const int n = A_.rank();
  SpinF prev = SpinF::scalar(n, 1.0);
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    prev = lift_near(orthogonal_part(Uinv_ * project(exp_h(n, t * c_))), prev);
    lifts_.push_back(prev);
  }
}

SpinF ConvexArc::at(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  const int k = static_cast<int>(std::lround(t * (lifts_.size() - 1)));
  return A_ * lift_near(orthogonal_part(Uinv_ * project(exp_h(A_.rank(), t * c_))), lifts_[k]);
}

ConvexArc convex_connect(const SpinF& A, const SpinF& B) {
  const int n = A.rank();
  const Permutation eta = Permutation::longest(n);
  const SpinF D = A.reverse() * B;
  const BruhatNormalForm nx = bruhat_normal_form(project(D));
  if (nx.sigma != eta) throw NotConnectableInCell("A^{-1}B is not in the top cell");
  if (max_abs_diff(to_float(spin_cell(D).b), to_float(acute(eta))) > 1e-9)
    throw NotConnectableInCell("A^{-1}B is not in the cell of acute η");
  const double c = std::numbers::pi / 4;
  const BruhatNormalForm ny = bruhat_normal_form(project(exp_h(n, c)));
  if ((ny.P - nx.P).cwiseAbs().maxCoeff() > 1e-9) throw NotConnectableInCell("signed permutations differ");
  return ConvexArc(A, ny.V1 * nx.V1.inverse(), c);
}

Lo1Path::Lo1Path(ReducedWord word, std::vector<double> tau, double delta)
    : word_(std::move(word)), tau_(std::move(tau)), delta_(delta), n_(rank_from_word_length(word_.size())) {
  if (tau_.size() != word_.size()) throw std::invalid_argument("one τ per letter is required");
  const int N = n_ + 1;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(N, N);
  prefix_.push_back(P);
  for (size_t k = 0; k < word_.size(); ++k) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(N, N);
    for (int j = 1; j <= n_; ++j) X(j, j - 1) = delta_ + (j == word_[k] ? tau_[k] : 0.0);
    P = P * exp_strictly_lower(X);
    prefix_.push_back(P);
  }
}

int Lo1Path::piece(double s, double& r) const {
  const int m = static_cast<int>(word_.size());
  const double x = std::clamp(s, 0.0, 1.0) * m;
  const int k = std::min(m - 1, static_cast<int>(std::floor(x)));
  r = x - k;
  return k;
}

Eigen::MatrixXd Lo1Path::at(double s) const {
  double r = 0;
  const int k = piece(s, r);
  const int N = n_ + 1;
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(N, N);
  for (int j = 1; j <= n_; ++j) X(j, j - 1) = r * (delta_ + (j == word_[k] ? tau_[k] : 0.0));
  return prefix_[k] * exp_strictly_lower(X);
}

std::vector<double> Lo1Path::beta(double s) const {
  double r = 0;
  const int k = piece(s, r);
  const double m = static_cast<double>(word_.size());
  std::vector<double> b(n_);
  for (int j = 1; j <= n_; ++j) b[j - 1] = m * (delta_ + (j == word_[k] ? tau_[k] : 0.0));
  return b;
}

Lo1Path solve_lo1_path(const Eigen::MatrixXd& P, const ReducedWord& word, double delta_fraction, double tol) {
  const int N = static_cast<int>(P.rows());
  const int m = static_cast<int>(word.size());
  std::vector<double> tau0;
  try {
    tau0 = factor_along(P, word, tol);
  } catch (const NotFactorizable&) {
    throw NotTotallyPositive("target is not totally positive");
  }
  const double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
  auto residual = [&](const std::vector<double>& tau, double delta) {
    const Eigen::MatrixXd E = Lo1Path(word, tau, delta).at(1.0) - P;
    Eigen::VectorXd F(m);
    int k = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < i; ++j) F(k++) = E(i, j);
    return F;
  };
  double delta = delta_fraction * *std::min_element(tau0.begin(), tau0.end());
  for (int attempt = 0; attempt < 30; ++attempt, delta /= 2) {
    std::vector<double> tau = tau0;
    for (double& x : tau) x -= delta;
    Eigen::VectorXd F = residual(tau, delta);
    for (int it = 0; it < 80; ++it) {
      if (F.norm() < 1e-15 * scale) break;
      Eigen::MatrixXd J(m, m);
      for (int c = 0; c < m; ++c) {
        const double h = 1e-7 * std::max(1.0, std::abs(tau[c]));
        auto tp = tau, tm = tau;
        tp[c] += h;
        tm[c] -= h;
        J.col(c) = (residual(tp, delta) - residual(tm, delta)) / (2 * h);
      }
      const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-F);
      double lam = 1;
      bool moved = false;
      for (int ls = 0; ls < 30; ++ls, lam /= 2) {
        auto trial = tau;
        for (int c = 0; c < m; ++c) trial[c] += lam * step(c);
        Eigen::VectorXd Ft = residual(trial, delta);
        if (Ft.norm() < F.norm()) {
          tau = trial;
          F = Ft;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (!(F.norm() < 1e-12 * scale)) continue;
    if (std::all_of(tau.begin(), tau.end(), [&](double x) { return x + delta > 0; })) return Lo1Path(word, tau, delta);
  }
  throw std::runtime_error("Newton iteration for the Lo1 path did not converge");
}

}  // namespace strata
