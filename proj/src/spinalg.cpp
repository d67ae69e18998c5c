#include "strata/spinalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace strata {

namespace {

// cos(kπ/4), sin(kπ/4) exactly.
std::pair<Root2, Root2> eighth_turn(int k) {
  k = ((k % 8) + 8) % 8;
  const Root2 r(0, Rational(1, 2));
  static const int cs[8] = {2, 1, 0, -1, -2, -1, 0, 1};
  static const int sn[8] = {0, 1, 2, 1, 0, -1, -2, -1};
  auto val = [&](int code) -> Root2 {
    switch (code) {
      case 2: return Root2(1);
      case -2: return Root2(-1);
      case 1: return r;
      case -1: return -r;
      default: return Root2(0);
    }
  };
  return {val(cs[k]), val(sn[k])};
}

CliffordEven product_along(int n, const ReducedWord& w, int quarter) {
  CliffordEven z = CliffordEven::scalar(n, Root2(1));
  for (int i : w) z = z * alpha_quarter(n, i, quarter);
  return z;
}

}  // namespace

CliffordEven alpha_quarter(int n, int j, int k) {
  if (j < 1 || j > n) throw std::invalid_argument("generator index out of range");
  auto [c, s] = eighth_turn(k);
  CliffordEven z = CliffordEven::scalar(n, c);
  z[plane_blade(j)] = -s;
  return z;
}

SpinF alpha(int n, int j, double theta) {
  if (j < 1 || j > n) throw std::invalid_argument("generator index out of range");
  SpinF z = SpinF::scalar(n, std::cos(theta / 2));
  z[plane_blade(j)] = -std::sin(theta / 2);
  return z;
}

CliffordEven acute(const Permutation& s) { return product_along(s.rank(), reduced_word(s), 1); }

CliffordEven grave(const Permutation& s) { return product_along(s.rank(), reduced_word(s), -1); }

CliffordEven hat(const Permutation& s) { return acute(s) * grave(s).reverse(); }

SpinF to_float(const CliffordEven& z) {
  SpinF r(z.rank());
  for (unsigned a = 0; a < z.blade_count(); ++a) r[a] = z[a].to_double();
  return r;
}

Matrix<Root2> project(const CliffordEven& z) {
  const int N = z.rank() + 1;
  CliffordEven zr = z.reverse();
  Matrix<Root2> M(N, N);
  for (int i = 1; i <= N; ++i) {
    CliffordEven v = z * CliffordEven::basis_vector(z.rank(), i) * zr;
    for (int r = 1; r <= N; ++r) M(r - 1, i - 1) = v[1u << (r - 1)];
  }
  return M;
}

Eigen::MatrixXd project(const SpinF& z) {
  const int n = z.rank(), N = n + 1;
  const unsigned m = z.blade_count();
  // z e_i: multiply each blade by e_i on the right.
  SpinF zr = z.reverse();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  for (int i = 1; i <= N; ++i) {
    const unsigned ei = 1u << (i - 1);
    SpinF zv(n);
    for (unsigned a = 0; a < m; ++a) {
      if (z[a] == 0) continue;
      zv[a ^ ei] += blade_sign(a, ei) * z[a];
    }
    // only the grade-1 part of zv·z̃ is needed
    for (unsigned a = 0; a < m; ++a) {
      if (zv[a] == 0) continue;
      for (int r = 1; r <= N; ++r) {
        unsigned b = a ^ (1u << (r - 1));
        if (zr[b] == 0) continue;
        M(r - 1, i - 1) += blade_sign(a, b) * zv[a] * zr[b];
      }
    }
  }
  return M;
}

bool is_unit(const CliffordEven& z) {
  return z.is_even() && z * z.reverse() == CliffordEven::scalar(z.rank(), Root2(1));
}

bool is_unit(const SpinF& z, double tol) {
  if (!z.is_even()) return false;
  SpinF p = z * z.reverse();
  return max_abs_diff(p, SpinF::scalar(z.rank(), 1.0)) <= tol;
}

bool is_quat(const CliffordEven& z) {
  if (!z.is_even() || z.support() != 1) return false;
  for (unsigned a = 0; a < z.blade_count(); ++a)
    if (!z[a].is_zero()) return z[a] == Root2(1) || z[a] == Root2(-1);
  return false;
}

SpinF tridiagonal_bivector(int n, const std::vector<double>& c) {
  SpinF b(n);
  for (int j = 1; j <= n; ++j) b[plane_blade(j)] = -0.5 * c.at(j - 1);
  return b;
}

SpinF skew_bivector(const Eigen::MatrixXd& X) {
  const int N = static_cast<int>(X.rows());
  SpinF b(N - 1);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) b[(1u << i) | (1u << j)] = -0.5 * X(j, i);
  return b;
}

SpinF exp_bivector(const SpinF& b) {
  double norm = 0;
  for (unsigned a = 0; a < b.blade_count(); ++a) norm += b[a] * b[a];
  norm = std::sqrt(norm);
  int squarings = 0;
  while (norm > 0.25) {
    norm /= 2;
    ++squarings;
  }
  SpinF x = b * std::ldexp(1.0, -squarings);
  SpinF sum = SpinF::scalar(b.rank(), 1.0), term = sum;
  for (int k = 1; k <= 20; ++k) {
    term = term * x * (1.0 / k);
    sum = sum + term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return renormalize(sum);
}

std::vector<double> h_coefficients(int n) {
  std::vector<double> c(n);
  for (int j = 1; j <= n; ++j) c[j - 1] = std::sqrt(double(j) * (n + 1 - j));
  return c;
}

SpinF exp_h(int n, double s) {
  auto c = h_coefficients(n);
  for (auto& x : c) x *= s;
  return exp_bivector(tridiagonal_bivector(n, c));
}

SpinF renormalize(const SpinF& z) {
  SpinF p = z * z.reverse();
  return z * (1.0 / std::sqrt(p[0]));
}

Eigen::MatrixXd orthogonal_part(const Eigen::MatrixXd& M) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < M.cols(); ++k)
    if (R(k, k) < 0) Q.col(k) *= -1;
  return Q;
}

SpinF lift_rotation(const Eigen::MatrixXd& Qin) {
  const int N = static_cast<int>(Qin.rows()), n = N - 1;
  Eigen::MatrixXd Q = Qin;
  // G_m⋯G_1 Q = I, each G a rotation in an adjacent plane; then Q = G_1^T⋯G_m^T.
  SpinF z = SpinF::scalar(n, 1.0);
  for (int c = 0; c < N - 1; ++c) {
    for (int r = N - 1; r > c; --r) {
      double x = Q(r - 1, c), y = Q(r, c);
      if (y == 0 && x >= 0) continue;
      double phi = std::atan2(-y, x);
      double cs = std::cos(phi), sn = std::sin(phi);
      for (int k = 0; k < N; ++k) {
        double a = Q(r - 1, k), b = Q(r, k);
        Q(r - 1, k) = cs * a - sn * b;
        Q(r, k) = sn * a + cs * b;
      }
      z = z * alpha(n, r, -phi);
    }
  }
  if (Q(N - 1, N - 1) < 0) throw std::domain_error("lift_rotation: determinant is not +1");
  return renormalize(z);
}

SpinF lift_near(const Eigen::MatrixXd& Q, const SpinF& prev) {
  SpinF z = lift_rotation(Q);
  double dp = 0, dm = 0;
  for (unsigned a = 0; a < z.blade_count(); ++a) {
    dp += (z[a] - prev[a]) * (z[a] - prev[a]);
    dm += (z[a] + prev[a]) * (z[a] + prev[a]);
  }
  return dp <= dm ? z : -z;
}

BruhatNormalForm bruhat_normal_form(const Eigen::MatrixXd& X, double tol) {
  const int N = static_cast<int>(X.rows());
  Eigen::MatrixXd M = X;
  Eigen::MatrixXd Erow = Eigen::MatrixXd::Identity(N, N), Ecol = Erow;
  const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
  std::vector<bool> used(N, false);
  std::vector<int> images(N, 0);
  Eigen::VectorXd piv(N);
  for (int c = 0; c < N; ++c) {
    int r = -1;
    for (int k = N - 1; k >= 0; --k)
      if (!used[k] && std::abs(M(k, c)) > tol * scale) {
        r = k;
        break;
      }
    if (r < 0) throw std::domain_error("bruhat_normal_form: singular matrix");
    used[r] = true;
    images[r] = c + 1;
    const double p = M(r, c);
    for (int r2 = 0; r2 < r; ++r2) {
      double f = M(r2, c) / p;
      if (f == 0) continue;
      M.row(r2) -= f * M.row(r);
      Erow.row(r2) -= f * Erow.row(r);
    }
    for (int c2 = c + 1; c2 < N; ++c2) {
      double f = M(r, c2) / p;
      if (f == 0) continue;
      M.col(c2) -= f * M.col(c);
      Ecol.col(c2) -= f * Ecol.col(c);
    }
    piv(c) = p;
  }
  BruhatNormalForm nf;
  nf.P = Eigen::MatrixXd::Zero(N, N);
  for (int r = 0; r < N; ++r) nf.P(r, images[r] - 1) = piv(images[r] - 1) > 0 ? 1.0 : -1.0;
  nf.V1 = Erow.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(N, N));
  Eigen::MatrixXd EcolInv = Ecol.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(N, N));
  nf.V2 = piv.cwiseAbs().asDiagonal() * EcolInv;
  nf.sigma = Permutation(images);
  return nf;
}

Permutation bruhat_cell(const Eigen::MatrixXd& X, double tol) { return bruhat_normal_form(X, tol).sigma; }

SignedCell spin_cell(const SpinF& z, double tol) {
  const int n = z.rank(), N = n + 1;
  auto nf = bruhat_normal_form(project(z), tol);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
  Eigen::MatrixXd D = nf.V2.diagonal().asDiagonal();
  auto point = [&](double s) {
    Eigen::MatrixXd V1 = I + s * (nf.V1 - I), V2 = D + s * (nf.V2 - D);
    return orthogonal_part(V1 * nf.P * V2);
  };
  SpinF cur = z;
  double s = 1.0, h = 1.0 / 64;
  while (s > 0) {
    double s2 = std::max(0.0, s - h);
    SpinF next = lift_near(point(s2), cur);
    if (max_abs_diff(next, cur) > 0.05 && h > 1e-9) {
      h /= 2;
      continue;
    }
    cur = next;
    s = s2;
    h = std::min(h * 2, 1.0 / 16);
  }
  // Π(q·acute σ) = P̄ with q the blade of the −1 entries of P̄·Π(acute σ)^T.
  CliffordEven a = acute(nf.sigma);
  Eigen::MatrixXd Da = nf.P * project(to_float(a)).transpose();
  unsigned mask = 0;
  for (int k = 0; k < N; ++k)
    if (Da(k, k) < 0) mask |= 1u << k;
  CliffordEven cand = CliffordEven::blade(n, mask, Root2(1)) * a;
  SpinF cf = to_float(cand);
  if (max_abs_diff(cf, cur) > max_abs_diff(-cf, cur)) cand = -cand;
  return {nf.sigma, cand};
}

LiftedSigned decompose_lifted(const CliffordEven& z) {
  if (!is_unit(z)) throw NotInLiftedSignedGroup("element is not a unit");
  const int N = z.rank() + 1;
  Matrix<Root2> X = project(z);
  std::vector<int> images(N, 0);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) {
      const Root2& v = X(r, c);
      if (v.is_zero()) continue;
      if (!(v == Root2(1) || v == Root2(-1)) || images[r] != 0)
        throw NotInLiftedSignedGroup("projection is not a signed permutation matrix");
      images[r] = c + 1;
    }
  }
  Permutation s(images);
  CliffordEven q = z * acute(s).reverse();
  if (!is_quat(q)) throw NotInLiftedSignedGroup("quotient is not in Quat");
  return {q, s};
}

CliffordEven adv(const CliffordEven& z0) {
  auto d = decompose_lifted(z0);
  return d.q * acute(Permutation::longest(z0.rank()));
}

CliffordEven chop(const CliffordEven& z0) {
  auto d = decompose_lifted(z0);
  CliffordEven qc = z0 * grave(d.sigma).reverse();
  return qc * grave(Permutation::longest(z0.rank()));
}

SpinWordTable word_table(const Word& w, int n) {
  SpinWordTable t;
  t.word = w;
  t.n = n;
  CliffordEven ae = acute(Permutation::longest(n));
  t.half.push_back(ae);
  for (const auto& s : w) {
    if (s.rank() != n) throw RankMismatch();
    if (s.is_identity()) throw IdentityLetter();
    t.integer.push_back(t.half.back() * acute(s));
    t.half.push_back(t.half.back() * hat(s));
  }
  t.integer.push_back(t.half.back() * ae);
  return t;
}

CliffordEven q_of_word(const Word& w, int n) { return word_table(w, n).integer.back(); }

double theta_exit(const SpinF& y, int i, const Permutation& rho, double tol) {
  const int n = y.rank();
  if (i < 1 || i > n) throw std::invalid_argument("generator index out of range");
  const Eigen::MatrixXd Y = project(y);
  std::vector<int> rows;
  for (int r = 1; r <= n + 1; ++r)
    if (rho(r) <= i) rows.push_back(r - 1);
  if (static_cast<int>(rows.size()) != i) throw std::invalid_argument("theta_exit: bad cell");
  // Right multiplication by α_i(−θ) replaces column i by cos θ·col_i − sin θ·col_{i+1}.
  auto f = [&](double th) {
    Eigen::MatrixXd S(i, i);
    for (int a = 0; a < i; ++a) {
      for (int b = 0; b < i - 1; ++b) S(a, b) = Y(rows[a], b);
      S(a, i - 1) = std::cos(th) * Y(rows[a], i - 1) - std::sin(th) * Y(rows[a], i);
    }
    return S.determinant();
  };
  const double step = 1e-3;
  double a = 0, fa = f(a);
  if (fa == 0) throw std::invalid_argument("theta_exit: point is not in the cell");
  while (a < M_PI) {
    double b = std::min(a + step, M_PI), fb = f(b);
    if (fb == 0) return b;
    if ((fa < 0) != (fb < 0)) {
      while (b - a > tol) {
        double m = 0.5 * (a + b), fm = f(m);
        if ((fa < 0) == (fm < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
    a = b;
    fa = fb;
  }
  throw NoRootInInterval("theta_exit: no exit angle in (0, pi)");
}

namespace {

nlohmann::json number_json(const Integer& m) {
  if (m.fits_slong_p()) return m.get_si();
  return m.get_str();
}

nlohmann::json blade_json(unsigned mask) {
  nlohmann::json b = nlohmann::json::array();
  for (int k = 0; k < 32; ++k)
    if (mask & (1u << k)) b.push_back(k + 1);
  return b;
}

unsigned blade_mask(const nlohmann::json& b) {
  unsigned mask = 0;
  for (const auto& k : b) {
    int i = k.get<int>();
    if (i < 1 || i > 9) throw std::invalid_argument("blade index out of range");
    mask |= 1u << (i - 1);
  }
  return mask;
}

}  // namespace

nlohmann::json to_json(const CliffordEven& z) {
  nlohmann::json terms = nlohmann::json::array();
  for (unsigned a = 0; a < z.blade_count(); ++a) {
    if (z[a].is_zero()) continue;
    // one term per component of a + b√2
    for (int part = 0; part < 2; ++part) {
      Root2 comp = part == 0 ? Root2(z[a].rational_part()) : Root2(0, z[a].sqrt2_part());
      if (comp.is_zero()) continue;
      nlohmann::json t{{"blade", blade_json(a)}};
      if (auto d = comp.as_dyadic_halfpow()) {
        t["num"] = number_json(d->first);
        t["halfpow"] = d->second;
      } else if (part == 0) {
        t["num"] = to_string(comp.rational_part());
        t["halfpow"] = 0;
      } else {
        t["num"] = to_string(Rational(2 * comp.sqrt2_part()));
        t["halfpow"] = 1;
      }
      terms.push_back(t);
    }
  }
  return {{"n", z.rank()}, {"terms", terms}};
}

CliffordEven clifford_from_json(const nlohmann::json& j) {
  CliffordEven z(j.at("n").get<int>());
  for (const auto& t : j.at("terms")) {
    const auto& num = t.at("num");
    Rational m = num.is_string() ? parse_rational(num.get<std::string>()) : Rational(num.get<long>());
    unsigned mask = blade_mask(t.at("blade"));
    if (mask >= z.blade_count()) throw std::invalid_argument("blade index exceeds rank");
    z[mask] += Root2(m) * Root2::inv_sqrt2_pow(t.value("halfpow", 0));
  }
  if (!z.is_even()) throw std::invalid_argument("odd blade in CliffordEven");
  return z;
}

nlohmann::json to_json(const SpinF& z) {
  nlohmann::json terms = nlohmann::json::array();
  for (unsigned a = 0; a < z.blade_count(); ++a)
    if (z[a] != 0) terms.push_back({{"blade", blade_json(a)}, {"value", z[a]}});
  return {{"n", z.rank()}, {"terms", terms}};
}

}  // namespace strata
