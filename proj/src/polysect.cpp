#include "strata/polysect.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

namespace strata {

namespace {

Matrix<MultiPoly> exp_nilpotent_poly(int N, int t_var) {
  Matrix<MultiPoly> E(N, N);
  Rational fact(1);
  for (int k = 0; k < N; ++k) {
    if (k > 0) fact *= k;
    MultiPoly entry = MultiPoly::var(t_var, k) * MultiPoly(Rational(1) / fact);
    for (int j = 0; j + k < N; ++j) E(j + k, j) = entry;
  }
  return E;
}

Matrix<MultiPoly> slice_last(const Matrix<MultiPoly>& A, int var) {
  return A.map([var](const MultiPoly& p) { return p.substitute(var, Rational(0)); });
}

UPoly specialize(const MultiPoly& p, const SectionFamily& s, const std::vector<Rational>& x,
                 const std::optional<Rational>& u) {
  MultiPoly q = p;
  for (int l = 1; l <= s.d; ++l) q = q.substitute(s.x_var(l), x.at(l - 1));
  if (s.has_u()) {
    if (u) q = q.substitute(s.u_var(), *u);
    else if (s.u) q = q.substitute(s.u_var(), *s.u);
    else if (q.degree(s.u_var()) > 0) throw std::invalid_argument("a value for u is required");
  }
  return q.to_univariate(s.t_var());
}

}  // namespace

SectionFamily build_section(const Permutation& sigma, const std::optional<CliffordEven>& q) {
  if (sigma.is_identity()) throw IdentityLetter();
  SectionFamily s;
  s.sigma = sigma;
  s.n = sigma.rank();
  s.d = dim(sigma);
  const int N = s.n + 1;
  const Permutation eta = Permutation::longest(s.n);
  s.rho = eta * sigma;
  CliffordEven z0 = acute(eta) * acute(sigma);
  if (q) {
    if (!is_quat(*q) || q->rank() != s.n) throw std::invalid_argument("q must be an element of Quat");
    z0 = *q * z0;
  }
  s.Q0 = project(z0);
  for (int l = 1; l <= s.d + 1; ++l) s.names.push_back("x" + std::to_string(l));
  s.names.push_back("u");
  s.names.push_back("t");

  const Permutation rinv = s.rho.inverse();
  s.Mtilde = Matrix<MultiPoly>(N, N);
  int l = 0;
  for (int i = 1; i <= N; ++i) {
    const Rational sign = s.Q0(i - 1, s.rho(i) - 1).rational_part();
    s.Mtilde(i - 1, s.rho(i) - 1) = MultiPoly(sign);
    for (int j = 1; j <= N; ++j)
      if (j < s.rho(i) && rinv(j) < i) s.Mtilde(i - 1, j - 1) = MultiPoly(sign) * MultiPoly::var(s.x_var(++l));
  }
  if (l != s.d + 1) throw std::logic_error("section variable count differs from inv(sigma)");
  s.M = slice_last(s.Mtilde, s.x_var(s.d + 1)) * exp_nilpotent_poly(N, s.t_var());
  return s;
}

SectionFamily build_perturbed_family(FamilyKind kind, const std::optional<Rational>& u) {
  SectionFamily s = build_section(Permutation({3, 1, 4, 2}));
  if (kind == FamilyKind::Section) return s;
  if (u && abs(*u) >= 1) throw std::invalid_argument("|u| must be < 1");
  s.kind = kind;
  s.t_domain = std::make_pair(Rational(-1), Rational(1));
  s.u = u;
  const int N = s.n + 1, tv = s.t_var();
  const MultiPoly uu = u ? MultiPoly(*u) : MultiPoly::var(s.u_var());
  const MultiPoly t = MultiPoly::var(tv);
  if (kind == FamilyKind::MatrixU) {
    s.Mtilde(2, 1) -= uu;
    s.M = slice_last(s.Mtilde, s.x_var(s.d + 1)) * exp_nilpotent_poly(N, tv);
    return s;
  }
  // L' = L·Σ β_j 𝔩_j, L(0) = I: ∂_t L_{i,j} = L_{i,j+1} β_j.
  const std::vector<MultiPoly> beta{MultiPoly(1) + uu * t, MultiPoly(1), MultiPoly(1) - uu * t};
  Matrix<MultiPoly> L = Matrix<MultiPoly>::identity(N);
  for (int i = 0; i < N; ++i)
    for (int j = i - 1; j >= 0; --j) L(i, j) = (L(i, j + 1) * beta[j]).integrate(tv);
  s.M = slice_last(s.Mtilde, s.x_var(s.d + 1)) * L;
  return s;
}

std::vector<MultiPoly> minors(const SectionFamily& s) {
  const int N = s.n + 1;
  std::vector<MultiPoly> m;
  for (int j = 1; j <= s.n; ++j) {
    std::vector<int> rows, cols;
    for (int r = N - j; r < N; ++r) rows.push_back(r);
    for (int c = 0; c < j; ++c) cols.push_back(c);
    m.push_back(det_cofactor(s.M.sub(rows, cols)));
  }
  return m;
}

std::vector<MultiPoly> discriminants(const SectionFamily& s) {
  std::vector<MultiPoly> d;
  for (const auto& m : minors(s)) d.push_back(discriminant(m, s.t_var()));
  return d;
}

std::map<std::pair<int, int>, MultiPoly> resultants(const SectionFamily& s) {
  auto m = minors(s);
  std::map<std::pair<int, int>, MultiPoly> r;
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j) r[{i + 1, j + 1}] = resultant(m[i], m[j], s.t_var());
  return r;
}

Word ExactItinerary::word() const {
  Word w;
  for (const auto& e : events) w.push_back(e.letter);
  return w;
}

namespace {

// Whether the root isolated by r lies in (lo, hi); r is narrowed until it decides.
bool inside_open(const UPoly& sqf, RootInterval& r, const Rational& lo, const Rational& hi) {
  for (const Rational& end : {lo, hi})
    if (r.lo <= end && end <= r.hi && sqf.eval(end) == 0) return false;
  while (true) {
    if (r.hi < lo || r.lo > hi) return false;
    if (r.lo > lo && r.hi < hi) return true;
    r = refine_root(sqf, r, (r.hi - r.lo) / 4);
  }
}

}  // namespace

ExactItinerary classify_point(const SectionFamily& s, const std::vector<Rational>& x,
                              const std::optional<Rational>& u, const std::optional<Rational>& width) {
  if (static_cast<int>(x.size()) != s.d) throw std::invalid_argument("point has the wrong dimension");
  std::vector<std::vector<std::pair<UPoly, int>>> parts;
  UPoly all = UPoly::constant(1);
  for (const auto& m : minors(s)) {
    UPoly p = specialize(m, s, x, u);
    if (p.is_zero()) throw ZeroPolynomial("minor vanishes identically at this point");
    parts.push_back(squarefree_decomposition(p));
    for (const auto& [f, k] : parts.back()) all = all * f;
  }
  ExactItinerary it;
  const UPoly sqf = squarefree_part(all);
  for (auto root : isolate_real_roots(all)) {
    if (s.t_domain && !inside_open(sqf, root, s.t_domain->first, s.t_domain->second)) continue;
    if (width && root.hi - root.lo > *width) root = refine_root(sqf, root, *width);
    ExactEvent e{root, std::vector<int>(s.n, 0), Permutation()};
    for (int j = 0; j < s.n; ++j)
      for (const auto& [f, k] : parts[j])
        if (has_root_in(f, root)) e.mult[j] += k;
    try {
      e.letter = permutation_from_mult(e.mult, s.n);
    } catch (const NotARealizableMultVector&) {
      std::string m;
      for (int v : e.mult) m += std::to_string(v) + " ";
      throw UnrecognizedMultPattern("multiplicity pattern " + m + "is not a permutation");
    }
    it.events.push_back(std::move(e));
  }
  return it;
}

std::vector<GridLabel> stratum_map(const SectionFamily& s, const std::vector<GridAxis>& axes,
                                   const std::optional<Rational>& u, int threads,
                                   const std::optional<Rational>& width) {
  if (static_cast<int>(axes.size()) != s.d) throw std::invalid_argument("grid dimension differs from section");
  size_t total = 1;
  for (const auto& a : axes) total *= a.count;
  std::vector<GridLabel> out(total);
  auto work = [&](size_t begin, size_t end) {
    for (size_t idx = begin; idx < end; ++idx) {
      size_t rem = idx;
      std::vector<Rational> x(axes.size());
      for (int k = static_cast<int>(axes.size()) - 1; k >= 0; --k) {
        x[k] = axes[k].at(static_cast<int>(rem % axes[k].count));
        rem /= axes[k].count;
      }
      out[idx] = {x, classify_point(s, x, u, width)};
    }
  };
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<size_t>(threads, std::max<size_t>(1, total / 16)));
  std::vector<std::thread> pool;
  const size_t chunk = (total + threads - 1) / threads;
  for (int k = 0; k < threads; ++k) {
    size_t b = k * chunk, e = std::min(total, b + chunk);
    if (b < e) pool.emplace_back(work, b, e);
  }
  for (auto& th : pool) th.join();
  return out;
}

void write_stratum_csv(std::ostream& os, const SectionFamily& s, const std::vector<GridLabel>& labels,
                       const std::optional<Rational>& u) {
  for (int l = 1; l <= s.d; ++l) os << "x_" << l << ",";
  os << "u,itinerary,roots\n";
  std::optional<Rational> uu = u ? u : s.u;
  for (const auto& g : labels) {
    for (const auto& v : g.x) os << to_string(v) << ",";
    os << (s.has_u() && uu ? to_string(*uu) : "") << "," << g.iti.to_string() << ",";
    bool first = true;
    for (const auto& e : g.iti.events) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12g", e.root.approx());
      os << (first ? "" : ";") << buf;
      first = false;
    }
    os << "\n";
  }
}

std::vector<std::string> stratum_loci(const SectionFamily& s) {
  std::vector<std::string> out;
  auto d = discriminants(s);
  for (int j = 0; j < s.n; ++j) out.push_back("d_" + std::to_string(j + 1) + " = " + d[j].to_string(s.names));
  for (const auto& [ij, r] : resultants(s))
    out.push_back("r_" + std::to_string(ij.first) + "_" + std::to_string(ij.second) + " = " + r.to_string(s.names));
  return out;
}

SectionCurve::SectionCurve(const SectionFamily& s, const std::vector<Rational>& x, const std::optional<Rational>& u)
    : N_(s.n + 1) {
  for (int i = 0; i < N_; ++i)
    for (int j = 0; j < N_; ++j) {
      UPoly p = specialize(s.M(i, j), s, x, u);
      std::vector<double> c;
      for (const auto& q : p.coefficients()) c.push_back(q.get_d());
      coeffs_.push_back(std::move(c));
    }
}

Eigen::MatrixXd SectionCurve::at(double t) const {
  Eigen::MatrixXd M(N_, N_);
  for (int i = 0; i < N_; ++i)
    for (int j = 0; j < N_; ++j) {
      const auto& c = coeffs_[i * N_ + j];
      double v = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
      M(i, j) = v;
    }
  return M;
}

}  // namespace strata
