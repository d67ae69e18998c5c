#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "strata/curvelab.hpp"
#include "strata/triang.hpp"

namespace strata {

namespace {

constexpr double kPi = std::numbers::pi;

struct Sample {
  SpinF Z;
  double margin = 0;  // min over steps of the angle to either end of the allowed interval
};

// Point of Ac_ρ(Zx) on the positive part of the cell of acute ρ: walk along a reduced word of
// ρ, turning each factor a fraction of the way to the exit angle.
Sample sample_accessible(const SpinF& Zx, const SpinF& hat_eta, const ReducedWord& rw, int n,
                         const std::function<double()>& frac) {
  const SpinF Y0 = spin_inverse(Zx) * hat_eta;
  Permutation rho = bruhat_cell(project(Y0));
  Sample s{SpinF::scalar(n, 1.0), kPi};
  for (int i : rw) {
    const Permutation next = compose(rho, Permutation::generator(n, i));
    double room = kPi;
    if (inversions(next) == inversions(rho) + 1) rho = next;
    else room = kPi - theta_exit(Y0 * s.Z, i, rho);
    const double theta = frac() * room;
    s.margin = std::min({s.margin, theta, room - theta});
    s.Z = s.Z * alpha(n, i, theta);
  }
  return s;
}

struct SegmentEnds {
  Eigen::MatrixXd La, P;
  SpinF A, B;
};

std::optional<SegmentEnds> check_segment(const SpinF& ys, const SpinF& ye, const SpinF& Ae_inv, int n) {
  SegmentEnds s;
  s.A = Ae_inv * ys;
  s.B = Ae_inv * ye;
  LU a, b;
  try {
    a = lu_of_rotation(project(s.A));
    b = lu_of_rotation(project(s.B));
  } catch (const NotLUDecomposable&) {
    return std::nullopt;
  }
  for (int k = 0; k <= n; ++k)
    if (!(a.U(k, k) > 0) || !(b.U(k, k) > 0)) return std::nullopt;
  s.La = a.L;
  s.P = a.L.triangularView<Eigen::UnitLower>().solve(b.L);
  if (!is_ll(Eigen::MatrixXd::Identity(n + 1, n + 1), s.P, 1e-12)) return std::nullopt;
  return s;
}

// Convex arc from C·A to C·B through C·Q(L_A E(s)), E a path in Lo¹ from I to P.
struct Connector {
  SpinF C;
  Eigen::MatrixXd La;
  std::shared_ptr<Lo1Path> path;
  std::vector<SpinF> lifts;

  Eigen::MatrixXd Lmat(double s) const { return La * path->at(s); }
  SpinF at(double s) const {
    const int K = static_cast<int>(lifts.size()) - 1;
    const int k = std::clamp(static_cast<int>(std::lround(s * K)), 0, K);
    return C * lift_near(orthogonal_part(Lmat(s)), lifts[k]);
  }
  std::vector<double> kappa(double s, double len) const {
    const auto beta = path->beta(s);
    const QR qr = qr_positive(Lmat(s));
    std::vector<double> k(beta.size());
    for (size_t j = 0; j < beta.size(); ++j) k[j] = beta[j] * qr.R(j + 1, j + 1) / qr.R(j, j) / len;
    return k;
  }
};

struct Piece {
  double a, b;
  int kind;  // 0 arc, 1 connector
  SpinF z;   // arc center point
  double center = 0;
  int conn = -1;
  double speed = 0;
};

}  // namespace

SynthesizedCurve curve_with_itinerary(const Word& w, int n, std::vector<double> times, const SynthesisOptions& opt) {
  const int ell = static_cast<int>(w.size());
  for (const auto& s : w) {
    if (s.rank() != n) throw RankMismatch();
    if (s.is_identity()) throw IdentityLetter();
  }
  if (times.empty())
    for (int j = 1; j <= ell; ++j) times.push_back(static_cast<double>(j) / (ell + 1));
  if (static_cast<int>(times.size()) != ell) throw std::invalid_argument("one time per letter is required");
  for (int j = 0; j < ell; ++j)
    if (!(times[j] > 0 && times[j] < 1) || (j > 0 && !(times[j] > times[j - 1])))
      throw std::invalid_argument("times must increase strictly inside (0, 1)");

  const Permutation eta = Permutation::longest(n);
  const SpinWordTable table = word_table(w, n);
  const SpinF Ae = to_float(acute(eta));
  const SpinF Ae_inv = spin_inverse(Ae);
  const SpinF hat_eta = to_float(hat(eta));
  std::vector<SpinF> q(ell + 1);
  for (int j = 0; j <= ell; ++j) q[j] = to_float(table.at_half(j)) * Ae_inv;
  const SpinF zq = to_float(q_of_word(w, n));
  const ReducedWord eta_word = reduced_word(eta);

  std::vector<double> tau{0.0};
  for (double t : times) tau.push_back(t);
  tau.push_back(1.0);
  double gap = 1;
  for (int j = 0; j <= ell; ++j) gap = std::min(gap, tau[j + 1] - tau[j]);
  const double hs = 0.25 * gap;

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.15, 0.85);
  std::string last_error = "no attempt made";

  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    std::vector<SpinF> z(ell + 2);
    z[0] = SpinF::scalar(n, 1.0);
    z[ell + 1] = zq;
    try {
      // Of several walks per event keep the one farthest from the cell boundaries, since the
      // arc half widths must be small compared to that distance.
      for (int j = ell; j >= 1; --j) {
        const SpinF Zx = spin_inverse(q[j]) * z[j + 1];
        const ReducedWord rw = reduced_word(compose(eta, w[j - 1]));
        Sample best;
        best.margin = -1;
        for (int c = 0; c < opt.candidates; ++c) {
          const bool centered = attempt == 0 && c == 0;
          Sample s = sample_accessible(Zx, hat_eta, rw, n, [&]() { return centered ? 0.5 : unif(rng); });
          if (s.margin > best.margin) best = s;
        }
        z[j] = q[j] * best.Z;
      }
    } catch (const std::exception& e) {
      last_error = e.what();
      continue;
    }

    // eps[j] is the half width, in 𝔥 units, of the arc through z_j; a failing segment shrinks
    // whichever of its two ends lets it pass.
    std::vector<double> eps(ell + 2, opt.eps0);
    auto segment = [&](int j, double e0, double e1) {
      return check_segment(spin_inverse(q[j]) * z[j] * exp_h(n, e0), spin_inverse(q[j]) * z[j + 1] * exp_h(n, -e1),
                           Ae_inv, n);
    };
    std::vector<SegmentEnds> segs(ell + 1);
    bool found = false;
    while (!found) {
      found = true;
      bool too_small = false;
      for (int j = 0; j <= ell; ++j) {
        if (auto sg = segment(j, eps[j], eps[j + 1])) {
          segs[j] = *sg;
          continue;
        }
        found = false;
        if (segment(j, eps[j] / 2, eps[j + 1])) eps[j] /= 2;
        else if (segment(j, eps[j], eps[j + 1] / 2)) eps[j + 1] /= 2;
        else {
          eps[j] /= 2;
          eps[j + 1] /= 2;
        }
        too_small = too_small || eps[j] < opt.eps_min || eps[j + 1] < opt.eps_min;
      }
      if (too_small) break;
    }
    if (!found) {
      last_error = "no ε passes the accessibility test";
      continue;
    }

    auto conns = std::make_shared<std::vector<Connector>>();
    bool built = true;
    for (int j = 0; j <= ell && built; ++j) {
      Connector c;
      c.C = q[j] * Ae;
      c.La = segs[j].La;
      try {
        c.path = std::make_shared<Lo1Path>(solve_lo1_path(segs[j].P, eta_word));
      } catch (const std::exception& e) {
        last_error = e.what();
        built = false;
        break;
      }
      const int K = 512;
      SpinF prev = segs[j].A;
      for (int k = 0; k <= K; ++k) {
        prev = lift_near(orthogonal_part(c.Lmat(static_cast<double>(k) / K)), prev);
        c.lifts.push_back(prev);
      }
      if (max_abs_diff(c.lifts.back(), segs[j].B) > 1e-8) {
        last_error = "connector lift does not reach the next event";
        built = false;
      }
      conns->push_back(std::move(c));
    }
    if (!built) continue;

    auto pieces = std::make_shared<std::vector<Piece>>();
    pieces->push_back({0.0, hs, 0, z[0], 0.0, -1, eps[0] / hs});
    for (int j = 0; j <= ell; ++j) {
      const double a = tau[j] + hs, b = tau[j + 1] - hs;
      pieces->push_back({a, b, 1, SpinF(), 0.0, j});
      if (j < ell) pieces->push_back({tau[j + 1] - hs, tau[j + 1] + hs, 0, z[j + 1], tau[j + 1], -1, eps[j + 1] / hs});
    }
    pieces->push_back({1.0 - hs, 1.0, 0, zq, 1.0, -1, eps[ell + 1] / hs});
    std::vector<double> breaks;
    for (size_t k = 0; k + 1 < pieces->size(); ++k) breaks.push_back((*pieces)[k].b);

    auto find = [pieces](double t) -> const Piece& {
      for (const auto& p : *pieces)
        if (t <= p.b) return p;
      return pieces->back();
    };
    auto eval = [=](double t) {
      t = std::clamp(t, 0.0, 1.0);
      const Piece& p = find(t);
      if (p.kind == 0) return p.z * exp_h(n, p.speed * (t - p.center));
      return (*conns)[p.conn].at((t - p.a) / (p.b - p.a));
    };
    auto hk = h_coefficients(n);
    CurvatureSpec spec;
    spec.n = n;
    spec.breakpoints = breaks;
    spec.kappa = [=](double t) {
      const Piece& p = find(std::clamp(t, 0.0, 1.0));
      if (p.kind == 0) {
        auto k = hk;
        for (auto& x : k) x *= p.speed;
        return k;
      }
      return (*conns)[p.conn].kappa((t - p.a) / (p.b - p.a), p.b - p.a);
    };

    SynthesizedCurve out;
    out.curve = FrameCurve(n, 0.0, 1.0, eval, breaks);
    out.curvature = spec;
    out.path.assign(z.begin() + 1, z.begin() + 1 + ell);
    out.times = times;
    out.epsilon = *std::min_element(eps.begin(), eps.end());

    try {
      const auto events = itinerary(out.curve);
      bool ok = event_word(events) == w;
      for (int j = 0; ok && j < ell; ++j) ok = std::abs(events[j].time - times[j]) < 1e-6;
      if (!ok) {
        last_error = "re-extracted itinerary " + format_word(event_word(events)) + " differs from " + format_word(w);
        continue;
      }
    } catch (const UnresolvedCluster& e) {
      last_error = e.what();
      continue;
    }
    return out;
  }
  throw PathNotAccessible("no accessible path found for " + format_word(w) + ": " + last_error);
}

}  // namespace strata
