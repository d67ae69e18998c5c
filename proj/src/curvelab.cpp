#include "strata/curvelab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <unsupported/Eigen/Polynomials>

#include "strata/triang.hpp"

namespace strata {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNoise = 1e-13;

double poly_eval(const std::vector<double>& c, double t) {
  double v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

std::vector<double> json_poly(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a number or an array of coefficients");
  std::vector<double> c;
  for (const auto& x : j) c.push_back(x.get<double>());
  return c;
}

SpinF rk4_step(const CurvatureSpec& spec, const SpinF& z, double t, double h) {
  auto f = [&](double s, const SpinF& y) {
    auto k = spec.kappa(s);
    for (double v : k)
      if (!(v > 0)) throw NonPositiveCurvature("curvature is not positive at t = " + std::to_string(s));
    return y * tridiagonal_bivector(spec.n, k);
  };
  // end stages are sampled just inside the step so that κ is taken from the piece being crossed
  SpinF k1 = f(t + h * 1e-12, z);
  SpinF k2 = f(t + h / 2, z + k1 * (h / 2));
  SpinF k3 = f(t + h / 2, z + k2 * (h / 2));
  SpinF k4 = f(t + h * (1 - 1e-12), z + k3 * h);
  return z + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6);
}

double max_kappa(const CurvatureSpec& spec, double t) {
  auto k = spec.kappa(t);
  return *std::max_element(k.begin(), k.end());
}

struct Nodes {
  std::vector<double> t;
  std::vector<SpinF> z;
};

double dist_to_breaks(double t, const std::vector<double>& breaks) {
  double d = std::numeric_limits<double>::infinity();
  for (double b : breaks) d = std::min(d, std::abs(t - b));
  return d;
}

struct ZeroCandidate {
  double t;
  int j;
  double delta;
};

/// Least-squares polynomial fit of degree D to f on t0 + W·x, x ∈ [−1, 1].
Eigen::VectorXd fit_window(const std::function<double(double)>& f, double t0, double W, int D) {
  const int K = 4 * (D + 1);
  Eigen::MatrixXd V(K, D + 1);
  Eigen::VectorXd y(K);
  for (int i = 0; i < K; ++i) {
    const double x = std::cos(std::numbers::pi * (i + 0.5) / K);
    y(i) = f(t0 + W * x);
    double p = 1;
    for (int d = 0; d <= D; ++d, p *= x) V(i, d) = p;
  }
  return V.colPivHouseholderQr().solve(y);
}

int roots_near_origin(Eigen::VectorXd a, double radius) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale < 1e-14) return -1;
  int deg = static_cast<int>(a.size()) - 1;
  while (deg > 0 && std::abs(a(deg)) < 1e-12 * scale) --deg;
  if (deg == 0) return 0;
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(Eigen::VectorXd(a.head(deg + 1)));
  int count = 0;
  for (const auto& r : solver.roots())
    if (std::abs(r) < radius) ++count;
  return count;
}

}  // namespace

double kappa_from_xi(double xi) { return (xi + std::sqrt(xi * xi + 4)) / 2; }

CurvatureSpec CurvatureSpec::constant(int n, std::vector<double> k, double lo, double hi) {
  if (static_cast<int>(k.size()) != n) throw std::invalid_argument("one curvature per generator is required");
  CurvatureSpec s;
  s.n = n;
  s.lo = lo;
  s.hi = hi;
  s.kappa = [k](double) { return k; };
  return s;
}

CurvatureSpec CurvatureSpec::h_multiple(int n, double speed, double lo, double hi) {
  auto c = h_coefficients(n);
  for (auto& x : c) x *= speed;
  return constant(n, c, lo, hi);
}

CurvatureSpec CurvatureSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n")) throw std::invalid_argument("curvature spec needs an integer n");
  const int n = j.at("n").get<int>();
  if (n < 1 || n > 7) throw std::invalid_argument("n must be in 1..7");
  double lo = 0, hi = 1;
  if (j.contains("domain")) {
    lo = j.at("domain").at(0).get<double>();
    hi = j.at("domain").at(1).get<double>();
  }
  if (!(hi >= lo)) throw std::invalid_argument("empty domain");
  if (j.contains("h")) return h_multiple(n, j.at("h").get<double>(), lo, hi);
  struct Piece {
    double end;
    bool xi;
    std::vector<std::vector<double>> p;
  };
  std::vector<Piece> pieces;
  if (!j.contains("pieces")) throw std::invalid_argument("curvature spec needs \"h\" or \"pieces\"");
  for (const auto& pj : j.at("pieces")) {
    Piece p;
    p.end = pj.value("end", hi);
    p.xi = pj.contains("xi");
    const auto& arr = p.xi ? pj.at("xi") : pj.at("kappa");
    if (!arr.is_array() || static_cast<int>(arr.size()) != n) throw std::invalid_argument("a piece needs n polynomials");
    for (const auto& q : arr) p.p.push_back(json_poly(q));
    pieces.push_back(std::move(p));
  }
  if (pieces.empty()) throw std::invalid_argument("no pieces");
  CurvatureSpec s;
  s.n = n;
  s.lo = lo;
  s.hi = hi;
  for (size_t k = 0; k + 1 < pieces.size(); ++k) {
    if (!(pieces[k].end > lo && pieces[k].end < hi)) throw std::invalid_argument("piece ends must lie inside the domain");
    if (k > 0 && !(pieces[k].end > pieces[k - 1].end)) throw std::invalid_argument("piece ends must increase");
    s.breakpoints.push_back(pieces[k].end);
  }
  s.kappa = [pieces, n](double t) {
    size_t k = 0;
    while (k + 1 < pieces.size() && t > pieces[k].end) ++k;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
      const double v = poly_eval(pieces[k].p[i], t);
      out[i] = pieces[k].xi ? kappa_from_xi(v) : v;
    }
    return out;
  };
  return s;
}

FrameCurve::FrameCurve(int n, double lo, double hi, Eval eval, std::vector<double> breakpoints)
    : n_(n), lo_(lo), hi_(hi), eval_(std::move(eval)), breakpoints_(std::move(breakpoints)) {
  if (!(hi >= lo)) throw std::invalid_argument("empty domain");
}

FrameCurve FrameCurve::left_translate(const SpinF& g) const {
  auto e = eval_;
  return FrameCurve(n_, lo_, hi_, [g, e](double t) { return g * e(t); }, breakpoints_);
}

FrameCurve FrameCurve::restricted(double lo, double hi) const {
  if (lo < lo_ || hi > hi_ || !(hi >= lo)) throw std::invalid_argument("restriction outside the domain");
  std::vector<double> b;
  for (double x : breakpoints_)
    if (x > lo && x < hi) b.push_back(x);
  return FrameCurve(n_, lo, hi, eval_, b);
}

FrameCurve integrate(const CurvatureSpec& spec, const SpinF& start, const IntegrateOptions& opt) {
  if (start.rank() != spec.n) throw std::invalid_argument("start point has the wrong rank");
  auto nodes = std::make_shared<Nodes>();
  const double dir = opt.backward ? -1.0 : 1.0;
  const double t0 = opt.backward ? spec.hi : spec.lo, t1 = opt.backward ? spec.lo : spec.hi;
  std::vector<double> stops;
  for (double b : spec.breakpoints)
    if (b > spec.lo && b < spec.hi) stops.push_back(b);
  stops.push_back(t1);
  std::sort(stops.begin(), stops.end(), [dir](double a, double b) { return dir * a < dir * b; });
  double t = t0;
  SpinF z = start;
  nodes->t.push_back(t);
  nodes->z.push_back(z);
  double h = opt.max_step;
  for (double stop : stops) {
    while (dir * (stop - t) > 1e-15) {
      h = std::min({h, opt.max_step, dir * (stop - t), 0.5 / std::max(1e-12, max_kappa(spec, t))});
      const SpinF one = rk4_step(spec, z, t, dir * h);
      const SpinF half = rk4_step(spec, z, t, dir * h / 2);
      const SpinF two = rk4_step(spec, half, t + dir * h / 2, dir * h / 2);
      const double err = max_abs_diff(one, two) / 15;
      if (err > opt.tol && h > 1e-12) {
        h *= std::max(0.2, 0.9 * std::pow(opt.tol / err, 0.2));
        continue;
      }
      t = (dir * (stop - t) - h < 1e-15) ? stop : t + dir * h;
      z = renormalize(two + (two - one) * (1.0 / 15));
      nodes->t.push_back(t);
      nodes->z.push_back(z);
      h *= std::min(2.0, 0.9 * std::pow(opt.tol / std::max(err, 1e-300), 0.2));
    }
  }
  if (opt.backward) {
    std::reverse(nodes->t.begin(), nodes->t.end());
    std::reverse(nodes->z.begin(), nodes->z.end());
  }
  CurvatureSpec sp = spec;
  auto eval = [nodes, sp](double s) {
    const auto& T = nodes->t;
    if (T.size() == 1 || s <= T.front()) return nodes->z.front();
    if (s >= T.back()) return nodes->z.back();
    size_t k = std::upper_bound(T.begin(), T.end(), s) - T.begin() - 1;
    // step from the nearer node; each node gap was an accepted step
    if (s - T[k] <= T[k + 1] - s) {
      const double h = s - T[k];
      if (h == 0) return nodes->z[k];
      SpinF m = rk4_step(sp, nodes->z[k], T[k], h / 2);
      return renormalize(rk4_step(sp, m, T[k] + h / 2, h / 2));
    }
    const double h = s - T[k + 1];
    SpinF m = rk4_step(sp, nodes->z[k + 1], T[k + 1], h / 2);
    return renormalize(rk4_step(sp, m, T[k + 1] + h / 2, h / 2));
  };
  return FrameCurve(spec.n, spec.lo, spec.hi, eval, spec.breakpoints);
}

FrameCurve frenet_frame(int n, double lo, double hi, std::function<std::vector<Eigen::VectorXd>(double)> jet,
                        int samples) {
  const int N = n + 1;
  auto frame = [jet, N](double t) {
    auto v = jet(t);
    if (static_cast<int>(v.size()) != N) throw std::invalid_argument("jet must hold n+1 vectors");
    Eigen::MatrixXd J(N, N);
    for (int k = 0; k < N; ++k) J.col(k) = v[k];
    if (!(J.determinant() > 0)) throw DegenerateJet("det(γ, γ', …, γ^(n)) ≤ 0 at t = " + std::to_string(t));
    return orthogonal_part(J);
  };
  auto grid = std::make_shared<std::vector<SpinF>>();
  SpinF prev = lift_rotation(frame(lo));
  for (int k = 0; k <= samples; ++k) {
    prev = lift_near(frame(lo + (hi - lo) * k / samples), prev);
    grid->push_back(prev);
  }
  auto eval = [=](double t) {
    const double x = hi > lo ? (t - lo) / (hi - lo) : 0.0;
    const int k = std::clamp(static_cast<int>(std::lround(x * samples)), 0, samples);
    return lift_near(frame(t), (*grid)[k]);
  };
  return FrameCurve(n, lo, hi, eval);
}

Eigen::MatrixXd log_derivative(const FrameCurve& c, double t, double h) {
  const double a = std::max(c.lo(), t - h), b = std::min(c.hi(), t + h);
  const Eigen::MatrixXd D = (c.matrix(b) - c.matrix(a)) / (b - a);
  return c.matrix(t).transpose() * D;
}

std::vector<double> curvatures(const FrameCurve& c, double t, double h) {
  const Eigen::MatrixXd X = log_derivative(c, t, h);
  std::vector<double> k;
  for (int j = 1; j <= c.n(); ++j) k.push_back(X(j, j - 1));
  return k;
}

std::vector<double> southwest_minors(const Eigen::MatrixXd& Q) {
  const int N = static_cast<int>(Q.rows());
  std::vector<double> m;
  for (int j = 1; j < N; ++j) m.push_back(Q.bottomLeftCorner(j, j).determinant());
  return m;
}

namespace {

std::vector<ZeroCandidate> zero_candidates(const FrameCurve& c, const ItineraryOptions& opt) {
  const int n = c.n();
  const double lo = c.lo(), hi = c.hi(), span = hi - lo;
  std::vector<ZeroCandidate> out;
  if (span <= 0) return out;
  std::vector<double> T;
  for (int k = 0; k <= opt.grid; ++k) T.push_back(lo + span * k / opt.grid);
  for (double b : c.breakpoints())
    if (b > lo && b < hi) T.push_back(b);
  std::sort(T.begin(), T.end());
  T.erase(std::unique(T.begin(), T.end()), T.end());
  std::vector<std::vector<double>> V;
  for (double t : T) V.push_back(southwest_minors(c.matrix(t)));
  const int K = static_cast<int>(T.size());

  for (int j = 0; j < n; ++j) {
    auto f = [&](double t) { return southwest_minors(c.matrix(t))[j]; };
    std::vector<double> found;
    auto bisect = [&](double a, double b, double fa) {
      for (int it = 0; it < 200 && b - a > 4e-16 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0) return m;
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    };
    for (int k = 0; k + 1 < K; ++k) {
      const double a = V[k][j], b = V[k + 1][j];
      if (a == 0 && k > 0) found.push_back(T[k]);
      if (a * b < 0) found.push_back(bisect(T[k], T[k + 1], a));
    }
    for (int k = 1; k + 1 < K; ++k) {
      const double a = std::abs(V[k - 1][j]), v = std::abs(V[k][j]), b = std::abs(V[k + 1][j]);
      if (!(v <= a && v <= b) || V[k - 1][j] * V[k][j] <= 0 || V[k][j] * V[k + 1][j] <= 0) continue;
      // look for a pair of close sign changes first
      const int sub = 64;
      bool any = false;
      double tp = T[k - 1], fp = V[k - 1][j];
      for (int s = 1; s <= sub; ++s) {
        const double tt = T[k - 1] + (T[k + 1] - T[k - 1]) * s / sub;
        const double ft = f(tt);
        if (fp * ft < 0) {
          found.push_back(bisect(tp, tt, fp));
          any = true;
        }
        tp = tt;
        fp = ft;
      }
      if (any) continue;
      double x0 = T[k - 1], x1 = T[k + 1];
      const double g = (std::sqrt(5.0) - 1) / 2;
      double c1 = x1 - g * (x1 - x0), c2 = x0 + g * (x1 - x0);
      double f1 = std::abs(f(c1)), f2 = std::abs(f(c2));
      for (int it = 0; it < 120 && x1 - x0 > 1e-15 * std::max(1.0, std::abs(x0)); ++it) {
        if (f1 < f2) {
          x1 = c2;
          c2 = c1;
          f2 = f1;
          c1 = x1 - g * (x1 - x0);
          f1 = std::abs(f(c1));
        } else {
          x0 = c1;
          c1 = c2;
          f1 = f2;
          c2 = x0 + g * (x1 - x0);
          f2 = std::abs(f(c2));
        }
      }
      const double tm = f1 < f2 ? c1 : c2;
      if (std::min(f1, f2) < opt.zero_tol) found.push_back(tm);
    }
    std::sort(found.begin(), found.end());
    double last = -std::numeric_limits<double>::infinity();
    for (double t : found) {
      if (t - last < 1e-12 * span) continue;
      last = t;
      double d = 1e-13 * span;
      while (d < 1e-2 * span) {
        const double a = std::max(lo, t - d), b = std::min(hi, t + d);
        if (std::max(std::abs(f(a)), std::abs(f(b))) > kNoise) break;
        d *= 2;
      }
      const double edge = std::max(2 * d, std::max(opt.cluster_tol, 1e-9 * span));
      if (t - lo <= edge || hi - t <= edge) continue;
      out.push_back({t, j, d});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  return out;
}

std::vector<std::vector<ZeroCandidate>> clusters(const FrameCurve& c, const ItineraryOptions& opt) {
  std::vector<std::vector<ZeroCandidate>> cl;
  for (const auto& z : zero_candidates(c, opt)) {
    if (!cl.empty()) {
      const auto& p = cl.back().back();
      double reach = -std::numeric_limits<double>::infinity();
      for (const auto& m : cl.back()) reach = std::max(reach, m.t + m.delta);
      if (z.t - z.delta <= reach + opt.cluster_tol || z.t - p.t <= opt.cluster_tol) {
        cl.back().push_back(z);
        continue;
      }
    }
    cl.push_back({z});
  }
  return cl;
}

double cluster_center(const std::vector<ZeroCandidate>& cl) {
  return std::min_element(cl.begin(), cl.end(), [](const auto& a, const auto& b) { return a.delta < b.delta; })->t;
}

}  // namespace

std::vector<double> singular_set(const FrameCurve& c, const ItineraryOptions& opt) {
  std::vector<double> s;
  for (const auto& cl : clusters(c, opt)) s.push_back(cluster_center(cl));
  return s;
}

std::vector<SingularEvent> itinerary(const FrameCurve& c, const ItineraryOptions& opt) {
  const int n = c.n();
  const int cap = r_bullet(n);
  const int D = cap + 3;
  auto cls = clusters(c, opt);
  std::vector<double> centers;
  for (const auto& cl : cls) centers.push_back(cluster_center(cl));
  std::vector<SingularEvent> events;
  for (size_t k = 0; k < cls.size(); ++k) {
    const double tc = centers[k];
    double dmax = 0;
    std::vector<double> zeros(n, kNaN);
    for (const auto& z : cls[k]) {
      dmax = std::max(dmax, z.delta + std::abs(z.t - tc));
      if (std::isnan(zeros[z.j]) || std::abs(z.t - tc) < std::abs(zeros[z.j] - tc)) zeros[z.j] = z.t;
    }
    double W = std::min({0.05 * (c.hi() - c.lo()), 0.5 * (tc - c.lo()), 0.5 * (c.hi() - tc)});
    if (k > 0) W = std::min(W, 0.25 * (tc - centers[k - 1]));
    if (k + 1 < cls.size()) W = std::min(W, 0.25 * (centers[k + 1] - tc));
    const double db = dist_to_breaks(tc, c.breakpoints());
    if (db > 20 * dmax) W = std::min(W, 0.9 * db);
    auto count = [&](double w) {
      std::vector<int> m(n);
      for (int j = 0; j < n; ++j) {
        auto f = [&](double t) { return southwest_minors(c.matrix(t))[j]; };
        m[j] = roots_near_origin(fit_window(f, tc, w, D), 0.25);
        if (m[j] < 0) return std::optional<std::vector<int>>();
        if ((m[j] > 0) != !std::isnan(zeros[j])) return std::optional<std::vector<int>>();
      }
      return std::optional<std::vector<int>>(m);
    };
    std::optional<std::vector<int>> prev, mult;
    for (double w = W; w >= 10 * dmax && w > 1e-9; w /= 2) {
      auto cur = count(w);
      if (cur && prev && *cur == *prev) {
        mult = cur;
        W = 2 * w;
        break;
      }
      prev = cur;
    }
    char where[64];
    std::snprintf(where, sizeof where, "%.9g", tc);
    if (!mult) throw UnresolvedCluster(std::string("multiplicities near t = ") + where + " are not stable");
    for (int v : *mult)
      if (v > cap) throw UnresolvedCluster(std::string("multiplicity above r_bullet near t = ") + where);
    SingularEvent e;
    e.time = tc;
    e.mult = *mult;
    e.zeros = zeros;
    e.window = W;
    try {
      e.letter = permutation_from_mult(e.mult, n);
    } catch (const NotARealizableMultVector&) {
      throw UnresolvedCluster(std::string("multiplicity pattern near t = ") + where + " is not a permutation");
    }
    events.push_back(std::move(e));
  }
  return events;
}

Word event_word(const std::vector<SingularEvent>& events) {
  Word w;
  for (const auto& e : events) w.push_back(e.letter);
  return w;
}

double hausdorff(const std::vector<double>& X, const std::vector<double>& Y) {
  if (X.empty() && Y.empty()) return 0;
  if (X.empty() || Y.empty()) return 1;
  auto one_sided = [](const std::vector<double>& A, const std::vector<double>& B) {
    double d = 0;
    for (double a : A) {
      double m = std::numeric_limits<double>::infinity();
      for (double b : B) m = std::min(m, std::abs(a - b));
      d = std::max(d, m);
    }
    return d;
  };
  return std::max(one_sided(X, Y), one_sided(Y, X));
}

bool is_convex_arc(const FrameCurve& c, int samples) {
  const int n = c.n();
  const Permutation eta = Permutation::longest(n);
  const SpinF top = to_float(acute(eta));
  const Eigen::MatrixXd Ptop = project(top);
  std::vector<SpinF> z;
  for (int k = 0; k <= samples; ++k) z.push_back(c.spin(c.lo() + (c.hi() - c.lo()) * k / samples));
  for (int i = 0; i <= samples; ++i)
    for (int k = i + 1; k <= samples; ++k) {
      const SpinF D = z[i].reverse() * z[k];
      BruhatNormalForm nf;
      try {
        nf = bruhat_normal_form(project(D));
      } catch (const std::domain_error&) {
        return false;
      }
      if (nf.sigma != eta || (nf.P - Ptop).cwiseAbs().maxCoeff() > 1e-6) return false;
      if (i == 0 && max_abs_diff(to_float(spin_cell(D).b), top) > 1e-6) return false;
    }
  return singular_set(c.left_translate(z[0].reverse())).empty();
}

FrameCurve model_letter_curve(const Permutation& sigma, double theta0) {
  if (sigma.is_identity()) throw IdentityLetter();
  const int n = sigma.rank();
  const SpinF z1 = to_float(acute(Permutation::longest(n)) * acute(sigma));
  return FrameCurve(n, -theta0, theta0, [z1, n](double t) { return z1 * exp_h(n, t); });
}

FrameCurve h_curve(int n, double speed, double lo, double hi) {
  return FrameCurve(n, lo, hi, [n, speed](double t) { return exp_h(n, speed * t); });
}

FrameCurve section_frame_curve(const SectionFamily& s, const std::vector<Rational>& x,
                               const std::optional<Rational>& u, double lo, double hi) {
  auto sc = std::make_shared<SectionCurve>(s, x, u);
  const int samples = 1024;
  auto grid = std::make_shared<std::vector<SpinF>>();
  SpinF prev = lift_rotation(orthogonal_part(sc->at(lo)));
  for (int k = 0; k <= samples; ++k) {
    prev = lift_near(orthogonal_part(sc->at(lo + (hi - lo) * k / samples)), prev);
    grid->push_back(prev);
  }
  auto eval = [=](double t) {
    const int k = std::clamp(static_cast<int>(std::lround((t - lo) / (hi - lo) * samples)), 0, samples);
    return lift_near(orthogonal_part(sc->at(t)), (*grid)[k]);
  };
  return FrameCurve(s.n, lo, hi, eval);
}

namespace {

struct BetaJet {
  std::vector<double> beta, dbeta;
};

BetaJet beta_jet(const FrameCurve& c, const Eigen::MatrixXd& PbT, double t0, double W) {
  const int N = c.n() + 1;
  const int D = 10;
  std::vector<Eigen::VectorXd> coef(N * N);
  auto chart = [&](double t) {
    LU lu = lu_of_rotation(PbT * c.matrix(t));
    for (int k = 0; k < N; ++k)
      if (!(lu.U(k, k) > 0)) throw NotAnAcbEvent("curve leaves the triangular chart of the event");
    return lu.L;
  };
  Eigen::MatrixXd L0 = chart(t0), L1 = Eigen::MatrixXd::Zero(N, N), L2 = L1;
  for (int i = 1; i < N; ++i)
    for (int j = 0; j < i; ++j) {
      auto a = fit_window([&](double t) { return chart(t)(i, j); }, t0, W, D);
      L1(i, j) = a(1) / W;
      L2(i, j) = 2 * a(2) / (W * W);
    }
  const Eigen::MatrixXd Li = L0.inverse();
  const Eigen::MatrixXd X = Li * L1;
  const Eigen::MatrixXd dX = -Li * L1 * Li * L1 + Li * L2;
  BetaJet b;
  for (int j = 1; j < N; ++j) {
    b.beta.push_back(X(j, j - 1));
    b.dbeta.push_back(dX(j, j - 1));
  }
  return b;
}

double u_from_jet(const BetaJet& b, double& b1, double& b3) {
  // normalize β2 to 1: β̂_j = β_j/β_2, dβ̂_j/ds = (β_j' β_2 − β_j β_2')/β_2³
  const double B2 = b.beta[1], dB2 = b.dbeta[1];
  auto hat = [&](int j) { return b.beta[j] / B2; };
  auto dhat = [&](int j) { return (b.dbeta[j] * B2 - b.beta[j] * dB2) / (B2 * B2 * B2); };
  b1 = hat(0);
  b3 = hat(2);
  return (b3 * dhat(0) - b1 * dhat(2)) / (2 * b1 * b3);
}

}  // namespace

UInvariant u_invariant(const FrameCurve& c, double t_event) {
  if (c.n() != 3) throw NotAnAcbEvent("the u-invariant is defined for n = 3");
  const Permutation eta = Permutation::longest(3), acb({3, 1, 4, 2});
  const SignedCell sc = spin_cell(c.spin(t_event), 1e-7);
  if (sc.sigma != eta * acb) throw NotAnAcbEvent("the point is not in the cell of the letter [acb]");
  const Eigen::MatrixXd PbT = project(to_float(sc.b)).transpose();
  double W = std::min({0.02 * (c.hi() - c.lo()), 0.5 * (t_event - c.lo()), 0.5 * (c.hi() - t_event)});
  const double db = dist_to_breaks(t_event, c.breakpoints());
  W = std::min(W, 0.9 * db);
  UInvariant r;
  r.time = t_event;
  double b1a, b3a;
  const double ua = u_from_jet(beta_jet(c, PbT, t_event, W), b1a, b3a);
  r.u = u_from_jet(beta_jet(c, PbT, t_event, W / 2), r.b1, r.b3);
  r.residual = std::abs(r.u - ua);
  return r;
}

UInvariant u_invariant(const FrameCurve& c) {
  const Permutation acb({3, 1, 4, 2});
  std::optional<double> t;
  for (const auto& e : itinerary(c)) {
    if (e.letter != acb) continue;
    if (t) throw NotAnAcbEvent("more than one [acb] event");
    t = e.time;
  }
  if (!t) throw NotAnAcbEvent("no [acb] event on the curve");
  return u_invariant(c, *t);
}

nlohmann::json curve_to_json(const FrameCurve& c, const std::vector<SingularEvent>& events, int samples) {
  nlohmann::json j;
  j["n"] = c.n();
  j["domain"] = {c.lo(), c.hi()};
  nlohmann::json grid = nlohmann::json::array(), mats = nlohmann::json::array();
  for (int k = 0; k < samples; ++k) {
    const double t = samples == 1 ? c.lo() : c.lo() + (c.hi() - c.lo()) * k / (samples - 1);
    grid.push_back(t);
    const Eigen::MatrixXd Q = c.matrix(t);
    nlohmann::json m = nlohmann::json::array();
    for (int i = 0; i < Q.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int l = 0; l < Q.cols(); ++l) row.push_back(Q(i, l));
      m.push_back(row);
    }
    mats.push_back(m);
  }
  j["grid"] = grid;
  j["matrices"] = mats;
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : events) {
    nlohmann::json z = nlohmann::json::array();
    for (double v : e.zeros) z.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
    ev.push_back({{"time", e.time},
                  {"letter", format_word({e.letter})},
                  {"permutation", e.letter.to_string()},
                  {"mult", e.mult},
                  {"zeros", z},
                  {"window", e.window}});
  }
  j["events"] = ev;
  j["itinerary"] = format_word(event_word(events));
  return j;
}

void write_minor_csv(std::ostream& os, const FrameCurve& c, int samples) {
  os << "t";
  for (int j = 1; j <= c.n(); ++j) os << ",m_" << j;
  os << "\n";
  char buf[40];
  for (int k = 0; k < samples; ++k) {
    const double t = samples == 1 ? c.lo() : c.lo() + (c.hi() - c.lo()) * k / (samples - 1);
    std::snprintf(buf, sizeof buf, "%.12g", t);
    os << buf;
    for (double m : southwest_minors(c.matrix(t))) {
      std::snprintf(buf, sizeof buf, "%.12g", m);
      os << "," << buf;
    }
    os << "\n";
  }
}

}  // namespace strata
