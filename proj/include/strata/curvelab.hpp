#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "strata/polysect.hpp"
#include "strata/spinalg.hpp"
#include "strata/symgrp.hpp"
#include "strata/word.hpp"

namespace strata {

class NonPositiveCurvature : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class DegenerateJet : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class UnresolvedCluster : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotAnAcbEvent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class PathNotAccessible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Γ^{-1}Γ' = Σ κ_j(t) 𝔞_j on [lo, hi]. κ may jump at breakpoints only.
struct CurvatureSpec {
  int n = 0;
  double lo = 0, hi = 1;
  std::function<std::vector<double>(double)> kappa;
  std::vector<double> breakpoints;

  static CurvatureSpec constant(int n, std::vector<double> k, double lo = 0, double hi = 1);
  /// κ_j = speed·√(j(n+1−j)), so that Γ(t) = exp(speed·t·𝔥) from 1.
  static CurvatureSpec h_multiple(int n, double speed, double lo = 0, double hi = 1);
  /// Piecewise polynomials given either as κ or as ξ = κ − 1/κ.
  static CurvatureSpec from_json(const nlohmann::json& j);
};

/// κ = (ξ + √(ξ² + 4))/2, the positive solution of ξ = κ − 1/κ.
double kappa_from_xi(double xi);

/// Continuous curve in Spin_{n+1} on [lo, hi], evaluated through a callback. Breakpoints mark
/// where derivatives may jump.
class FrameCurve {
 public:
  using Eval = std::function<SpinF(double)>;
  FrameCurve() = default;
  FrameCurve(int n, double lo, double hi, Eval eval, std::vector<double> breakpoints = {});

  int n() const { return n_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  SpinF spin(double t) const { return eval_(t); }
  Eigen::MatrixXd matrix(double t) const { return project(eval_(t)); }
  /// t ↦ g·Γ(t).
  FrameCurve left_translate(const SpinF& g) const;
  FrameCurve restricted(double lo, double hi) const;

 private:
  int n_ = 0;
  double lo_ = 0, hi_ = 1;
  Eval eval_;
  std::vector<double> breakpoints_;
};

struct IntegrateOptions {
  double tol = 1e-10;
  double max_step = 1.0 / 64;
  bool backward = false;  // start is Γ(hi) and the ODE is solved down to lo
};

/// Adaptive RK4 in Spin with step doubling and renormalization; queries between nodes are
/// answered by re-integrating from the nearest node.
FrameCurve integrate(const CurvatureSpec& spec, const SpinF& start, const IntegrateOptions& opt = {});

/// Frame of a sphere curve from its jet (γ, γ', …, γ^{(n)}) by Gram–Schmidt.
FrameCurve frenet_frame(int n, double lo, double hi, std::function<std::vector<Eigen::VectorXd>(double)> jet,
                        int samples = 1024);

/// Γ(t)^{-1}Γ'(t) as a skew matrix, by central differences.
Eigen::MatrixXd log_derivative(const FrameCurve& c, double t, double h = 1e-5);
/// Subdiagonal of log_derivative.
std::vector<double> curvatures(const FrameCurve& c, double t, double h = 1e-5);

/// m_j = det of rows n+2−j..n+1 and columns 1..j, j = 1..n.
std::vector<double> southwest_minors(const Eigen::MatrixXd& Q);

struct SingularEvent {
  double time = 0;
  Permutation letter;
  std::vector<int> mult;
  /// Zero locations of the individual minors (NaN where m_j does not vanish).
  std::vector<double> zeros;
  /// Half width of the window in which multiplicities were counted.
  double window = 0;
};

struct ItineraryOptions {
  int grid = 2048;
  double cluster_tol = 1e-7;
  double zero_tol = 1e-10;
};

/// Interior times where some southwest minor vanishes, clustered.
std::vector<double> singular_set(const FrameCurve& c, const ItineraryOptions& opt = {});
/// Events with multiplicities and letters; throws UnresolvedCluster when a cluster cannot be
/// classified.
std::vector<SingularEvent> itinerary(const FrameCurve& c, const ItineraryOptions& opt = {});
Word event_word(const std::vector<SingularEvent>& events);

/// Hausdorff distance with d_H(∅, X) = 1 for X ≠ ∅.
double hausdorff(const std::vector<double>& X, const std::vector<double>& Y);

/// Γ(t0)^{-1}Γ(t1) ∈ Bru_{acute η} for all sampled t0 < t1.
bool is_convex_arc(const FrameCurve& c, int samples = 48);

/// θ ↦ acute η·acute σ·exp(θ𝔥) on [−θ0, θ0].
FrameCurve model_letter_curve(const Permutation& sigma, double theta0);
/// t ↦ exp(speed·t·𝔥) on [lo, hi].
FrameCurve h_curve(int n, double speed, double lo = 0, double hi = 1);
/// t ↦ Q(M(x, t)) of a section family, lifted continuously.
FrameCurve section_frame_curve(const SectionFamily& s, const std::vector<Rational>& x,
                               const std::optional<Rational>& u, double lo, double hi);

struct UInvariant {
  double u = 0;
  double b1 = 0, b3 = 0;
  double time = 0;
  /// Difference between estimates from two window widths.
  double residual = 0;
};

/// u = (b3 β1'(0) − b1 β3'(0))/(2 b1 b3) after normalizing β2 to 1, from the triangular chart at
/// the [acb] event nearest to t_event.
UInvariant u_invariant(const FrameCurve& c, double t_event);
/// Same, locating the single [acb] event first.
UInvariant u_invariant(const FrameCurve& c);

struct SynthesisOptions {
  std::uint64_t seed = 1;
  int attempts = 24;
  int candidates = 32;  // sampled walks per event and attempt
  double eps0 = 0.1;
  double eps_min = 1e-5;
};

struct SynthesizedCurve {
  FrameCurve curve;
  CurvatureSpec curvature;
  std::vector<SpinF> path;  // z_1..z_ℓ
  std::vector<double> times;
  double epsilon = 0;  // smallest arc half width
};

/// Locally convex curve from 1 to q_of_word(w) with singular set {t_j} and itinerary w. The
/// event points are sampled from the accessible paths backwards from the endpoint; consecutive
/// events are joined by convex arcs built in triangular coordinates.
SynthesizedCurve curve_with_itinerary(const Word& w, int n, std::vector<double> times = {},
                                      const SynthesisOptions& opt = {});

nlohmann::json curve_to_json(const FrameCurve& c, const std::vector<SingularEvent>& events, int samples = 257);
void write_minor_csv(std::ostream& os, const FrameCurve& c, int samples = 1025);

}  // namespace strata
