#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "strata/matrix.hpp"
#include "strata/poly.hpp"
#include "strata/spinalg.hpp"
#include "strata/symgrp.hpp"
#include "strata/word.hpp"

namespace strata {

class UnrecognizedMultPattern : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class FamilyKind { Section, BetaPrime, MatrixU };

/// Polynomial family M(x, t) = M̃(x)·L(t) transversal to the cell of q·acute η·acute σ.
/// Variables: x_1..x_{d+1} have indices 0..d, then u (index d+1), then t (index d+2).
/// M is stored with the slice x_{d+1} = 0 applied.
struct SectionFamily {
  Permutation sigma;
  Permutation rho;  // ησ
  int n = 0;
  int d = 0;  // dim σ
  FamilyKind kind = FamilyKind::Section;
  std::optional<Rational> u;  // nullopt: u stays symbolic
  Matrix<Root2> Q0;
  Matrix<MultiPoly> Mtilde;
  Matrix<MultiPoly> M;
  std::vector<std::string> names;
  /// Open parameter interval of the curves; nullopt means the whole line.
  std::optional<std::pair<Rational, Rational>> t_domain;

  int x_var(int l) const { return l - 1; }
  int u_var() const { return d + 1; }
  int t_var() const { return d + 2; }
  bool has_u() const { return kind != FamilyKind::Section; }
};

/// Section for σ ≠ e; q ∈ Quat defaults to 1.
SectionFamily build_section(const Permutation& sigma, const std::optional<CliffordEven>& q = std::nullopt);
/// Perturbations of the acb section (n = 3): BetaPrime integrates L' = L·Σ β_j 𝔩_j with
/// β = (1+ut, 1, 1−ut); MatrixU adds −u at position (3,2) of M̃.
SectionFamily build_perturbed_family(FamilyKind kind, const std::optional<Rational>& u);

/// m_j = southwest j×j minor of M (rows n+2−j..n+1, columns 1..j).
std::vector<MultiPoly> minors(const SectionFamily& s);
/// d_j = disc_t m_j.
std::vector<MultiPoly> discriminants(const SectionFamily& s);
/// r_{i,j} = res_t(m_i, m_j) for i < j.
std::map<std::pair<int, int>, MultiPoly> resultants(const SectionFamily& s);

struct ExactEvent {
  RootInterval root;
  std::vector<int> mult;
  Permutation letter;
};

struct ExactItinerary {
  std::vector<ExactEvent> events;
  Word word() const;
  std::string to_string() const { return format_word(word()); }
};

/// Exact itinerary of t ↦ Q(M(x, t)) on the family's t domain; x has d entries. For families with a
/// symbolic u a value must be given. With a width, isolating intervals are refined to at most
/// that width.
ExactItinerary classify_point(const SectionFamily& s, const std::vector<Rational>& x,
                              const std::optional<Rational>& u = std::nullopt,
                              const std::optional<Rational>& width = std::nullopt);

struct GridAxis {
  Rational lo, hi;
  int count = 1;
  Rational at(int k) const { return count == 1 ? lo : lo + (hi - lo) * k / (count - 1); }
};

struct GridLabel {
  std::vector<Rational> x;
  ExactItinerary iti;
};

/// Labels every point of the product grid (row-major, first axis slowest). Work is split over
/// threads; output order is the grid order.
std::vector<GridLabel> stratum_map(const SectionFamily& s, const std::vector<GridAxis>& axes,
                                   const std::optional<Rational>& u = std::nullopt, int threads = 0,
                                   const std::optional<Rational>& width = std::nullopt);

/// CSV with columns x_1..x_d,u,itinerary,roots.
void write_stratum_csv(std::ostream& os, const SectionFamily& s, const std::vector<GridLabel>& labels,
                       const std::optional<Rational>& u);

/// Lines "d_j = …" and "r_i_j = …" describing the discriminant and resultant loci.
std::vector<std::string> stratum_loci(const SectionFamily& s);

/// t ↦ M(x, t) with x (and u) fixed; entries become float polynomials in t.
class SectionCurve {
 public:
  SectionCurve(const SectionFamily& s, const std::vector<Rational>& x,
               const std::optional<Rational>& u = std::nullopt);
  Eigen::MatrixXd at(double t) const;
  int size() const { return N_; }

 private:
  int N_ = 0;
  std::vector<std::vector<double>> coeffs_;  // row-major entries, low degree first
};

}  // namespace strata
