#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "strata/polysect.hpp"
#include "strata/spinalg.hpp"
#include "strata/symgrp.hpp"
#include "strata/word.hpp"

namespace strata {

class NotAPartialOrder : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// dim(w) = Σ (inv σ_i − 1), mult(w) = Σ mult σ_i, hat(w) = Π hat σ_i and
/// q_w = acute η·hat(w)·acute η.
struct WordStats {
  int n = 0;
  int dim = 0;
  std::vector<int> mult;
  CliffordEven hat;
  CliffordEven q;
};

WordStats word_stats(const Word& w, int n);

struct ConditionResult {
  bool pass = true;
  std::string reason;  // empty when pass
  std::string kind;    // "mult-violation", "hat-violation" or "isolated-empty-word"
};

/// Conditions every pair w0 ⪯ w1 satisfies: mult(w0) ≤ mult(w1) componentwise, equal hats,
/// and the empty word is related only to itself.
ConditionResult necessary_conditions(const Word& w0, const Word& w1, int n);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

/// Why a verdict was reached. Kinds: "reflexive", "mult-violation", "hat-violation",
/// "isolated-empty-word", "section-sample", "factorization", "length", "unknown".
struct Evidence {
  std::string kind;
  std::string detail;
  nlohmann::json data;
};

struct PrecCertificate {
  Verdict verdict = Verdict::Unknown;
  Word w0, w1;
  /// For yes: the blocks w̃_i with w̃_i ⪯ (σ_i).
  std::vector<Word> blocks;
  std::vector<Evidence> evidence;
  /// One certificate per block for yes verdicts.
  std::vector<PrecCertificate> children;
  nlohmann::json to_json() const;
};

/// A point of a section whose exact itinerary is the witnessed word.
struct SectionSample {
  std::vector<Rational> x;
  ExactItinerary iti;
  std::optional<Rational> u;
};

struct LetterObservation {
  Permutation sigma;
  std::map<Word, SectionSample> words;  // first sample seen for each word, in grid order
  int points = 0;
};

struct SamplingOptions {
  int budget = 1089;  // grid points per radius
  int radii = 8;      // radii 2^{-k}, k = 1..radii
  int threads = 0;
};

/// Exact itineraries seen on dyadic grids over [−r, r]^d, r = 2^{−k}, of the section of σ.
/// Every observed word w satisfies w ⪯ (σ); absence proves nothing.
LetterObservation letter_oracle_section(const Permutation& sigma, const SamplingOptions& opt = {});

/// Decides single blocks w̃ ⪯ (σ).
using LetterOracle = std::function<PrecCertificate(const Word& block, const Permutation& sigma)>;

struct PrecOptions {
  int max_w1 = 6;
  int max_w0 = 12;
};

/// Three-valued test of w0 ⪯ w1 through the factorization of w0 into ℓ(w1) nonempty blocks.
/// Yes needs a factorization whose blocks all pass the oracle; no needs every factorization to
/// contain a block the oracle refutes.
PrecCertificate prec(const Word& w0, const Word& w1, int n, const LetterOracle& oracle, const PrecOptions& opt = {});

/// Oracle backed by cached section sampling. A block is below (σ) when observed in the section
/// of σ, or (recursively, to the given depth) when it lies below some observed word.
class SectionOracle {
 public:
  explicit SectionOracle(int n, SamplingOptions opt = {}, int depth = 2);
  PrecCertificate operator()(const Word& block, const Permutation& sigma);
  LetterOracle as_function();
  const LetterObservation& observe(const Permutation& sigma);

 private:
  PrecCertificate decide(const Word& block, const Permutation& sigma, int depth);
  int n_;
  SamplingOptions opt_;
  int depth_;
  std::map<Permutation, std::unique_ptr<LetterObservation>> cache_;
  std::mutex mu_;
};

/// Transitive reduction of the relation on the given words as a DOT digraph, edges pointing
/// from the larger word down. Nodes are ordered by dim (descending), then by text.
/// Throws NotAPartialOrder if two distinct words are related both ways.
std::string hasse(const std::vector<Word>& words, const std::function<bool(const Word&, const Word&)>& leq);

/// Covering pairs (upper, lower) of the transitive reduction, in the DOT order.
std::vector<std::pair<Word, Word>> hasse_covers(const std::vector<Word>& words,
                                                const std::function<bool(const Word&, const Word&)>& leq);

struct SplittingReport {
  Rational u;
  bool acbac = false, cabca = false;
  std::optional<SectionSample> acbac_sample, cabca_sample;
  std::vector<Rational> u_values;  // values of the family parameter that were sampled
  int points = 0;
  /// Exclusivity: for u ≠ 0 exactly one of the two splittings occurs.
  bool consistent() const;
  nlohmann::json to_json() const;
};

/// Which of acbac and cabca occur for the perturbed [acb] family over a grid×grid lattice on
/// [−1/4, 1/4]². For u = 0 the family parameter also runs over {−1/10, 0, 1/10}, since the
/// neighbourhood of a curve with vanishing u-invariant contains both signs.
SplittingReport hr_splitting_report(const Rational& u, int grid = 100, int threads = 0);

}  // namespace strata
