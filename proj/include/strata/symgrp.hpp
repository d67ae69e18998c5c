#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

/// Element of S_{n+1} stored by images: images()[i-1] = i^σ (1-based values).
/// Products act on the right: i^{στ} = (i^σ)^τ.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Coxeter generator a_j = (j, j+1), 1 ≤ j ≤ n.
  static Permutation generator(int n, int j);
  /// Longest element η: j ↦ n+2−j.
  static Permutation longest(int n);

  int rank() const { return static_cast<int>(images_.size()) - 1; }
  int size() const { return static_cast<int>(images_.size()); }
  /// i^σ for 1 ≤ i ≤ n+1.
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;

  /// "[3142]" (comma separated when n+1 > 9).
  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

class RankMismatch : public std::invalid_argument {
 public:
  RankMismatch() : std::invalid_argument("permutations of different rank") {}
};

class NotARealizableMultVector : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Generator indices i_1..i_k (1-based).
using ReducedWord = std::vector<int>;

Permutation compose(const Permutation& s, const Permutation& t);
inline Permutation operator*(const Permutation& s, const Permutation& t) { return compose(s, t); }

int inversions(const Permutation& s);
/// inv(σ) − 1.
int dim(const Permutation& s);
/// mult_j(σ) = Σ_{i≤j} (i^σ − i), j = 1..n.
std::vector<int> mult_vector(const Permutation& s);
Permutation permutation_from_mult(const std::vector<int>& m, int n);

Permutation word_product(int n, const ReducedWord& w);
bool is_reduced(int n, const ReducedWord& w);
/// Lexicographically smallest reduced word.
ReducedWord reduced_word(const Permutation& s);
/// All reduced words in lexicographic order; requires n ≤ 6.
std::vector<ReducedWord> all_reduced_words(const Permutation& s);

bool bruhat_leq(const Permutation& s, const Permutation& t);
/// s ⊲ t: s < t in Bruhat order and inv(t) = inv(s) + 1.
bool covers(const Permutation& s, const Permutation& t);

/// ⌊((n+1)/2)²⌋, the largest entry of any mult vector in S_{n+1}.
int r_bullet(int n);

std::vector<Permutation> all_permutations(int n);

/// Letters 'a'+i-1 for a reduced word, e.g. {1,3,2} → "acb".
std::string word_letters(const ReducedWord& w);

}  // namespace strata
