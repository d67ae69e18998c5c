#include "strata/symgrp.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace strata {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int m = static_cast<int>(images_.size());
  if (m < 1) throw std::invalid_argument("empty permutation");
  std::vector<bool> seen(m + 1, false);
  for (int v : images_) {
    if (v < 1 || v > m || seen[v]) throw std::invalid_argument("images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n + 1);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::generator(int n, int j) {
  if (j < 1 || j > n) throw std::invalid_argument("generator index out of range");
  std::vector<int> im(n + 1);
  std::iota(im.begin(), im.end(), 1);
  std::swap(im[j - 1], im[j]);
  return Permutation(std::move(im));
}

Permutation Permutation::longest(int n) {
  std::vector<int> im(n + 1);
  for (int j = 1; j <= n + 1; ++j) im[j - 1] = n + 2 - j;
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) im[images_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::string s = "[";
  const bool commas = images_.size() > 9;
  for (size_t i = 0; i < images_.size(); ++i) {
    if (commas && i) s += ',';
    s += std::to_string(images_[i]);
  }
  return s + "]";
}

Permutation compose(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size()) throw RankMismatch();
  std::vector<int> im(s.size());
  for (int i = 1; i <= s.size(); ++i) im[i - 1] = t(s(i));
  return Permutation(std::move(im));
}

int inversions(const Permutation& s) {
  int c = 0;
  for (int i = 1; i <= s.size(); ++i)
    for (int j = i + 1; j <= s.size(); ++j)
      if (s(i) > s(j)) ++c;
  return c;
}

int dim(const Permutation& s) { return inversions(s) - 1; }

std::vector<int> mult_vector(const Permutation& s) {
  std::vector<int> m(s.rank());
  int acc = 0;
  for (int j = 1; j <= s.rank(); ++j) {
    acc += s(j) - j;
    m[j - 1] = acc;
  }
  return m;
}

Permutation permutation_from_mult(const std::vector<int>& m, int n) {
  if (static_cast<int>(m.size()) != n) throw NotARealizableMultVector("mult vector has wrong length");
  std::vector<int> im(n + 1);
  int prev = 0;
  for (int j = 1; j <= n; ++j) {
    im[j - 1] = m[j - 1] - prev + j;
    prev = m[j - 1];
  }
  im[n] = -prev + n + 1;
  try {
    return Permutation(std::move(im));
  } catch (const std::invalid_argument&) {
    throw NotARealizableMultVector("mult vector does not come from a permutation");
  }
}

Permutation word_product(int n, const ReducedWord& w) {
  Permutation p = Permutation::identity(n);
  for (int i : w) p = compose(p, Permutation::generator(n, i));
  return p;
}

bool is_reduced(int n, const ReducedWord& w) {
  for (int i : w)
    if (i < 1 || i > n) return false;
  return inversions(word_product(n, w)) == static_cast<int>(w.size());
}

namespace {

// σ = a_i σ' with inv(σ') = inv(σ) − 1 iff positions i, i+1 of the images form a descent.
bool left_descent(const Permutation& s, int i) { return s(i) > s(i + 1); }

Permutation strip_left(const Permutation& s, int i) {
  std::vector<int> im = s.images();
  std::swap(im[i - 1], im[i]);
  return Permutation(std::move(im));
}

void all_words_rec(const Permutation& s, std::map<Permutation, std::vector<ReducedWord>>& memo) {
  if (memo.count(s)) return;
  std::vector<ReducedWord> out;
  if (s.is_identity()) {
    out.push_back({});
  } else {
    for (int i = 1; i <= s.rank(); ++i) {
      if (!left_descent(s, i)) continue;
      Permutation rest = strip_left(s, i);
      all_words_rec(rest, memo);
      for (const auto& w : memo[rest]) {
        ReducedWord v{i};
        v.insert(v.end(), w.begin(), w.end());
        out.push_back(std::move(v));
      }
    }
  }
  memo[s] = std::move(out);
}

}  // namespace

ReducedWord reduced_word(const Permutation& s) {
  ReducedWord w;
  Permutation cur = s;
  while (!cur.is_identity()) {
    for (int i = 1; i <= cur.rank(); ++i) {
      if (left_descent(cur, i)) {
        w.push_back(i);
        cur = strip_left(cur, i);
        break;
      }
    }
  }
  return w;
}

std::vector<ReducedWord> all_reduced_words(const Permutation& s) {
  if (s.rank() > 6) throw std::invalid_argument("all_reduced_words limited to n <= 6");
  std::map<Permutation, std::vector<ReducedWord>> memo;
  all_words_rec(s, memo);
  auto words = memo[s];
  std::sort(words.begin(), words.end());
  return words;
}

bool bruhat_leq(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size()) throw RankMismatch();
  const int m = s.size();
  // Tableau criterion: #{k ≤ i : s(k) ≥ j} ≤ #{k ≤ i : t(k) ≥ j} for all i, j.
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      int cs = 0, ct = 0;
      for (int k = 1; k <= i; ++k) {
        if (s(k) >= j) ++cs;
        if (t(k) >= j) ++ct;
      }
      if (cs > ct) return false;
    }
  return true;
}

bool covers(const Permutation& s, const Permutation& t) {
  return inversions(t) == inversions(s) + 1 && bruhat_leq(s, t);
}

int r_bullet(int n) { return (n + 1) * (n + 1) / 4; }

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> im(n + 1);
  std::iota(im.begin(), im.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::string word_letters(const ReducedWord& w) {
  std::string s;
  for (int i : w) s += static_cast<char>('a' + i - 1);
  return s;
}

}  // namespace strata
