#include "doctest.h"
#include "strata/symgrp.hpp"
#include "strata/word.hpp"

using namespace strata;

TEST_CASE("permutations act on the right") {
  const Permutation a = Permutation::generator(2, 1), b = Permutation::generator(2, 2);
  const Permutation ab = a * b;
  for (int i = 1; i <= 3; ++i) CHECK(ab(i) == b(a(i)));
  CHECK(a * b * a == Permutation::longest(2));
  CHECK((a * a).is_identity());
  CHECK(Permutation::longest(3).images() == std::vector<int>{4, 3, 2, 1});
  CHECK(Permutation({3, 1, 4, 2}).to_string() == "[3142]");
  CHECK_THROWS_AS(compose(a, Permutation::generator(3, 1)), RankMismatch);
  CHECK_THROWS_AS(Permutation({1, 1, 2}), std::invalid_argument);
}

TEST_CASE("inversions, dim and mult") {
  const Permutation acb = word_product(3, {1, 3, 2});
  CHECK(inversions(acb) == 3);
  CHECK(dim(acb) == 2);
  CHECK(mult_vector(acb) == std::vector<int>{2, 1, 2});
  CHECK(mult_vector(Permutation::longest(2)) == std::vector<int>{2, 2});
  CHECK(mult_vector(Permutation::identity(4)) == std::vector<int>{0, 0, 0, 0});
  CHECK(r_bullet(3) == 4);
  CHECK(r_bullet(2) == 2);
  CHECK(r_bullet(4) == 6);
}

TEST_CASE("mult vectors determine the permutation") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& s : all_permutations(n)) CHECK(permutation_from_mult(mult_vector(s), n) == s);
  CHECK_THROWS_AS(permutation_from_mult({1, 1}, 2), NotARealizableMultVector);
  CHECK_THROWS_AS(permutation_from_mult({-1, 0}, 2), NotARealizableMultVector);
}

TEST_CASE("reduced words") {
  CHECK(all_reduced_words(Permutation::longest(3)).size() == 16);
  CHECK(all_reduced_words(Permutation::longest(2)).size() == 2);
  for (const auto& s : all_permutations(3)) {
    const ReducedWord w = reduced_word(s);
    CHECK(static_cast<int>(w.size()) == inversions(s));
    CHECK(word_product(3, w) == s);
    for (const auto& v : all_reduced_words(s)) CHECK(word_product(3, v) == s);
  }
  CHECK(is_reduced(2, {1, 2, 1}));
  CHECK_FALSE(is_reduced(2, {1, 1}));
  CHECK(word_letters({1, 3, 2}) == "acb");
}

TEST_CASE("Bruhat order") {
  const Permutation e = Permutation::identity(2), a = Permutation::generator(2, 1), eta = Permutation::longest(2);
  CHECK(bruhat_leq(e, eta));
  CHECK(bruhat_leq(a, eta));
  CHECK_FALSE(bruhat_leq(eta, a));
  CHECK(covers(e, a));
  CHECK_FALSE(covers(e, eta));
  // every non-identity element of S_4 lies above some generator
  for (const auto& s : all_permutations(3)) {
    if (s.is_identity()) continue;
    bool above = false;
    for (int j = 1; j <= 3; ++j) above = above || bruhat_leq(Permutation::generator(3, j), s);
    CHECK(above);
  }
}

TEST_CASE("word syntax") {
  CHECK(parse_word("a[ba]").size() == 2);
  CHECK(parse_word("[aba]").size() == 1);
  CHECK(parse_word("aba").size() == 3);
  CHECK(parse_word("()").empty());
  CHECK(parse_word("").empty());
  CHECK(parse_word("[aba]").front() == Permutation::longest(2));
  CHECK(parse_word("a", 3).front().rank() == 3);
  CHECK(parse_word("[ac]b[ac]").front().rank() == 3);
  CHECK_THROWS_AS(parse_word("[aa]"), WordSyntaxError);
  CHECK_THROWS_AS(parse_word("a[b"), WordSyntaxError);
  CHECK_THROWS_AS(parse_word("A"), WordSyntaxError);
  CHECK_THROWS_AS(parse_word("c", 2), WordSyntaxError);
  for (const std::string s : {"a[ba]", "[aba]", "abab", "()", "[ac]b[ac]", "c[ab]c", "[acb]"})
    CHECK(format_word(parse_word(s)) == s);
  CHECK(letter_string(Permutation({3, 1, 4, 2})) == "acb");
}
