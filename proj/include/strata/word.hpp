#pragma once

#include <string>
#include <vector>

#include "strata/symgrp.hpp"

namespace strata {

/// Itinerary word w = (σ_1, …, σ_ℓ); every letter is a non-identity permutation of the same rank.
using Word = std::vector<Permutation>;

class WordSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses the bracket notation: "a[ba]" = (a, ba), "[aba]" = (aba), "aba" = (a, b, a).
/// "" and "()" denote the empty word. With n = 0 the rank is the largest generator index
/// used (at least 1). Bracket contents must be reduced words.
Word parse_word(const std::string& text, int n = 0);

/// Inverse of parse_word: simple generators as single letters, longer letters bracketed
/// using their lexicographically smallest reduced word; the empty word is "()".
std::string format_word(const Word& w);

/// Bracket-free rendering of one letter, e.g. [3142] → "acb".
std::string letter_string(const Permutation& s);

}  // namespace strata
