#include "strata/word.hpp"

#include <algorithm>
#include <cctype>

namespace strata {

namespace {

int letter_index(char c) {
  if (c < 'a' || c > 'h') throw WordSyntaxError(std::string("unknown generator letter '") + c + "'");
  return c - 'a' + 1;
}

}  // namespace

Word parse_word(const std::string& text, int n) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "()") return {};

  std::vector<ReducedWord> groups;
  int max_index = 1;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') {
      size_t close = s.find(']', i);
      if (close == std::string::npos) throw WordSyntaxError("unbalanced '['");
      if (close == i + 1) throw WordSyntaxError("empty bracket group");
      ReducedWord g;
      for (size_t k = i + 1; k < close; ++k) {
        if (s[k] == '[') throw WordSyntaxError("nested brackets");
        g.push_back(letter_index(s[k]));
      }
      groups.push_back(g);
      i = close;
    } else if (s[i] == ']') {
      throw WordSyntaxError("unbalanced ']'");
    } else {
      groups.push_back({letter_index(s[i])});
    }
    max_index = std::max(max_index, *std::max_element(groups.back().begin(), groups.back().end()));
  }
  if (n == 0) n = max_index;
  if (max_index > n) throw WordSyntaxError("generator index exceeds rank");

  Word w;
  for (const auto& g : groups) {
    if (!is_reduced(n, g)) throw WordSyntaxError("bracket group '" + word_letters(g) + "' is not a reduced word");
    w.push_back(word_product(n, g));
  }
  return w;
}

std::string letter_string(const Permutation& s) { return word_letters(reduced_word(s)); }

std::string format_word(const Word& w) {
  if (w.empty()) return "()";
  std::string out;
  for (const auto& s : w) {
    std::string l = letter_string(s);
    if (l.size() == 1) out += l;
    else out += "[" + l + "]";
  }
  return out;
}

}  // namespace strata
