#include "doctest.h"
#include "strata/poset.hpp"

using namespace strata;

namespace {

Word W(const std::string& s, int n) { return parse_word(s, n); }

// Oracle that knows only reflexivity.
PrecCertificate reflexive_oracle(const Word& block, const Permutation& sigma) {
  PrecCertificate c;
  c.w0 = block;
  c.w1 = {sigma};
  c.verdict = block == Word{sigma} ? Verdict::Yes : Verdict::Unknown;
  return c;
}

}  // namespace

TEST_CASE("word statistics") {
  const WordStats s = word_stats(W("[ac]b[ac]", 3), 3);
  CHECK(s.dim == 2);
  CHECK(s.mult == std::vector<int>{2, 1, 2});
  CHECK(is_quat(s.q));
  CHECK(word_stats(W("[acb]", 3), 3).mult == s.mult);
  CHECK(word_stats({}, 2).dim == 0);
}

TEST_CASE("necessary conditions") {
  CHECK(necessary_conditions(W("aa", 2), W("[aba]", 2), 2).pass);
  CHECK(necessary_conditions(W("[ac]b[ac]", 3), W("[acb]", 3), 3).pass);
  const auto empty = necessary_conditions({}, W("[aba]", 2), 2);
  CHECK_FALSE(empty.pass);
  CHECK(empty.kind == "isolated-empty-word");
  CHECK(necessary_conditions({}, {}, 2).pass);
  CHECK(necessary_conditions(W("bb", 2), W("aa", 2), 2).kind == "mult-violation");
  CHECK(necessary_conditions(W("a", 2), W("aa", 2), 2).kind == "hat-violation");
}

TEST_CASE("factorization search") {
  const auto yes = prec(W("ab", 2), W("ab", 2), 2, reflexive_oracle);
  CHECK(yes.verdict == Verdict::Yes);
  const auto split = prec(W("aa", 2), W("a[ba]", 2), 2, [](const Word& b, const Permutation& s) {
    PrecCertificate c = reflexive_oracle(b, s);
    if (b == W("a", 2) && Word{s} == W("[ba]", 2)) c.verdict = Verdict::Yes;
    return c;
  });
  CHECK(split.verdict == Verdict::Yes);
  REQUIRE(split.blocks.size() == 2);
  CHECK(format_word(split.blocks[1]) == "a");
  CHECK(prec(W("bb", 2), W("aa", 2), 2, reflexive_oracle).verdict == Verdict::No);
  CHECK(prec({}, W("[aba]", 2), 2, reflexive_oracle).verdict == Verdict::No);
  CHECK(prec(W("abab", 2), W("[aba]", 2), 2, reflexive_oracle).verdict == Verdict::Unknown);
  PrecOptions tight;
  tight.max_w0 = 2;
  CHECK(prec(W("abab", 2), W("[aba]", 2), 2, reflexive_oracle, tight).verdict == Verdict::Unknown);
}

TEST_CASE("section oracle below aba") {
  const auto obs = letter_oracle_section(Permutation::longest(2));
  std::vector<std::string> words;
  for (const auto& [w, s] : obs.words) words.push_back(format_word(w));
  std::sort(words.begin(), words.end());
  CHECK(words == std::vector<std::string>{"[ab]b", "[aba]", "[ba]a", "a[ba]", "aa", "abab", "b[ab]", "baba", "bb"});
  // every sample reclassifies to its word
  const SectionFamily s = build_section(Permutation::longest(2));
  for (const auto& [w, sample] : obs.words) CHECK(classify_point(s, sample.x).word() == w);
}

TEST_CASE("simple generators only see themselves") {
  const auto obs = letter_oracle_section(Permutation::generator(2, 1));
  REQUIRE(obs.words.size() == 1);
  CHECK(format_word(obs.words.begin()->first) == "a");
}

TEST_CASE("certificates from the section oracle") {
  SectionOracle oracle(2);
  const auto c = prec(W("a[ba]", 2), W("[aba]", 2), 2, oracle.as_function());
  CHECK(c.verdict == Verdict::Yes);
  const auto j = c.to_json();
  CHECK(j["verdict"] == "yes");
  CHECK(j["children"][0]["evidence"][0]["kind"] == "section-sample");
  CHECK(prec(W("aa", 2), W("[aba]", 2), 2, oracle.as_function()).verdict == Verdict::Yes);
  CHECK(prec(W("aa", 2), W("a[ba]", 2), 2, oracle.as_function()).verdict == Verdict::Yes);
}

TEST_CASE("Hasse diagrams") {
  auto leq_len = [](const Word& a, const Word& b) { return a.size() >= b.size(); };
  const std::string one = hasse({W("a", 2)}, leq_len);
  CHECK(one.find("->") == std::string::npos);
  CHECK(one.find("\"a\";") != std::string::npos);
  const std::vector<Word> chain{W("a", 2), W("aa", 2), W("aaa", 2)};
  CHECK(hasse_covers(chain, leq_len).size() == 2);
  CHECK_THROWS_AS(hasse({W("a", 2), W("b", 2)}, [](const Word&, const Word&) { return true; }), NotAPartialOrder);
}
