#include <sstream>

#include "doctest.h"
#include "strata/polysect.hpp"

using namespace strata;

namespace {

std::string label(const SectionFamily& s, Rational x1, Rational x2, const std::optional<Rational>& u = std::nullopt) {
  return classify_point(s, {x1, x2}, u).to_string();
}

}  // namespace

TEST_CASE("aba section polynomials") {
  const SectionFamily s = build_section(Permutation::longest(2));
  CHECK(s.d == 2);
  const MultiPoly x1 = MultiPoly::var(s.x_var(1)), x2 = MultiPoly::var(s.x_var(2)), t = MultiPoly::var(s.t_var());
  const auto m = minors(s);
  CHECK(m[0] == t * t * Rational(1, 2) + x2);
  CHECK(m[1] == t * t * Rational(1, 2) + x1 * t - x2);
  const auto d = discriminants(s);
  CHECK(d[0] == x2 * -2);
  CHECK(d[1] == x1 * x1 + x2 * 2);
  CHECK(resultants(s).at({1, 2}) == -(d[0] * d[1]) * Rational(1, 4));
}

TEST_CASE("aba section labels") {
  const SectionFamily s = build_section(Permutation::longest(2));
  CHECK(label(s, 0, 0) == "[aba]");
  CHECK(label(s, Rational(1, 3), Rational(-1, 18)) == "[ba]a");
  CHECK(label(s, Rational(-1, 3), Rational(-1, 18)) == "a[ba]");
  CHECK(label(s, Rational(1, 2), 1) == "bb");
  CHECK(label(s, Rational(1, 2), -1) == "aa");
  const auto it = classify_point(s, {Rational(1, 3), Rational(-1, 18)});
  REQUIRE(it.events.size() == 2);
  CHECK(it.events[0].mult == std::vector<int>{1, 2});
  CHECK_THROWS_AS(classify_point(s, {Rational(1)}), std::invalid_argument);
}

TEST_CASE("refined roots") {
  const SectionFamily s = build_section(Permutation::longest(2));
  const auto it = classify_point(s, {Rational(1, 2), Rational(-1, 2)}, std::nullopt, Rational(1, 1000000));
  for (const auto& e : it.events) CHECK(e.root.hi - e.root.lo <= Rational(1, 1000000));
}

TEST_CASE("acb section") {
  const SectionFamily s = build_section(parse_word("[acb]").front());
  const MultiPoly x1 = MultiPoly::var(s.x_var(1)), x2 = MultiPoly::var(s.x_var(2));
  CHECK(resultants(s).at({1, 3}) == (x1 + x2) * (x1 + x2) * Rational(1, 4));
  CHECK(label(s, Rational(1, 18), Rational(-1, 18)) == "[ac]b[ac]");
  CHECK(label(s, Rational(-1, 18), Rational(1, 18)) == "b");
  CHECK(label(s, Rational(1, 2), Rational(1, 2)) == "cbc");
}

TEST_CASE("sections need a non-identity letter") {
  CHECK_THROWS_AS(build_section(Permutation::identity(2)), IdentityLetter);
}

TEST_CASE("simple generators give one open stratum") {
  const SectionFamily s = build_section(Permutation::generator(3, 2));
  CHECK(s.d == 0);
  CHECK(classify_point(s, {}).to_string() == "b");
}

TEST_CASE("perturbed family") {
  const SectionFamily f = build_perturbed_family(FamilyKind::BetaPrime, std::nullopt);
  const MultiPoly x2 = MultiPoly::var(f.x_var(2)), u = MultiPoly::var(f.u_var()), t = MultiPoly::var(f.t_var());
  CHECK(minors(f)[0] == u * t * t * t * Rational(1, 3) + t * t * Rational(1, 2) + x2);
  CHECK(discriminants(f)[0] == -(x2 * (u * u * x2 * 6 + 1)) * Rational(1, 2));
  CHECK(label(f, Rational(1, 4), Rational(-1, 4), Rational(2, 5)) == "acbac");
  CHECK_THROWS(classify_point(f, {0, 0}));
}

TEST_CASE("label maps keep grid order") {
  const SectionFamily s = build_section(Permutation::longest(2));
  const std::vector<GridAxis> axes{{-1, 1, 3}, {-1, 1, 5}};
  const auto a = stratum_map(s, axes, std::nullopt, 1), b = stratum_map(s, axes, std::nullopt, 4);
  REQUIRE(a.size() == 15);
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].x == b[k].x);
    CHECK(a[k].iti.to_string() == b[k].iti.to_string());
  }
  CHECK(a[1].x == std::vector<Rational>{-1, Rational(-1, 2)});
  std::ostringstream os;
  write_stratum_csv(os, s, a, std::nullopt);
  CHECK(os.str().rfind("x_1,x_2,u,itinerary,roots\n", 0) == 0);
}
