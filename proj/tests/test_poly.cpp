#include "doctest.h"
#include "strata/poly.hpp"
#include "strata/root2.hpp"

using namespace strata;

namespace {

UPoly up(std::vector<Rational> c) { return UPoly(std::move(c)); }

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("7") == 7);
  CHECK(to_string(parse_rational("4/6")) == "2/3");
  CHECK(to_string(Rational(-5)) == "-5");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("root two arithmetic") {
  const Root2 s = Root2::sqrt2();
  CHECK(s * s == Root2(2));
  CHECK(Root2(1) / s == Root2(0, Rational(1, 2)));
  CHECK(Root2::inv_sqrt2_pow(2) == Root2(Rational(1, 2)));
  CHECK(Root2(1, -1).sign() < 0);
  CHECK(Root2(-1, 1).sign() > 0);
}

TEST_CASE("univariate gcd and square-free parts") {
  // (t − 1)²(t + 2)
  const UPoly p = up({2, -3, 0, 1});
  CHECK(gcd(p, p.derivative()) == up({-1, 1}));
  CHECK(squarefree_part(p) == up({-2, 1, 1}));
  const auto dec = squarefree_decomposition(p);
  REQUIRE(dec.size() == 2);
  CHECK(dec[0].first == up({2, 1}));
  CHECK(dec[0].second == 1);
  CHECK(dec[1].first == up({-1, 1}));
  CHECK(dec[1].second == 2);
  CHECK(order_at(p, 1) == 2);
  CHECK(order_at(p, -2) == 1);
  CHECK(order_at(p, 0) == 0);
}

TEST_CASE("real root isolation") {
  // (t² − 2)(3t − 1)
  const UPoly p = up({-2, 0, 1}) * up({-1, 3});
  const auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].approx() < -1.4);
  CHECK(roots[1].lo <= Rational(1, 3));
  CHECK(roots[1].hi >= Rational(1, 3));
  const RootInterval r = refine_root(p, roots[2], Rational(1, 1000000));
  CHECK(r.hi - r.lo <= Rational(1, 1000000));
  CHECK(std::abs(r.approx() - 1.41421356) < 1e-6);
  CHECK(has_root_in(p, r));
  CHECK(isolate_real_roots(up({1, 0, 1})).empty());
  CHECK(sturm_count(sturm_sequence(p), -2, 2) == 3);
}

TEST_CASE("multivariate arithmetic and printing") {
  const MultiPoly x = MultiPoly::var(0), t = MultiPoly::var(1);
  const MultiPoly p = x * t + t * t * Rational(1, 2) - x;
  CHECK(p.to_string({"x", "t"}) == "x*t + 1/2*t^2 - x");
  CHECK(p.degree(1) == 2);
  CHECK(p.coeff(1, 1) == x);
  CHECK(p.derivative(1) == x + t);
  CHECK(p.substitute(0, Rational(2)) == t * t * Rational(1, 2) + t * 2 - 2);
  CHECK(divide_exact(p * (x + 1), x + 1) == p);
  CHECK_THROWS(divide_exact(p, x + 1));
}

TEST_CASE("discriminants and resultants") {
  const MultiPoly b = MultiPoly::var(0), c = MultiPoly::var(1), t = MultiPoly::var(2);
  CHECK(discriminant(t * t + b * t + c, 2) == b * b - c * 4);
  // res_t(t − b, t − c) = b − c up to sign
  const MultiPoly r = resultant(t - b, t - c, 2);
  CHECK((r == b - c || r == c - b));
  CHECK(resultant(t * t - 1, t - 2, 2) == MultiPoly(3));
}

TEST_CASE("rational functions") {
  const MultiPoly x = MultiPoly::var(0), y = MultiPoly::var(1);
  const RatFunc f(x * y, y), g(x);
  CHECK(f == g);
  CHECK(RatFunc(1) / RatFunc(x) + RatFunc(1) / RatFunc(y) == RatFunc(x + y, x * y));
  CHECK(RatFunc(x) - RatFunc(x) == RatFunc(0));
}
