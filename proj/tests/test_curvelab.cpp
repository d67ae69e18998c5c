#include <cmath>
#include <numbers>

#include "doctest.h"
#include "strata/curvelab.hpp"
#include "strata/polysect.hpp"

using namespace strata;

TEST_CASE("circle from constant curvature") {
  const FrameCurve c = integrate(CurvatureSpec::h_multiple(2, std::numbers::pi), SpinF::scalar(2, 1.0));
  double err = 0;
  for (int k = 0; k <= 100; ++k) {
    const double t = k / 100.0, w = 2 * std::numbers::pi * t;
    const Eigen::Vector3d e(0.5 * (1 + std::cos(w)), std::sqrt(0.5) * std::sin(w), 0.5 * (1 - std::cos(w)));
    err = std::max(err, (c.matrix(t).col(0) - e).cwiseAbs().maxCoeff());
  }
  CHECK(err < 1e-8);
  CHECK(singular_set(c).empty());
  CHECK(max_abs_diff(c.spin(1), to_float(hat(Permutation::longest(2)))) < 1e-9);
  const auto k = curvatures(c, 0.5);
  CHECK(k[0] == doctest::Approx(std::numbers::pi * std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("curvature from xi") {
  CHECK(kappa_from_xi(0) == doctest::Approx(1));
  for (double xi : {-3.0, -0.5, 0.7, 12.0}) {
    const double k = kappa_from_xi(xi);
    CHECK(k > 0);
    CHECK(k - 1 / k == doctest::Approx(xi));
  }
}

TEST_CASE("curvature specs from JSON") {
  const auto s = CurvatureSpec::from_json(nlohmann::json::parse(
      R"({"n": 2, "domain": [0, 1], "pieces": [{"end": 0.5, "kappa": [[1], [2]]}, {"xi": [[0, 1], [0]]}]})"));
  CHECK(s.breakpoints == std::vector<double>{0.5});
  CHECK(s.kappa(0.25) == std::vector<double>{1, 2});
  CHECK(s.kappa(0.75)[1] == doctest::Approx(1));
  CHECK_THROWS_AS(CurvatureSpec::from_json(nlohmann::json::parse(R"({"n": 2})")), std::invalid_argument);
  CHECK_THROWS_AS(CurvatureSpec::from_json(nlohmann::json::parse(R"({"h": 1})")), std::invalid_argument);
  CHECK_THROWS_AS(CurvatureSpec::from_json(nlohmann::json::parse(R"({"n": 2, "pieces": [{"kappa": [[1]]}]})")),
                  std::invalid_argument);
}

TEST_CASE("southwest minors") {
  const Eigen::MatrixXd eta = project(to_float(acute(Permutation::longest(2))));
  for (double m : southwest_minors(eta)) CHECK(std::abs(m) == doctest::Approx(1));
  for (double m : southwest_minors(Eigen::MatrixXd::Identity(3, 3))) CHECK(m == 0);
}

TEST_CASE("model letter curves cross exactly their letter") {
  for (int n : {2, 3})
    for (const auto& s : all_permutations(n)) {
      if (s.is_identity()) continue;
      const auto ev = itinerary(model_letter_curve(s, 0.5));
      REQUIRE(ev.size() == 1);
      CHECK(ev[0].letter == s);
      CHECK(ev[0].mult == mult_vector(s));
      CHECK(std::abs(ev[0].time) < 1e-6);
    }
}

TEST_CASE("events at negative times stay separate") {
  const FrameCurve c = h_curve(2, std::numbers::pi, -2.5, 0.5);
  const auto s = singular_set(c);
  REQUIRE(s.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(s[k] == doctest::Approx(k - 2.0).epsilon(1e-9));
  CHECK(format_word(event_word(itinerary(c))) == "[aba][aba][aba]");
}

TEST_CASE("section curve of aba") {
  const SectionFamily s = build_section(Permutation::longest(2));
  const FrameCurve c = section_frame_curve(s, {Rational(1, 3), Rational(-1, 18)}, std::nullopt, -1, 1);
  const auto ev = itinerary(c);
  CHECK(format_word(event_word(ev)) == "[ba]a");
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].time == doctest::Approx(-1.0 / 3).epsilon(1e-6));
  CHECK(is_convex_arc(c.restricted(-0.2, 0.2), 16));
}

TEST_CASE("Hausdorff distance conventions") {
  CHECK(hausdorff({}, {}) == 0);
  CHECK(hausdorff({}, {0.5}) == 1);
  CHECK(hausdorff({0.5}, {}) == 1);
  CHECK(hausdorff({0.1, 0.5}, {0.2}) == doctest::Approx(0.3));
}

TEST_CASE("u invariant of the perturbed acb family") {
  for (const Rational& u : {Rational(2, 5), Rational(-1, 10)}) {
    const SectionFamily f = build_perturbed_family(FamilyKind::BetaPrime, u);
    const UInvariant r = u_invariant(section_frame_curve(f, {0, 0}, std::nullopt, -0.5, 0.5));
    CHECK(std::abs(r.u - to_double(u)) < 1e-9);
  }
}

TEST_CASE("curves with a prescribed itinerary") {
  for (const std::string ws : {"", "a", "[ab]", "a[ba]"}) {
    const Word w = parse_word(ws, 2);
    const SynthesizedCurve s = curve_with_itinerary(w, 2);
    CHECK(event_word(itinerary(s.curve)) == w);
    const FrameCurve ci = integrate(s.curvature, SpinF::scalar(2, 1.0));
    CHECK(max_abs_diff(ci.spin(1), to_float(q_of_word(w, 2))) < 1e-6);
    for (double t : {0.1, 0.33, 0.9})
      for (double k : s.curvature.kappa(t)) CHECK(k > 0);
  }
  CHECK_THROWS_AS(curve_with_itinerary(parse_word("a", 2), 3), RankMismatch);
  CHECK_THROWS_AS(curve_with_itinerary(parse_word("ab", 2), 2, {0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("curve JSON and CSV") {
  const FrameCurve c = h_curve(2, 1.0);
  const auto j = curve_to_json(c, {}, 5);
  CHECK(j["grid"].size() == 5);
  CHECK(j["itinerary"] == "()");
  std::ostringstream os;
  write_minor_csv(os, c, 3);
  CHECK(os.str().rfind("t,m_1,m_2\n", 0) == 0);
}
