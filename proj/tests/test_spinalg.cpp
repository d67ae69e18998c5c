#include <cmath>
#include <numbers>

#include "doctest.h"
#include "strata/spinalg.hpp"

using namespace strata;

namespace {

CliffordEven one(int n) { return CliffordEven::scalar(n, Root2(1)); }

}  // namespace

TEST_CASE("alpha at multiples of a quarter turn") {
  for (int n = 1; n <= 4; ++n)
    for (int j = 1; j <= n; ++j) {
      CHECK(alpha_quarter(n, j, 4) == -one(n));
      CHECK(alpha_quarter(n, j, 8) == one(n));
      CHECK(max_abs_diff(to_float(alpha_quarter(n, j, 1)), alpha(n, j, std::numbers::pi / 2)) < 1e-15);
    }
}

TEST_CASE("acute does not depend on the reduced word") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& s : all_permutations(n)) {
      const CliffordEven ref = acute(s);
      for (const auto& w : all_reduced_words(s)) {
        CliffordEven z = one(n);
        for (int i : w) z = z * alpha_quarter(n, i, 1);
        CHECK(z == ref);
      }
    }
}

TEST_CASE("hat lands in Quat") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& s : all_permutations(n)) {
      CHECK(is_quat(hat(s)));
      CHECK(is_unit(acute(s)));
    }
  CHECK(hat(Permutation::longest(2)) == -one(2));
  const auto ae = acute(Permutation::longest(3));
  CHECK(hat(Permutation::longest(3)) == ae * ae);
}

TEST_CASE("projection of acute sigma is a signed permutation matrix") {
  for (const auto& s : all_permutations(3)) {
    const auto P = project(acute(s));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double v = P(i, j).to_double();
        CHECK(std::abs(std::abs(v) - (std::abs(v) > 0.5 ? 1 : 0)) < 1e-15);
      }
    CHECK(bruhat_cell(project(to_float(acute(s)))) == s);
  }
}

TEST_CASE("signed cells of acute sigma") {
  for (const auto& s : all_permutations(3)) {
    CHECK(spin_cell(to_float(acute(s))).b == acute(s));
    CHECK(spin_cell(-to_float(acute(s))).b == -acute(s));
  }
}

TEST_CASE("exp of h from one to hat eta") {
  for (int n = 1; n <= 4; ++n)
    CHECK(max_abs_diff(exp_h(n, std::numbers::pi), to_float(hat(Permutation::longest(n)))) < 1e-12);
  CHECK(max_abs_diff(exp_h(3, 0.4) * exp_h(3, 0.3), exp_h(3, 0.7)) < 1e-14);
}

TEST_CASE("lifts and units") {
  const SpinF z = exp_h(3, 0.7) * alpha(3, 2, 1.1);
  CHECK(is_unit(z));
  CHECK(max_abs_diff(lift_near(project(z), z), z) < 1e-12);
  CHECK(max_abs_diff(lift_near(project(z), -z), -z) < 1e-12);
  CHECK(max_abs_diff(z * spin_inverse(z), SpinF::scalar(3, 1.0)) < 1e-14);
}

TEST_CASE("quaternion words") {
  CHECK(q_of_word(parse_word("abab", 2), 2) == one(2));
  CHECK(is_quat(q_of_word(parse_word("[acb]", 3), 3)));
  const auto ae = acute(Permutation::longest(2));
  CHECK(q_of_word({}, 2) == ae * ae);
  const SpinWordTable t = word_table(parse_word("a[ba]", 2), 2);
  CHECK(t.half.size() == 3);
  CHECK(t.integer.size() == 3);
}

TEST_CASE("exit angle along a generator") {
  const Permutation rho0 = Permutation::generator(3, 1);
  const double th0 = 0.3;
  const SpinF y = to_float(acute(rho0)) * alpha(3, 2, th0);
  const Permutation rho = bruhat_cell(project(y));
  CHECK(inversions(rho) == 2);
  const double th = theta_exit(y, 2, rho);
  CHECK(th > 0);
  CHECK(th < std::numbers::pi);
  CHECK(bruhat_cell(project(y * alpha(3, 2, -th)), 1e-7) == rho0);
}

TEST_CASE("Clifford JSON round trip") {
  for (const auto& s : all_permutations(3)) {
    const CliffordEven z = acute(s);
    CHECK(clifford_from_json(to_json(z)) == z);
  }
  CHECK_THROWS(clifford_from_json(nlohmann::json{{"n", 2}, {"terms", {{{"blade", {1}}, {"num", 1}}}}}));
}
