#include <numbers>

#include "doctest.h"
#include "strata/triang.hpp"

using namespace strata;

namespace {

RMatrix lower3(const Rational& x, const Rational& y, const Rational& z) {
  RMatrix L = RMatrix::identity(3);
  L(1, 0) = x;
  L(2, 1) = y;
  L(2, 0) = z;
  return L;
}

}  // namespace

TEST_CASE("Jacobi factors multiply back") {
  const ReducedWord aba{1, 2, 1};
  const RMatrix L = jacobi_product(2, aba, std::vector<Rational>{2, 3, 5});
  CHECK(factor_along(L, aba) == std::vector<Rational>{2, 3, 5});
  const auto t = factor_along(L, ReducedWord{2, 1, 2});
  CHECK(jacobi_product(2, ReducedWord{2, 1, 2}, t) == L);
  CHECK_THROWS_AS(factor_along(lower3(1, 1, 2), aba), NotFactorizable);
}

TEST_CASE("parameters of L(x, y, z) along both reduced words of eta") {
  const RMatrix L = lower3(7, 3, 15);
  CHECK(factor_along(L, ReducedWord{1, 2, 1}) == std::vector<Rational>{2, 3, 5});
  CHECK(factor_along(L, ReducedWord{2, 1, 2}) == std::vector<Rational>{Rational(15, 7), 7, Rational(6, 7)});
}

TEST_CASE("commutation identity") {
  const auto s = commute_identity(2, 3, 5);
  const RMatrix lhs = jacobi_product(2, ReducedWord{1, 2, 1}, std::vector<Rational>{2, 3, 5});
  const RMatrix rhs = jacobi_product(2, ReducedWord{2, 1, 2}, std::vector<Rational>(s.begin(), s.end()));
  CHECK(lhs == rhs);
}

TEST_CASE("exp of the nilpotent generator") {
  const RMatrix E = exp_nilpotent(3, 2);
  CHECK(E(3, 0) == Rational(4, 3));
  CHECK(E(2, 1) == 2);
  CHECK(E(1, 0) == 2);
}

TEST_CASE("order relations on Lo1") {
  const RMatrix I = RMatrix::identity(3);
  const RMatrix L = lower3(7, 3, 15);
  CHECK(is_ll(I, L));
  CHECK_FALSE(is_ll(L, I));
  CHECK(is_leq(I, jacobi_product(2, ReducedWord{1, 2}, std::vector<Rational>{2, 3})));
  CHECK_FALSE(is_ll(I, jacobi_product(2, ReducedWord{1, 2}, std::vector<Rational>{2, 3})));
}

TEST_CASE("accessibility quasiproduct for L(7, 3, 15)") {
  const Quasiproduct Q(lower3(7, 3, 15), ReducedWord{1, 2, 1});
  CHECK(Q.c1() == 2);
  // g_2(t1) = z/(x − t1), g_3(t1, t2) = (xy − z − y t1)/(y − t2)
  CHECK(*Q.bound({1}) == Rational(5, 2));
  CHECK(*Q.bound({1, 2}) == Rational(21 - 15 - 3, 1));
  CHECK(Q.contains({1, Rational(1, 4), Rational(1, 10)}));
  CHECK_FALSE(Q.contains({1, 1, 10}));
  CHECK_FALSE(Q.contains({3, 1, 1}));
}

TEST_CASE("LU and QR with positive diagonals") {
  const Eigen::MatrixXd Q = project(exp_h(3, 0.4));
  const LU lu = lu_of_rotation(Q);
  CHECK((lu.L * lu.U - Q).cwiseAbs().maxCoeff() < 1e-13);
  const QR qr = qr_positive(lu.L);
  CHECK((qr.Q * qr.R - lu.L).cwiseAbs().maxCoeff() < 1e-13);
  for (int k = 0; k < 4; ++k) CHECK(qr.R(k, k) > 0);
}

TEST_CASE("convex path in Lo1 reaches its target") {
  const Eigen::MatrixXd P = exp_hL(3, 0.7);
  const Lo1Path path = solve_lo1_path(P, reduced_word(Permutation::longest(3)));
  CHECK((path.at(1) - P).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((path.at(0) - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  for (double s : {0.1, 0.45, 0.8})
    for (double b : path.beta(s)) CHECK(b > 0);
  CHECK_THROWS_AS(solve_lo1_path(Eigen::MatrixXd::Identity(4, 4), reduced_word(Permutation::longest(3))),
                  NotTotallyPositive);
}

TEST_CASE("convex arcs between spin points") {
  const SpinF A = exp_h(3, 0.3), B = A * exp_h(3, 1.0);
  const ConvexArc arc = convex_connect(A, B);
  CHECK(max_abs_diff(arc.at(0), A) < 1e-9);
  CHECK(max_abs_diff(arc.at(1), B) < 1e-9);
}
