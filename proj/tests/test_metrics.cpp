// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "optra/error.hpp"
#include "optra/metrics.hpp"
#include "oracles.hpp"

using namespace optra;

namespace {

void expect_error(ErrorCode code, auto&& fn) {
  try {
    fn();
    FAIL("expected error " << to_string(code));
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

/// sum_i f_i(x_i) - f* - <grad f_i(x*), x_i - x*> evaluated with plain values.
double bregman_oracle(const MultiVector& x, const ReferenceSolution& ref, const ObjectiveInstance& inst) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < x.agents(); ++i) {
    s += inst.local_value(i, x.row(i)) - inst.local_value(i, ref.x_star);
    for (std::size_t j = 0; j < x.dim(); ++j) s -= ref.grad_at_star(i, j) * (x(i, j) - ref.x_star[j]);
  }
  return static_cast<double>(s);
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("Bregman distance vanishes at the stacked optimum") {
    const ObjectiveInstance inst = generate_least_squares(4, 3, 5, 0.5, 0.4, 3);
    const ReferenceSolution ref = solve_reference(inst);
    const MultiVector star = MultiVector::consensus(4, ref.x_star);
    CHECK(std::abs(bregman(star, ref, inst)) <= 1e-14);
    CHECK(std::abs(fem(star, ref, inst)) <= 1e-9 * (1.0 + std::abs(ref.f_star)));
    CHECK(consensus_error(star) <= 1e-14);
  }

  TEST_CASE("Bregman distance of 1/2 ||x||^2 is 1/2 ||x - x*||^2") {
    std::vector<LocalTerm> terms;
    for (int i = 0; i < 3; ++i) terms.emplace_back(QuadraticTerm{DenseSym::identity(2), Vector(2, 0.0)});
    const ObjectiveInstance inst(ObjectiveKind::kLeastSquares, 2, std::move(terms), 1.0);
    ReferenceSolution ref;
    ref.x_star = {0.0, 0.0};
    ref.grad_at_star = MultiVector(3, 2);
    ref.y_star = MultiVector(3, 2);
    oracle::Gen gen(1);
    const MultiVector x = gen.multi(3, 2);
    CHECK(std::abs(bregman(x, ref, inst) - 0.5 * frobenius_inner(x, x)) <= 1e-14);
  }

  TEST_CASE("Bregman distance matches the plain-value oracle") {
    oracle::Gen gen(8);
    const std::vector<ObjectiveInstance> instances{generate_least_squares(3, 4, 3, 0.3, 0.2, 5),
                                                   generate_hard_two_agent(1, 3, 2.0),
                                                   generate_hard_line(10, 1, 3, 1.0, 0.2)};
    for (const auto& inst : instances) {
      const ReferenceSolution ref = solve_reference(inst);
      for (int trial = 0; trial < 10; ++trial) {
        const MultiVector x = gen.multi(inst.agents(), 3);
        const double want = bregman_oracle(x, ref, inst);
        const double got = bregman(x, ref, inst);
        CHECK(got >= 0.0);
        CHECK(std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)));
      }
    }
  }

  TEST_CASE("Bregman distance is invariant to the choice of minimizer") {
    // One row per agent in d = 3: x* is only defined up to the null space.
    std::vector<LocalTerm> terms;
    LeastSquaresTerm t1{Matrix(1, 3), Vector{1.0}};
    t1.a(0, 0) = 1.0;
    t1.a(0, 1) = 1.0;
    LeastSquaresTerm t2{Matrix(1, 3), Vector{3.0}};
    t2.a(0, 2) = 2.0;
    terms.emplace_back(t1);
    terms.emplace_back(t2);
    const ObjectiveInstance inst(ObjectiveKind::kLeastSquares, 3, std::move(terms), 8.0);
    const ReferenceSolution ref = solve_reference(inst);

    ReferenceSolution shifted = ref;
    shifted.x_star[0] += 0.7;
    shifted.x_star[1] -= 0.7;
    shifted.grad_at_star = inst.gradient(MultiVector::consensus(2, shifted.x_star));

    oracle::Gen gen(3);
    for (int trial = 0; trial < 10; ++trial) {
      const MultiVector x = gen.multi(2, 3);
      CHECK(std::abs(bregman(x, ref, inst) - bregman(x, shifted, inst)) <= 1e-12);
    }
  }

  TEST_CASE("FEM is the worst agent's global suboptimality") {
    oracle::Gen gen(12);
    const ObjectiveInstance inst = generate_least_squares(5, 3, 4, 0.2, 0.5, 9);
    const ReferenceSolution ref = solve_reference(inst);
    const MultiVector x = gen.multi(5, 4);
    double worst = -1e300;
    for (std::size_t i = 0; i < 5; ++i) {
      double fi = 0.0;
      for (std::size_t a = 0; a < 5; ++a) fi += inst.local_value(a, x.row(i));
      worst = std::max(worst, fi - ref.f_star);
    }
    CHECK(std::abs(fem(x, ref, inst) - worst) <= 1e-10 * (1.0 + worst));
  }

  TEST_CASE("consensus error") {
    MultiVector x(2, 3);
    const double v[3] = {1.0, -2.0, 0.5};
    for (std::size_t j = 0; j < 3; ++j) {
      x(0, j) = v[j];
      x(1, j) = -v[j];
    }
    CHECK(std::abs(consensus_error(x) - std::sqrt(2.0 * 5.25)) <= 1e-14);
    CHECK(consensus_error(x + MultiVector::consensus(2, std::vector<double>{3.0, 1.0, 2.0})) ==
          doctest::Approx(consensus_error(x)).epsilon(1e-14));
  }

  TEST_CASE("metrics reject mismatched shapes") {
    const ObjectiveInstance inst = generate_least_squares(2, 2, 3, 0.0, 0.0, 1);
    const ReferenceSolution ref = solve_reference(inst);
    expect_error(ErrorCode::kShapeError, [&] { (void)bregman(MultiVector(3, 3), ref, inst); });
    expect_error(ErrorCode::kShapeError, [&] { (void)fem(MultiVector(2, 2), ref, inst); });
  }

  TEST_CASE("Lagrangian gap at the dual optimum equals the Bregman distance") {
    oracle::Gen gen(6);
    const ObjectiveInstance inst = generate_least_squares(4, 3, 3, 0.5, 0.5, 21);
    const ReferenceSolution ref = solve_reference(inst);
    const MultiVector star = MultiVector::consensus(4, ref.x_star);
    const double at_star = lagrangian(star, ref.y_star, inst);
    for (int trial = 0; trial < 10; ++trial) {
      const MultiVector x = gen.multi(4, 3);
      const double gap = lagrangian(x, ref.y_star, inst) - at_star;
      CHECK(std::abs(gap - bregman(x, ref, inst)) <= 1e-9 * (1.0 + gap));
      // Saddle inequalities against arbitrary dual points in the complement.
      const MultiVector y = gen.multi(4, 3).centered();
      CHECK(lagrangian(star, y, inst) <= at_star + 1e-9);
      CHECK(at_star <= lagrangian(x, ref.y_star, inst) + 1e-9);
    }
    expect_error(ErrorCode::kInvalidParameter,
                 [&] { (void)lagrangian(star, MultiVector(4, 3, 1.0), inst); });
  }

  TEST_CASE("certified upper bound") {
    CHECK(certified_upper_bound(10, 0.5, 0.5, 0.0, 1.0, 0.0) == 0.0);
    const double b10 = certified_upper_bound(10, 0.1, 0.2, 3.0, 0.5, 2.0);
    const double b20 = certified_upper_bound(20, 0.1, 0.2, 3.0, 0.5, 2.0);
    CHECK(std::abs(b10 - (2.0 * 3.0 / 0.1 + 2.0 * 2.0 / (0.2 * 0.5)) / 100.0) <= 1e-12);
    CHECK(std::abs(b10 / b20 - 4.0) <= 1e-12);
    expect_error(ErrorCode::kInvalidParameter, [] { (void)certified_upper_bound(1, 0.1, 0.1, 1.0, 1.0, 1.0); });
    expect_error(ErrorCode::kInvalidParameter, [] { (void)certified_upper_bound(5, 0.0, 0.1, 1.0, 1.0, 1.0); });
    expect_error(ErrorCode::kInvalidParameter, [] { (void)certified_upper_bound(5, 0.1, 0.1, 1.0, 0.0, 1.0); });
  }

  TEST_CASE("averaged upper bound") {
    const double b = averaged_upper_bound(11, 0.5, 0.25, 2.0, 0.5, 1.0);
    CHECK(std::abs(b - (2.0 / 1.0 + 1.0 / 0.25) / 10.0) <= 1e-14);
    expect_error(ErrorCode::kInvalidParameter, [] { (void)averaged_upper_bound(1, 0.1, 0.1, 1.0, 1.0, 1.0); });
  }

  TEST_CASE("lower-bound curve is finite and nonincreasing") {
    CHECK(std::isfinite(lower_bound_curve(0.0, 1.0, 1.0, 1.0, 0.01, 1.0)));
    CHECK(lower_bound_curve(0.0, 2.0, 3.0, 0.5, 0.04, 1.0) == doctest::Approx(2.0 * 9.0 / 4.0 + 3.0 * 0.5 / 2.0));
    double prev = lower_bound_curve(0.0, 1.0, 1.0, 1.0, 0.01, 2.0);
    for (double t = 1.0; t < 1e5; t *= 1.7) {
      const double v = lower_bound_curve(t, 1.0, 1.0, 1.0, 0.01, 2.0);
      CHECK(v <= prev);
      CHECK(v > 0.0);
      prev = v;
    }
    // eta = 0.04: ceil(1/(5*0.2)) = 1 round per step, so t = 2 (tau_c = 1) gives s = 1.
    CHECK(lower_bound_curve(2.0, 1.0, 1.0, 0.0, 0.04, 1.0) == doctest::Approx(1.0 / 9.0));
    expect_error(ErrorCode::kInvalidEigengap, [] { (void)lower_bound_curve(1.0, 1.0, 1.0, 1.0, 0.0, 1.0); });
  }

  TEST_CASE("hard-instance floor") {
    CHECK(hard_instance_floor(5, 1, 8.0, 5.0) == 0.0);
    CHECK(hard_instance_floor(5, 1, 8.0, 9.0) == 0.0);
    CHECK(std::abs(hard_instance_floor(3, 2, 8.0, 1.0) - 2.0 * 2.0 / 16.0) <= 1e-15);
    for (int k = 1; k <= 40; ++k) {
      const double lf = 1.3;
      // With 2k+1 coupled coordinates and support k the floor is Lf / (32 (k+1)).
      CHECK(std::abs(hard_instance_floor(2 * k + 1, 1, lf, k) - lf / (32.0 * (k + 1))) <= 1e-15);
    }
  }

  TEST_CASE("hard-instance floor bounds G on restricted stacks") {
    // Any stack supported on the first j coordinates has G >= floor(k, 1, Lf, j).
    oracle::Gen gen(19);
    const int k = 6;
    const double lf = 2.0;
    const ObjectiveInstance inst = generate_hard_two_agent(k, 2 * k + 1, lf);
    const ReferenceSolution ref = solve_reference(inst);
    for (int j = 0; j <= k; ++j) {
      for (int trial = 0; trial < 20; ++trial) {
        MultiVector x(2, inst.dim());
        for (std::size_t i = 0; i < 2; ++i) {
          for (int c = 0; c < j; ++c) x(i, static_cast<std::size_t>(c)) = ref.x_star[static_cast<std::size_t>(c)] + 0.3 * gen.normal();
        }
        CHECK(bregman(x, ref, inst) >= hard_instance_floor(k, 1, lf, j) - 1e-14);
        CHECK(bregman(x, ref, inst) >= hard_restricted_optimum(k, j, lf) - ref.f_star - 1e-14);
      }
    }
  }
}
