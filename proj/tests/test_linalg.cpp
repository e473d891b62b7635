// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "doctest.h"
#include "optra/error.hpp"
#include "optra/linalg.hpp"
#include "oracles.hpp"

using namespace optra;

namespace {

void check_decomposition(const DenseSym& m, const EigenDecomposition& eig) {
  const std::size_t n = m.size();
  oracle::Dense q = oracle::zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i][j] = eig.vectors(i, j);
  }
  const oracle::Dense qtq = oracle::matmul(oracle::transpose(q), q);
  double ortho = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ortho = std::max(ortho, std::abs(qtq[i][j] - (i == j ? 1.0 : 0.0)));
  }
  CHECK(ortho <= 1e-10);

  oracle::Dense lam = oracle::zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) lam[i][i] = eig.values[i];
  const oracle::Dense rec = oracle::matmul(oracle::matmul(q, lam), oracle::transpose(q));
  CHECK(oracle::max_abs_diff(rec, oracle::to_dense(m)) <= 1e-8 * (1.0 + m.inf_norm()));

  for (std::size_t i = 1; i < n; ++i) CHECK(eig.values[i - 1] <= eig.values[i]);
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("eigenvalues of the identity") {
    const EigenDecomposition eig = jacobi_eigen(DenseSym::identity(3), 1e-12);
    REQUIRE(eig.values.size() == 3);
    for (double v : eig.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("2x2 Laplacian eigenpairs") {
    const DenseSym m(2, {1.0, -1.0, -1.0, 1.0});
    const EigenDecomposition eig = jacobi_eigen(m, 1e-14);
    CHECK(std::abs(eig.values[0]) <= 1e-14);
    CHECK(std::abs(eig.values[1] - 2.0) <= 1e-14);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(eig.vectors(0, 0)) - s) <= 1e-12);
    CHECK(std::abs(eig.vectors(0, 0) - eig.vectors(1, 0)) <= 1e-12);
    CHECK(std::abs(eig.vectors(0, 1) + eig.vectors(1, 1)) <= 1e-12);
  }

  TEST_CASE("path Laplacian m=4 matches 2-2cos(k pi/4)") {
    const auto edges = std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {2, 3}};
    const DenseSym l = oracle::to_sym(oracle::laplacian(4, edges));
    const EigenDecomposition eig = jacobi_eigen(l, 1e-8);
    const auto expected = oracle::path_spectrum(4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(eig.values[k] - expected[k]) <= 1e-8);
  }

  TEST_CASE("off-diagonal mass after rotation is within tol") {
    oracle::Gen gen(99);
    const DenseSym m = oracle::to_sym(gen.symmetric(12));
    const double tol = 1e-9;
    const EigenDecomposition eig = jacobi_eigen(m, tol);
    // Q^T M Q should be diagonal up to tol in Frobenius norm.
    oracle::Dense q = oracle::zeros(12, 12);
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = 0; j < 12; ++j) q[i][j] = eig.vectors(i, j);
    }
    const oracle::Dense rot = oracle::matmul(oracle::matmul(oracle::transpose(q), oracle::to_dense(m)), q);
    double off = 0.0;
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = 0; j < 12; ++j) {
        if (i != j) off += rot[i][j] * rot[i][j];
      }
    }
    CHECK(std::sqrt(off) <= tol + 1e-12);
  }

  TEST_CASE("decomposition bounds for random matrices up to n=64") {
    oracle::Gen gen(2024);
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u, 31u, 64u}) {
      CAPTURE(n);
      const DenseSym m = oracle::to_sym(gen.symmetric(n));
      check_decomposition(m, jacobi_eigen(m));
    }
  }

  TEST_CASE("non-finite entries are rejected") {
    DenseSym m(2);
    m.set(0, 1, std::numeric_limits<double>::quiet_NaN());
    try {
      (void)jacobi_eigen(m);
      FAIL("expected InvalidMatrix");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidMatrix);
    }
    CHECK_THROWS_AS(DenseSym(2, {1.0, std::numeric_limits<double>::infinity(), 0.0, 1.0}), Error);
  }

  TEST_CASE("asymmetric construction is rejected") {
    try {
      DenseSym(2, {1.0, 2.0, 3.0, 1.0});
      FAIL("expected InvalidMatrix");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidMatrix);
    }
  }

  TEST_CASE("apply: identity, averaging, naive oracle") {
    oracle::Gen gen(7);
    const MultiVector x = gen.multi(5, 3);
    CHECK(oracle::max_abs_diff(apply(DenseSym::identity(5), x), x) == 0.0);

    const MultiVector avg = apply(DenseSym::averaging(5), x);
    const Vector mean = x.mean();
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(avg(i, j) - mean[j]) <= 1e-14);
    }

    const oracle::Dense ms = gen.symmetric(5);
    const MultiVector got = apply(oracle::to_sym(ms), x);
    const oracle::Dense want = oracle::matmul(ms, oracle::to_dense(x));
    CHECK(oracle::max_abs_diff(oracle::to_dense(got), want) <= 1e-12);
  }

  TEST_CASE("apply rejects shape mismatch") {
    try {
      (void)apply(DenseSym::identity(3), MultiVector(4, 2));
      FAIL("expected ShapeError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kShapeError);
    }
  }

  TEST_CASE("apply is linear") {
    oracle::Gen gen(31);
    for (int trial = 0; trial < 20; ++trial) {
      const DenseSym m = oracle::to_sym(gen.symmetric(6));
      const MultiVector x = gen.multi(6, 4);
      const MultiVector y = gen.multi(6, 4);
      const double a = gen.normal();
      const double b = gen.normal();
      const MultiVector lhs = apply(m, a * x + b * y);
      const MultiVector rhs = a * apply(m, x) + b * apply(m, y);
      CHECK(oracle::max_abs_diff(lhs, rhs) <= 1e-12);
    }
  }

  TEST_CASE("Laplacian annihilates consensual stacks") {
    oracle::Gen gen(5);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t m = 3 + gen.index(10);
      const DenseSym l = oracle::to_sym(oracle::laplacian(m, gen.connected_edges(m, 0.3)));
      const MultiVector x = MultiVector::consensus(m, gen.vec(5));
      const MultiVector lx = apply(l, x);
      for (double v : lx.data()) CHECK(std::abs(v) <= 1e-12);
    }
  }

  TEST_CASE("Frobenius inner product and norm") {
    const MultiVector ones(2, 3, 1.0);
    CHECK(frobenius_inner(ones, ones) == 6.0);
    CHECK(frobenius_norm(ones) == doctest::Approx(std::sqrt(6.0)));

    oracle::Gen gen(11);
    const MultiVector x = gen.multi(4, 5);
    const MultiVector y = gen.multi(4, 5);
    CHECK(frobenius_inner(x, y) == frobenius_inner(y, x));

    for (int i = 0; i < 100; ++i) {
      const MultiVector a = gen.multi(3, 4);
      const MultiVector b = gen.multi(3, 4);
      CHECK(std::abs(frobenius_inner(a, b)) <= frobenius_norm(a) * frobenius_norm(b) * (1 + 1e-15));
    }

    try {
      (void)frobenius_inner(MultiVector(2, 3), MultiVector(3, 2));
      FAIL("expected ShapeError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kShapeError);
    }
  }

  TEST_CASE("centering and column sums") {
    oracle::Gen gen(3);
    const MultiVector x = gen.multi(6, 2);
    const Vector cs = x.centered().column_sums();
    for (double v : cs) CHECK(std::abs(v) <= 1e-13);
  }

  TEST_CASE("pseudo_solve returns the minimum-norm solution") {
    // Rank-1 system: [[1,1],[1,1]] x = [2,2] -> min-norm x = (1,1).
    const DenseSym h(2, {1.0, 1.0, 1.0, 1.0});
    const Vector b{2.0, 2.0};
    const Vector x = pseudo_solve(h, b);
    CHECK(std::abs(x[0] - 1.0) <= 1e-12);
    CHECK(std::abs(x[1] - 1.0) <= 1e-12);
  }

  TEST_CASE("cholesky_solve agrees with elimination") {
    oracle::Gen gen(8);
    const oracle::Dense a = gen.matrix(8, 5);
    const oracle::Dense ata = oracle::matmul(oracle::transpose(a), a);
    const Vector b = gen.vec(5);
    Vector x;
    REQUIRE(cholesky_solve(oracle::to_sym(ata), b, x));
    const std::vector<double> ref = oracle::solve(ata, b);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(x[i] - ref[i]) <= 1e-9 * (1 + std::abs(ref[i])));
  }
}
