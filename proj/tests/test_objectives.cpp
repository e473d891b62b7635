// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "optra/error.hpp"
#include "optra/objectives.hpp"
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

std::vector<double> central_difference(const ObjectiveInstance& inst, std::size_t agent,
                                       const std::vector<double>& x, double h) {
  std::vector<double> g(x.size());
  std::vector<double> p = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    p[j] = x[j] + h;
    const double fp = inst.local_value(agent, p);
    p[j] = x[j] - h;
    const double fm = inst.local_value(agent, p);
    p[j] = x[j];
    g[j] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto dir = std::filesystem::temp_directory_path() / "optra_objective_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << body;
  return path;
}

ObjectiveInstance noisy_logistic(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t d) {
  oracle::Gen gen(seed);
  std::vector<LocalTerm> terms;
  double lf = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    LogisticTerm t{Matrix(n, d), Vector(n)};
    for (std::size_t r = 0; r < n; ++r) {
      double score = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        t.u(r, c) = gen.normal();
        score += t.u(r, c) * (c % 2 == 0 ? 1.0 : -0.5);
      }
      t.labels[r] = score + 1.5 * gen.normal() > 0.0 ? 1.0 : -1.0;
    }
    oracle::Dense u = oracle::zeros(n, d);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < d; ++c) u[r][c] = t.u(r, c);
    }
    const DenseSym gram = oracle::to_sym(oracle::matmul(oracle::transpose(u), u));
    lf = std::max(lf, 0.25 * jacobi_eigen(gram).values.back());
    terms.emplace_back(std::move(t));
  }
  return ObjectiveInstance(ObjectiveKind::kLogistic, d, std::move(terms), lf);
}

}  // namespace

TEST_SUITE("objectives") {
  TEST_CASE("least-squares gradient at zero is -2 A^T b") {
    const ObjectiveInstance inst = generate_least_squares(3, 4, 5, 0.5, 0.1, 11);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& ls = std::get<LeastSquaresTerm>(inst.term(i));
      std::vector<double> want(5, 0.0);
      for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 5; ++c) want[c] -= 2.0 * ls.a(r, c) * ls.b[r];
      }
      CHECK(max_diff(inst.local_gradient(i, std::vector<double>(5, 0.0)), want) <= 1e-12);
    }
  }

  TEST_CASE("logistic gradient at zero is -1/2 sum y u") {
    const ObjectiveInstance inst = noisy_logistic(5, 2, 7, 3);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& lg = std::get<LogisticTerm>(inst.term(i));
      std::vector<double> want(3, 0.0);
      for (std::size_t r = 0; r < 7; ++r) {
        for (std::size_t c = 0; c < 3; ++c) want[c] -= 0.5 * lg.labels[r] * lg.u(r, c);
      }
      CHECK(max_diff(inst.local_gradient(i, std::vector<double>(3, 0.0)), want) <= 1e-14);
      CHECK(std::abs(inst.local_value(i, std::vector<double>(3, 0.0)) - 7.0 * std::log(2.0)) <= 1e-12);
    }
  }

  TEST_CASE("gradients agree with central differences") {
    oracle::Gen gen(21);
    const std::vector<ObjectiveInstance> instances{
        generate_least_squares(3, 4, 6, 0.9, 0.5, 2), noisy_logistic(9, 3, 10, 6),
        generate_hard_two_agent(2, 6, 3.0), generate_hard_line(8, 2, 6, 2.0, 0.2),
        make_zero_objective(2, 6)};
    for (const auto& inst : instances) {
      CAPTURE(to_string(inst.kind()));
      for (std::size_t i = 0; i < inst.agents(); ++i) {
        const std::vector<double> x = gen.vec(6);
        const std::vector<double> g = inst.local_gradient(i, x);
        const std::vector<double> fd = central_difference(inst, i, x, 1e-5);
        double scale = 1.0;
        for (double v : g) scale = std::max(scale, std::abs(v));
        CHECK(max_diff(g, fd) <= 1e-6 * scale);
      }
    }
  }

  TEST_CASE("bad agent index and wrong dimension") {
    const ObjectiveInstance inst = generate_least_squares(2, 3, 4, 0.0, 0.0, 1);
    expect_error(ErrorCode::kIndexError, [&] { (void)inst.local_gradient(2, std::vector<double>(4)); });
    expect_error(ErrorCode::kIndexError, [&] { (void)inst.local_value(9, std::vector<double>(4)); });
    expect_error(ErrorCode::kShapeError, [&] { (void)inst.local_value(0, std::vector<double>(3)); });
    expect_error(ErrorCode::kShapeError, [&] { (void)inst.gradient(MultiVector(3, 4)); });
  }

  TEST_CASE("generator with omega = 0 has identity sample covariance") {
    const std::size_t m = 40;
    const std::size_t r = 250;
    const std::size_t d = 4;
    const ObjectiveInstance inst = generate_least_squares(m, r, d, 0.0, 0.0, 3);
    oracle::Dense cov = oracle::zeros(d, d);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = std::get<LeastSquaresTerm>(inst.term(i)).a;
      for (std::size_t row = 0; row < r; ++row) {
        for (std::size_t p = 0; p < d; ++p) {
          for (std::size_t q = 0; q < d; ++q) cov[p][q] += a(row, p) * a(row, q);
        }
      }
    }
    const double n = static_cast<double>(m * r);
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = 0; q < d; ++q) CHECK(std::abs(cov[p][q] / n - (p == q ? 1.0 : 0.0)) <= 0.05);
    }
  }

  TEST_CASE("generator columns follow a stationary AR(1) profile") {
    const double omega = 0.8;
    const ObjectiveInstance inst = generate_least_squares(40, 250, 3, omega, 0.0, 4);
    double v0 = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    double c01 = 0.0;
    double n = 0.0;
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      const auto& a = std::get<LeastSquaresTerm>(inst.term(i)).a;
      for (std::size_t row = 0; row < a.rows(); ++row) {
        v0 += a(row, 0) * a(row, 0);
        v1 += a(row, 1) * a(row, 1);
        v2 += a(row, 2) * a(row, 2);
        c01 += a(row, 0) * a(row, 1);
        n += 1.0;
      }
    }
    const double stationary = 1.0 / (1.0 - omega * omega);
    CHECK(std::abs(v0 / n / stationary - 1.0) <= 0.06);
    CHECK(std::abs(v2 / n / stationary - 1.0) <= 0.06);
    CHECK(std::abs(c01 / std::sqrt(v0 * v1) - omega) <= 0.04);
  }

  TEST_CASE("generator is deterministic and validates omega") {
    CHECK(generate_least_squares(3, 2, 4, 0.5, 0.2, 99).fingerprint() ==
          generate_least_squares(3, 2, 4, 0.5, 0.2, 99).fingerprint());
    CHECK(generate_least_squares(3, 2, 4, 0.5, 0.2, 99).fingerprint() !=
          generate_least_squares(3, 2, 4, 0.5, 0.2, 100).fingerprint());
    expect_error(ErrorCode::kInvalidParameter, [] { (void)generate_least_squares(2, 2, 2, 1.0, 0.0, 1); });
    expect_error(ErrorCode::kInvalidParameter, [] { (void)generate_least_squares(2, 2, 2, -0.1, 0.0, 1); });
    expect_error(ErrorCode::kInvalidSize, [] { (void)generate_least_squares(0, 2, 2, 0.1, 0.0, 1); });
  }

  TEST_CASE("smoothness constant is the largest local Hessian eigenvalue") {
    const ObjectiveInstance inst = generate_least_squares(4, 3, 5, 0.7, 0.1, 8);
    double lf = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& a = std::get<LeastSquaresTerm>(inst.term(i)).a;
      oracle::Dense ad = oracle::zeros(3, 5);
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 5; ++c) ad[r][c] = a(r, c);
      }
      const double li = 2.0 * jacobi_eigen(oracle::to_sym(oracle::matmul(oracle::transpose(ad), ad))).values.back();
      CHECK(std::abs(inst.local_smoothness(i) - li) <= 1e-9 * li);
      lf = std::max(lf, li);
    }
    CHECK(std::abs(inst.lf() - lf) <= 1e-9 * lf);
  }

  TEST_CASE("sampled smoothness and convexity") {
    oracle::Gen gen(44);
    const std::vector<ObjectiveInstance> instances{generate_least_squares(3, 4, 5, 0.5, 0.3, 1),
                                                   noisy_logistic(2, 3, 8, 5),
                                                   generate_hard_two_agent(2, 5, 1.0)};
    for (const auto& inst : instances) {
      for (int trial = 0; trial < 50; ++trial) {
        const std::size_t i = gen.index(inst.agents());
        const std::vector<double> x = gen.vec(5);
        const std::vector<double> z = gen.vec(5);
        const std::vector<double> gx = inst.local_gradient(i, x);
        const std::vector<double> gz = inst.local_gradient(i, z);
        double dg = 0.0;
        double dx = 0.0;
        for (std::size_t j = 0; j < 5; ++j) {
          dg += (gx[j] - gz[j]) * (gx[j] - gz[j]);
          dx += (x[j] - z[j]) * (x[j] - z[j]);
        }
        CHECK(std::sqrt(dg) <= inst.local_smoothness(i) * std::sqrt(dx) * (1.0 + 1e-9));
        const double br = inst.local_bregman(i, x, z, gz);
        CHECK(br >= -1e-12);
        double lin = 0.0;
        for (std::size_t j = 0; j < 5; ++j) lin += gz[j] * (x[j] - z[j]);
        const double direct = inst.local_value(i, x) - inst.local_value(i, z) - lin;
        CHECK(std::abs(br - direct) <= 1e-9 * (1.0 + std::abs(inst.local_value(i, x))));
        CHECK(br <= 0.5 * inst.local_smoothness(i) * dx * (1.0 + 1e-9) + 1e-12);
      }
    }
  }

  TEST_CASE("two-agent hard instance k=1, Lf=8") {
    const ObjectiveInstance inst = generate_hard_two_agent(1, 3, 8.0);
    const ReferenceSolution ref = solve_reference(inst);
    CHECK(std::abs(ref.x_star[0] - 0.5) <= 1e-15);
    CHECK(ref.x_star[1] == 0.0);
    CHECK(ref.x_star[2] == 0.0);
    CHECK(std::abs(ref.f_star + 0.5) <= 1e-15);
    CHECK(std::abs(inst.global_value(ref.x_star) + 0.5) <= 1e-15);
  }

  TEST_CASE("two-agent hard instance k=2") {
    const ObjectiveInstance inst = generate_hard_two_agent(2, 5, 8.0);
    const ReferenceSolution ref = solve_reference(inst);
    CHECK(std::abs(ref.x_star[0] - 2.0 / 3.0) <= 1e-15);
    CHECK(std::abs(ref.x_star[1] - 1.0 / 3.0) <= 1e-15);
    for (std::size_t j = 2; j < 5; ++j) CHECK(ref.x_star[j] == 0.0);
  }

  TEST_CASE("hard instance matches the split-matrix oracle") {
    for (int k = 1; k <= 7; ++k) {
      const std::size_t d = 2 * static_cast<std::size_t>(k) + 3;
      const double lf = 2.5;
      const ObjectiveInstance inst = generate_hard_two_agent(k, d, lf);
      for (int a = 0; a < 2; ++a) {
        const auto& q = std::get<QuadraticTerm>(inst.term(static_cast<std::size_t>(a)));
        const oracle::Dense want = oracle::hard_split(k, d, a == 0);
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c < d; ++c) CHECK(q.h(r, c) == doctest::Approx(lf / 4.0 * want[r][c]));
          CHECK(q.c[r] == (a == 0 && r == 0 ? -lf / 4.0 : 0.0));
        }
      }
      // The global Hessian restricted to the first k coordinates is (Lf/4) tridiag(-1, 2, -1).
      const ReferenceSolution ref = solve_reference(inst);
      const Vector g = inst.global_gradient(ref.x_star);
      for (double v : g) CHECK(std::abs(v) <= 1e-14);
      CHECK(std::abs(ref.f_star - hard_optimum(k, lf)) <= 1e-15);
      CHECK(std::abs(inst.global_value(ref.x_star) - ref.f_star) <= 1e-14);
    }
  }

  TEST_CASE("hard gradient norm at the optimum") {
    for (int k = 1; k <= 9; ++k) {
      const ObjectiveInstance inst = generate_hard_two_agent(k, 2 * k + 1, 3.0);
      const ReferenceSolution ref = solve_reference(inst);
      CHECK(std::abs(frobenius_norm(ref.grad_at_star) - hard_gradient_norm(k, 3.0)) <= 1e-13);
      CHECK(std::abs(hard_gradient_norm(k, 3.0) - std::sqrt(2.0 * k) * 3.0 / (4.0 * (k + 1))) <= 1e-15);
    }
  }

  TEST_CASE("restricted optimum matches a brute-force solve") {
    const double lf = 1.7;
    for (int k = 1; k <= 8; ++k) {
      const std::size_t d = 2 * static_cast<std::size_t>(k) + 1;
      const ObjectiveInstance inst = generate_hard_two_agent(k, d, lf);
      const ReferenceSolution ref = solve_reference(inst);
      for (int j = 0; j <= k + 2; ++j) {
        CAPTURE(k);
        CAPTURE(j);
        // Each row is minimized independently over its first j coordinates;
        // the linear terms <g_i, x*> cancel because the g_i sum to zero.
        double total = 0.0;
        const auto jj = static_cast<std::size_t>(std::min<int>(j, static_cast<int>(d)));
        for (int a = 0; a < 2 && jj > 0; ++a) {
          const oracle::Dense split = oracle::hard_split(k, d, a == 0);
          oracle::Dense h = oracle::zeros(jj, jj);
          std::vector<double> b(jj);
          for (std::size_t r = 0; r < jj; ++r) {
            for (std::size_t c = 0; c < jj; ++c) h[r][c] = lf / 4.0 * split[r][c] + (r == c ? 1e-12 : 0.0);
            const double lin = (a == 0 && r == 0 ? -lf / 4.0 : 0.0) - ref.grad_at_star(static_cast<std::size_t>(a), r);
            b[r] = -lin;
          }
          const std::vector<double> x = oracle::solve(h, b);
          for (std::size_t r = 0; r < jj; ++r) total -= 0.5 * b[r] * x[r];
        }
        CHECK(std::abs(hard_restricted_optimum(k, j, lf) - total) <= 1e-9);
      }
      CHECK(hard_restricted_optimum(k, k, lf) == doctest::Approx(hard_optimum(k, lf)).epsilon(1e-14));
    }
  }

  TEST_CASE("hard instances need 2k+1 <= d") {
    expect_error(ErrorCode::kDimensionTooSmall, [] { (void)generate_hard_two_agent(3, 6, 1.0); });
    expect_error(ErrorCode::kDimensionTooSmall, [] { (void)generate_hard_line(10, 5, 10, 1.0, 0.1); });
    expect_error(ErrorCode::kInvalidParameter, [] { (void)generate_hard_two_agent(0, 6, 1.0); });
    expect_error(ErrorCode::kInvalidParameter, [] { (void)generate_hard_two_agent(1, 6, 0.0); });
    CHECK_NOTHROW((void)generate_hard_two_agent(3, 7, 1.0));
  }

  TEST_CASE("hard line instance layout") {
    const ObjectiveInstance inst = generate_hard_line(64, 10, 25, 1.0);
    REQUIRE(inst.hard_info().has_value());
    CHECK(inst.hard_info()->group_size == 2);
    CHECK(inst.hard_info()->k == 10);
    for (std::size_t i = 0; i < 64; ++i) {
      const bool first = i < 2;
      const bool second = i >= 62;
      if (first || second) {
        const auto& q = std::get<QuadraticTerm>(inst.term(i));
        CHECK(q.c[0] == (first ? -0.25 : 0.0));
      } else {
        CHECK(std::holds_alternative<ZeroTerm>(inst.term(i)));
      }
    }
    const ReferenceSolution ref = solve_reference(inst);
    CHECK(std::abs(ref.f_star - 2.0 * hard_optimum(10, 1.0)) <= 1e-15);
    for (double v : ref.grad_at_star.column_sums()) CHECK(std::abs(v) <= 1e-14);
    expect_error(ErrorCode::kInvalidSize, [] { (void)generate_hard_line(3, 1, 3, 1.0, 0.49); });
    expect_error(ErrorCode::kInvalidParameter, [] { (void)generate_hard_line(10, 1, 3, 1.0, 0.5); });
    expect_error(ErrorCode::kInvalidSize, [] { (void)generate_hard_line(2, 1, 3, 1.0, 0.1); });
  }

  TEST_CASE("alternating progress on the hard split") {
    // A stack supported on the first j coordinates can only reach coordinate j
    // through one of the two halves: the first for even j, the second for odd j.
    oracle::Gen gen(6);
    const int k = 9;
    const std::size_t d = 2 * k + 1;
    const ObjectiveInstance inst = generate_hard_two_agent(k, d, 1.0);
    for (int j = 0; j < k; ++j) {
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> x(d, 0.0);
        for (int c = 0; c < j; ++c) x[static_cast<std::size_t>(c)] = gen.normal();
        const std::vector<double> g1 = inst.local_gradient(0, x);
        const std::vector<double> g2 = inst.local_gradient(1, x);
        for (std::size_t c = static_cast<std::size_t>(j) + 1; c < d; ++c) {
          CHECK(g1[c] == 0.0);
          CHECK(g2[c] == 0.0);
        }
        const auto jj = static_cast<std::size_t>(j);
        if (j % 2 == 0) {
          CHECK(g1[jj] != 0.0);
          CHECK(g2[jj] == 0.0);
        } else {
          CHECK(g1[jj] == 0.0);
          CHECK(g2[jj] != 0.0);
        }
      }
    }
  }

  TEST_CASE("least-squares reference without noise interpolates") {
    const ObjectiveInstance inst = generate_least_squares(5, 4, 6, 0.5, 0.0, 13);
    const ReferenceSolution ref = solve_reference(inst);
    double bb = 0.0;
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      for (double v : std::get<LeastSquaresTerm>(inst.term(i)).b) bb += v * v;
    }
    CHECK(ref.f_star >= 0.0);
    CHECK(ref.f_star <= 1e-20 * bb);
    for (double v : ref.grad_at_star.column_sums()) CHECK(std::abs(v) <= 1e-9);
  }

  TEST_CASE("least-squares reference solves the normal equations") {
    const ObjectiveInstance inst = generate_least_squares(4, 5, 6, 0.9, 0.7, 17);
    oracle::Dense ata = oracle::zeros(6, 6);
    std::vector<double> atb(6, 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& ls = std::get<LeastSquaresTerm>(inst.term(i));
      for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t p = 0; p < 6; ++p) {
          atb[p] += ls.a(r, p) * ls.b[r];
          for (std::size_t q = 0; q < 6; ++q) ata[p][q] += ls.a(r, p) * ls.a(r, q);
        }
      }
    }
    const std::vector<double> want = oracle::solve(ata, atb);
    const ReferenceSolution ref = solve_reference(inst);
    for (std::size_t j = 0; j < 6; ++j) CHECK(std::abs(ref.x_star[j] - want[j]) <= 1e-7 * (1.0 + std::abs(want[j])));
    for (double v : ref.grad_at_star.column_sums()) CHECK(std::abs(v) <= 1e-7);
    const MultiVector neg = -1.0 * ref.grad_at_star;
    CHECK(oracle::max_abs_diff(ref.y_star, neg) == 0.0);
  }

  TEST_CASE("rank-deficient least squares picks the minimum-norm solution") {
    // Two agents, one row each, d = 3: the solution set is an affine subspace.
    std::vector<LocalTerm> terms;
    LeastSquaresTerm t1{Matrix(1, 3), Vector{1.0}};
    t1.a(0, 0) = 1.0;
    t1.a(0, 1) = 1.0;
    LeastSquaresTerm t2{Matrix(1, 3), Vector{2.0}};
    t2.a(0, 2) = 1.0;
    terms.emplace_back(t1);
    terms.emplace_back(t2);
    const ObjectiveInstance inst(ObjectiveKind::kLeastSquares, 3, std::move(terms), 4.0);
    const ReferenceSolution ref = solve_reference(inst);
    CHECK(std::abs(ref.x_star[0] - 0.5) <= 1e-12);
    CHECK(std::abs(ref.x_star[1] - 0.5) <= 1e-12);
    CHECK(std::abs(ref.x_star[2] - 2.0) <= 1e-12);
  }

  TEST_CASE("logistic reference is a stationary point") {
    const ObjectiveInstance inst = noisy_logistic(31, 4, 30, 4);
    const ReferenceSolution ref = solve_reference(inst);
    const Vector g = inst.global_gradient(ref.x_star);
    const double g0 = norm2(inst.global_gradient(Vector(4, 0.0)));
    CHECK(norm2(g) <= 1e-10 * std::max(1.0, g0));
    oracle::Gen gen(1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> z = ref.x_star;
      for (double& v : z) v += 0.1 * gen.normal();
      CHECK(inst.global_value(z) >= ref.f_star - 1e-12);
    }
  }

  TEST_CASE("zero objective") {
    const ObjectiveInstance inst = make_zero_objective(3, 2);
    const ReferenceSolution ref = solve_reference(inst);
    CHECK(ref.f_star == 0.0);
    CHECK(ref.x_star == Vector{0.0, 0.0});
    CHECK(inst.lf() == 0.0);
  }

  TEST_CASE("CSV loader splits rows evenly and maps labels") {
    const auto path = write_temp("even.csv",
                                 "f1,label,f2\n"
                                 "1,0,2\n"
                                 "3,1,4\n"
                                 "5,1,6\n"
                                 "7,0,8\n"
                                 "9,1,10\n");
    const ObjectiveInstance inst = load_csv_dataset(path.string(), "label", 2, false);
    CHECK(inst.agents() == 2);
    CHECK(inst.dim() == 2);
    const auto& a0 = std::get<LogisticTerm>(inst.term(0));
    const auto& a1 = std::get<LogisticTerm>(inst.term(1));
    CHECK(a0.u.rows() == 3);
    CHECK(a1.u.rows() == 2);
    CHECK(a0.u(0, 0) == 1.0);
    CHECK(a0.u(0, 1) == 2.0);
    CHECK(a1.u(1, 1) == 10.0);
    CHECK(a0.labels == Vector{-1.0, 1.0, 1.0});
    CHECK(a1.labels == Vector{-1.0, 1.0});
  }

  TEST_CASE("CSV loader min-max rescales features") {
    const auto path = write_temp("scale.csv", "y,a,b\n1,2,5\n-1,4,5\n1,3,5\n");
    const ObjectiveInstance inst = load_csv_dataset(path.string(), "y", 1);
    const auto& t = std::get<LogisticTerm>(inst.term(0));
    CHECK(t.u(0, 0) == 0.0);
    CHECK(t.u(1, 0) == 1.0);
    CHECK(t.u(2, 0) == 0.5);
    for (std::size_t r = 0; r < 3; ++r) CHECK(t.u(r, 1) == 0.0);
    CHECK(t.labels == Vector{1.0, -1.0, 1.0});
  }

  TEST_CASE("single-sample dataset has Lf = 1/4") {
    const auto path = write_temp("single.csv", "x1,x2,label\n1,0,1\n");
    const ObjectiveInstance inst = load_csv_dataset(path.string(), "label", 1, false);
    CHECK(std::abs(inst.lf() - 0.25) <= 1e-15);
    CHECK(std::abs(inst.local_smoothness(0) - 0.25) <= 1e-15);
  }

  TEST_CASE("CSV loader errors") {
    const auto bad = write_temp("bad.csv", "a,label\n1,0\n2\n");
    try {
      (void)load_csv_dataset(bad.string(), "label", 1);
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParseError);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    const auto nonnum = write_temp("nonnum.csv", "a,label\n1,0\nx,1\n");
    expect_error(ErrorCode::kParseError, [&] { (void)load_csv_dataset(nonnum.string(), "label", 1); });
    const auto labels = write_temp("labels.csv", "a,label\n1,0\n2,2\n");
    expect_error(ErrorCode::kLabelError, [&] { (void)load_csv_dataset(labels.string(), "label", 1); });
    expect_error(ErrorCode::kParseError, [&] { (void)load_csv_dataset(labels.string(), "target", 1); });
    expect_error(ErrorCode::kInvalidSize, [&] { (void)load_csv_dataset(labels.string(), "label", 5); });
    expect_error(ErrorCode::kIoError, [] { (void)load_csv_dataset("/nonexistent/data.csv", "label", 1); });
  }

  TEST_CASE("fingerprint separates instances") {
    CHECK(generate_hard_two_agent(2, 5, 1.0).fingerprint() != generate_hard_two_agent(2, 6, 1.0).fingerprint());
    CHECK(generate_hard_two_agent(2, 5, 1.0).fingerprint() == generate_hard_two_agent(2, 5, 1.0).fingerprint());
  }
}
