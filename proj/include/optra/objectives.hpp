// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef OPTRA_OBJECTIVES_HPP
#define OPTRA_OBJECTIVES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "optra/linalg.hpp"

namespace optra {

/// f(x) = ||A x - b||^2
struct LeastSquaresTerm {
  Matrix a;
  Vector b;
};

/// f(x) = sum_j log(1 + exp(-label_j * <u_j, x>)), labels in {-1, +1}.
struct LogisticTerm {
  Matrix u;
  Vector labels;
};

/// f(x) = 1/2 x^T H x + <c, x>
struct QuadraticTerm {
  DenseSym h;
  Vector c;
};

struct ZeroTerm {};

using LocalTerm = std::variant<LeastSquaresTerm, LogisticTerm, QuadraticTerm, ZeroTerm>;

enum class ObjectiveKind { kLeastSquares, kLogistic, kHardTwoAgent, kHardLine, kZero };

std::string to_string(ObjectiveKind kind);

/// Metadata of the worst-case quadratic split instances.
struct HardInstanceInfo {
  int k = 0;                  // the instance couples the first k coordinates
  double zeta = 0.0;          // 0 for the two-agent instance
  std::size_t group_size = 1; // agents carrying each of the two halves
};

/// Per-agent smooth convex oracles. Agent i owns terms[i].
class ObjectiveInstance {
 public:
  ObjectiveInstance(ObjectiveKind kind, std::size_t dim, std::vector<LocalTerm> terms, double lf);

  ObjectiveKind kind() const noexcept { return kind_; }
  std::size_t agents() const noexcept { return terms_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  /// Global smoothness constant max_i L_i (nominal for hard instances).
  double lf() const noexcept { return lf_; }
  const LocalTerm& term(std::size_t i) const;

  double local_value(std::size_t i, std::span<const double> x) const;
  Vector local_gradient(std::size_t i, std::span<const double> x) const;
  /// Smoothness constant of agent i's term.
  double local_smoothness(std::size_t i) const;

  /// f_i(x) - f_i(z) - <grad_z, x - z>, exact for quadratic terms.
  double local_bregman(std::size_t i, std::span<const double> x, std::span<const double> z,
                       std::span<const double> grad_z) const;

  /// f(x) = sum_i f_i(x_i)
  double value(const MultiVector& x) const;
  /// Row i is grad f_i(x_i).
  MultiVector gradient(const MultiVector& x) const;
  /// F(z) = sum_i f_i(z) at a single point.
  double global_value(std::span<const double> z) const;
  Vector global_gradient(std::span<const double> z) const;

  const std::optional<HardInstanceInfo>& hard_info() const noexcept { return hard_; }
  void set_hard_info(HardInstanceInfo info) { hard_ = info; }

  /// FNV-1a digest of kind, shapes and all payload values.
  std::uint64_t fingerprint() const;

 private:
  void check_agent(std::size_t i) const;

  ObjectiveKind kind_;
  std::size_t dim_;
  std::vector<LocalTerm> terms_;
  double lf_;
  std::optional<HardInstanceInfo> hard_;
};

struct ReferenceSolution {
  Vector x_star;
  double f_star = 0.0;
  MultiVector grad_at_star;  // row i = grad f_i(x*)
  MultiVector y_star;        // -grad_at_star
};

/// A = [A_1; ...; A_m] with m*r rows and d columns. A standard normal matrix Z
/// is drawn row-major, then A(:,0) = Z(:,0)/sqrt(1-omega^2) and
/// A(:,i) = omega A(:,i-1) + Z(:,i); x0 ~ N(0, I_d); b = A x0 + noise_sd * N(0, I).
ObjectiveInstance generate_least_squares(std::size_t m, std::size_t r, std::size_t d,
                                         double omega, double noise_sd, std::uint64_t seed);

/// Every agent holds the zero function; x* = 0.
ObjectiveInstance make_zero_objective(std::size_t m, std::size_t d);

/// Two agents: f_1 = (Lf/8) x^T A_1 x - (Lf/4) x_0, f_2 = (Lf/8) x^T A_2 x, with
/// A_1 + A_2 the k x k tridiagonal Nesterov matrix. Requires 2k+1 <= d.
ObjectiveInstance generate_hard_two_agent(int k, std::size_t d, double lf);

/// Line of m agents: the first ceil(zeta m) carry f_1, the last m - floor((1-zeta) m)
/// carry f_2, everyone in between holds the zero function.
ObjectiveInstance generate_hard_line(std::size_t m, int k, std::size_t d, double lf,
                                     double zeta = 1.0 / 32.0);

/// Normal equations for least squares, damped Newton for logistic, closed
/// forms for hard instances.
ReferenceSolution solve_reference(const ObjectiveInstance& inst);

/// Minimum of f(x) - <grad f(x*), x - x*> for the two-agent hard instance over
/// stacks whose rows are supported on the first j coordinates:
/// 0 for j = 0, -(Lf/8)(k^2 + j)/(k+1)^2 for 1 <= j <= k, and f* once j >= k.
double hard_restricted_optimum(int k, int j, double lf);
/// (Lf/8)(-1 + 1/(k+1))
double hard_optimum(int k, double lf);
/// sqrt(2k) Lf / (4(k+1)) for the two-agent instance.
double hard_gradient_norm(int k, double lf);

/// Logistic regression data from a CSV with a header row. Features are
/// optionally min-max rescaled to [0, 1]; labels {0, 1} map to {-1, +1}.
/// Rows are split in order; the first (n mod m) agents get one extra row.
ObjectiveInstance load_csv_dataset(const std::string& path, const std::string& label_column,
                                   std::size_t m, bool rescale = true);

}  // namespace optra

#endif  // OPTRA_OBJECTIVES_HPP
