// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef OPTRA_ALGORITHMS_HPP
#define OPTRA_ALGORITHMS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "optra/consensus.hpp"
#include "optra/linalg.hpp"
#include "optra/network.hpp"
#include "optra/objectives.hpp"

namespace optra {

/// A cross-agent linear operator: either one dense gossip matrix (one round)
/// or identity_weight I + poly_weight P_K(L) evaluated with AccGossip (K rounds).
class MixingOperator {
 public:
  static MixingOperator dense(DenseSym matrix);
  static MixingOperator chebyshev(GossipMatrix scaled, ChebyshevPlan plan, double identity_weight,
                                  double poly_weight);

  MultiVector apply(const MultiVector& x) const;
  /// Communication rounds spent by one apply().
  int rounds() const noexcept { return rounds_; }
  std::size_t size() const noexcept;
  /// The operator as an explicit matrix (computed by applying it to I).
  DenseSym materialize() const;

 private:
  MixingOperator() = default;

  std::optional<DenseSym> dense_;
  std::optional<GossipMatrix> scaled_;
  ChebyshevPlan plan_;
  double identity_weight_ = 0.0;
  double poly_weight_ = 1.0;
  int rounds_ = 1;
};

/// theta_1 = 1, 1/theta_k = (1 + sqrt(1 + 4 / theta_{k-1}^2)) / 2.
class ThetaSchedule {
 public:
  /// Precomputes theta_1 .. theta_{last}.
  explicit ThetaSchedule(long long last);
  /// 1-based; throws ScheduleExhausted beyond the precomputed range.
  double operator()(long long k) const;
  long long last() const noexcept { return static_cast<long long>(thetas_.size()); }

 private:
  std::vector<double> thetas_;
};

struct StepReport {
  long long grad_evals = 0;
  long long comm_rounds = 0;
};

/// One run of an iterative scheme. initialize() sets up iterate 1 and reports
/// its cost; each step() advances k -> k+1.
class Algorithm {
 public:
  virtual ~Algorithm() = default;

  virtual std::string name() const = 0;
  virtual StepReport initialize(const MultiVector& x1) = 0;
  virtual StepReport step() = 0;
  /// The iterate the convergence theory speaks about.
  virtual const MultiVector& metric_iterate() const = 0;
  /// Current iterate index k (1 after initialize()).
  long long iteration() const noexcept { return k_; }

 protected:
  explicit Algorithm(const ObjectiveInstance& inst) : inst_(inst) {}

  const ObjectiveInstance& inst_;
  long long k_ = 0;
};

/// x+ = A(x - gamma (grad f(x) + yhat)); y+ = y + tau B x+; yhat+ = 2 y+ - y.
/// Reports the running average (1/(k-1)) sum_{t=2..k} x^t.
class PrimalDual final : public Algorithm {
 public:
  PrimalDual(const ObjectiveInstance& inst, MixingOperator a, MixingOperator b, double gamma,
             double tau);

  std::string name() const override { return "primal_dual"; }
  StepReport initialize(const MultiVector& x1) override;
  StepReport step() override;
  const MultiVector& metric_iterate() const override;

  const MultiVector& x() const noexcept { return x_; }
  const MultiVector& y() const noexcept { return y_; }
  double gamma() const noexcept { return gamma_; }
  double tau() const noexcept { return tau_; }

 private:
  MixingOperator a_;
  MixingOperator b_;
  double gamma_;
  double tau_;
  MultiVector x_, y_, y_hat_, sum_, average_;
};

enum class MomentumRule {
  kNesterov,  // theta-driven alpha, sigma, tau_k, beta
  kPlain,     // alpha = 0, sigma = 1, tau_k = tau, beta = 1
};

/// Accelerated primal-dual recursion shared by OPTRA-N and OPTRA:
///   u+ = A(x - gamma (grad f(x) + yhat)),   x+ = u+ + alpha_k (u+ - u),
///   xhat+ = sigma_k x+ + (1 - sigma_k) u+,  y+ = y + tau_k B xhat+,
///   yhat+ = y+ + beta_k (y+ - y).
/// The horizon T allows T-1 steps, producing u^T.
class AcceleratedPrimalDual final : public Algorithm {
 public:
  AcceleratedPrimalDual(std::string name, const ObjectiveInstance& inst, MixingOperator a,
                        MixingOperator b, double gamma, double tau, long long horizon,
                        MomentumRule rule = MomentumRule::kNesterov);

  std::string name() const override { return name_; }
  StepReport initialize(const MultiVector& x1) override;
  StepReport step() override;
  const MultiVector& metric_iterate() const override { return u_; }

  const MultiVector& u() const noexcept { return u_; }
  const MultiVector& x() const noexcept { return x_; }
  const MultiVector& y() const noexcept { return y_; }
  double gamma() const noexcept { return gamma_; }
  double tau() const noexcept { return tau_; }
  long long horizon() const noexcept { return horizon_; }
  const MixingOperator& a() const noexcept { return a_; }
  const MixingOperator& b() const noexcept { return b_; }

 private:
  std::string name_;
  MixingOperator a_;
  MixingOperator b_;
  double gamma_;
  double tau_;
  long long horizon_;
  MomentumRule rule_;
  ThetaSchedule theta_;
  MultiVector u_, x_, y_, y_hat_;
};

/// x+ = W x - gamma grad f(x)
class Dgd final : public Algorithm {
 public:
  Dgd(const ObjectiveInstance& inst, DenseSym w, double gamma);
  std::string name() const override { return "dgd"; }
  StepReport initialize(const MultiVector& x1) override;
  StepReport step() override;
  const MultiVector& metric_iterate() const override { return x_; }

 private:
  DenseSym w_;
  double gamma_;
  MultiVector x_;
};

/// x+ = W x - gamma grad f(x) - y; y+ = y + (I - W) x+, y^1 = 0. W x is cached,
/// so each step communicates once.
class Extra final : public Algorithm {
 public:
  Extra(const ObjectiveInstance& inst, DenseSym w, double gamma);
  std::string name() const override { return "extra"; }
  StepReport initialize(const MultiVector& x1) override;
  StepReport step() override;
  const MultiVector& metric_iterate() const override { return x_; }

 private:
  DenseSym w_;
  double gamma_;
  MultiVector x_, wx_, y_;
};

/// x+ = W x - gamma y; y+ = W y + grad f(x+) - grad f(x), y^1 = grad f(x^1).
class GradientTracking final : public Algorithm {
 public:
  GradientTracking(const ObjectiveInstance& inst, DenseSym w, double gamma);
  std::string name() const override { return "gradient_tracking"; }
  StepReport initialize(const MultiVector& x1) override;
  StepReport step() override;
  const MultiVector& metric_iterate() const override { return x_; }

 private:
  DenseSym w_;
  double gamma_;
  MultiVector x_, y_, grad_;
};

/// (1 - gamma Lf) - (gamma tau / theta^2) lambda_max(B), the smallest
/// eigenvalue of (1 - gamma Lf) I - (gamma tau / theta^2) B.
double psd_margin(double gamma, double tau, double theta, double lf, double lambda_max_b);

inline constexpr double kPsdTolerance = 1e-12;

/// Throws StepSizeInfeasible, naming the violated inequality, when the margin
/// is below -kPsdTolerance.
void require_psd(double gamma, double tau, double theta, double lf, double lambda_max_b);

enum class AlgorithmKind { kPrimalDual, kOptraN, kOptra, kDgd, kExtra, kGradientTracking };

std::optional<AlgorithmKind> parse_algorithm(const std::string& name);
std::string to_string(AlgorithmKind kind);

struct AlgorithmParams {
  double nu = 1.0;
  bool nu_oracle = false;               // replace nu by oracle_nu()
  std::optional<int> chebyshev_rounds;  // OPTRA K override
  std::optional<double> gamma;          // overrides the default step size
  std::optional<double> tau;            // overrides the default dual step
  double baseline_step = 1e-5;
  long long horizon = 1000;
};

/// Spectral data recorded when an algorithm is configured; feeds the
/// certified bound.
struct AlgorithmSetup {
  std::unique_ptr<Algorithm> algorithm;
  double nu = 0.0;
  double gamma = 0.0;
  double tau = 0.0;
  double lambda2_b = 0.0;
  double lambda_max_b = 0.0;
  bool certified = false;  // the accelerated PSD condition was verified
};

/// sqrt(eigengap Rx / Ry) with Rx = ||x^1 - 1 x*||^2 for x^1 = 0 and
/// Ry = ||grad f(x*)||^2: the choice that balances the primal and dual terms of
/// the accelerated rate. For OPTRA the eigengap argument is (1-delta)/(1+delta).
double oracle_nu(const ObjectiveInstance& inst, double eigengap);

/// Builds an algorithm on the raw Laplacian with the default tuning:
///   primal_dual: A = I - L/lmax, B = L/lmax, gamma = nu/(nu Lf + 1), tau = 1/(nu lmax(B));
///   optra_n:     same A, B, gamma = nu/(nu Lf + T), tau = 1/(nu T lmax(B));
///   optra:       A = I - c2 P_K(Ls), B = P_K(Ls), gamma = nu/(nu Lf + T), tau = c2/(nu T);
///   baselines:   W = I - L/lmax with step baseline_step.
/// Verifies the PSD condition for the primal-dual family.
AlgorithmSetup make_algorithm(AlgorithmKind kind, const ObjectiveInstance& inst,
                              const GossipMatrix& laplacian, const AlgorithmParams& params);

}  // namespace optra

#endif  // OPTRA_ALGORITHMS_HPP
