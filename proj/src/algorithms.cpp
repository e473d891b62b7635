// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include "optra/algorithms.hpp"

#include <cmath>
#include <sstream>

#include "optra/error.hpp"

namespace optra {

// ---------------------------------------------------------------------------
// MixingOperator

MixingOperator MixingOperator::dense(DenseSym matrix) {
  MixingOperator op;
  op.dense_ = std::move(matrix);
  op.rounds_ = 1;
  return op;
}

MixingOperator MixingOperator::chebyshev(GossipMatrix scaled, ChebyshevPlan plan,
                                         double identity_weight, double poly_weight) {
  MixingOperator op;
  op.scaled_ = std::move(scaled);
  op.plan_ = plan;
  op.identity_weight_ = identity_weight;
  op.poly_weight_ = poly_weight;
  op.rounds_ = plan.K;
  return op;
}

std::size_t MixingOperator::size() const noexcept {
  return dense_ ? dense_->size() : scaled_->matrix.size();
}

MultiVector MixingOperator::apply(const MultiVector& x) const {
  if (dense_) return optra::apply(*dense_, x);
  MultiVector out = acc_gossip(x, *scaled_, plan_);
  out *= poly_weight_;
  if (identity_weight_ != 0.0) out.axpy(identity_weight_, x);
  return out;
}

DenseSym MixingOperator::materialize() const {
  if (dense_) return *dense_;
  const std::size_t n = size();
  MultiVector eye(n, n);
  for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
  const MultiVector r = apply(eye);
  DenseSym out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.set(i, j, 0.5 * (r(i, j) + r(j, i)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// ThetaSchedule

ThetaSchedule::ThetaSchedule(long long last) {
  if (last < 1) fail(ErrorCode::kInvalidParameter, "theta schedule needs at least one entry");
  thetas_.reserve(static_cast<std::size_t>(last));
  thetas_.push_back(1.0);
  for (long long k = 2; k <= last; ++k) {
    const double inv_prev = 1.0 / thetas_.back();
    const double inv = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * inv_prev * inv_prev));
    thetas_.push_back(1.0 / inv);
  }
}

double ThetaSchedule::operator()(long long k) const {
  if (k < 1 || k > last()) {
    fail(ErrorCode::kScheduleExhausted, "theta_" + std::to_string(k) + " is outside the schedule 1.." +
                                            std::to_string(last()));
  }
  return thetas_[static_cast<std::size_t>(k - 1)];
}

// ---------------------------------------------------------------------------
// Plain primal-dual

PrimalDual::PrimalDual(const ObjectiveInstance& inst, MixingOperator a, MixingOperator b,
                       double gamma, double tau)
    : Algorithm(inst), a_(std::move(a)), b_(std::move(b)), gamma_(gamma), tau_(tau) {}

StepReport PrimalDual::initialize(const MultiVector& x1) {
  x_ = x1;
  y_ = MultiVector(x1.agents(), x1.dim());
  y_hat_ = b_.apply(x_);
  y_hat_ *= tau_;
  sum_ = MultiVector(x1.agents(), x1.dim());
  average_ = x1;
  k_ = 1;
  return {0, b_.rounds()};
}

StepReport PrimalDual::step() {
  MultiVector v = inst_.gradient(x_);
  v += y_hat_;
  MultiVector arg = x_;
  arg.axpy(-gamma_, v);
  x_ = a_.apply(arg);

  MultiVector y_next = y_;
  y_next.axpy(tau_, b_.apply(x_));
  y_hat_ = y_next;
  y_hat_ += y_next - y_;
  y_ = std::move(y_next);

  ++k_;
  sum_ += x_;
  average_ = sum_;
  average_ *= 1.0 / static_cast<double>(k_ - 1);
  return {1, a_.rounds() + b_.rounds()};
}

const MultiVector& PrimalDual::metric_iterate() const { return average_; }

// ---------------------------------------------------------------------------
// Accelerated primal-dual

AcceleratedPrimalDual::AcceleratedPrimalDual(std::string name, const ObjectiveInstance& inst,
                                             MixingOperator a, MixingOperator b, double gamma,
                                             double tau, long long horizon, MomentumRule rule)
    : Algorithm(inst),
      name_(std::move(name)),
      a_(std::move(a)),
      b_(std::move(b)),
      gamma_(gamma),
      tau_(tau),
      horizon_(horizon),
      rule_(rule),
      theta_(horizon + 1) {
  if (horizon < 1) fail(ErrorCode::kInvalidParameter, "horizon T must be >= 1");
}

StepReport AcceleratedPrimalDual::initialize(const MultiVector& x1) {
  u_ = x1;
  x_ = x1;
  y_ = MultiVector(x1.agents(), x1.dim());
  const double tau1 = rule_ == MomentumRule::kNesterov ? tau_ / theta_(1) : tau_;
  y_hat_ = b_.apply(x_);
  y_hat_ *= tau1;
  k_ = 1;
  return {0, b_.rounds()};
}

StepReport AcceleratedPrimalDual::step() {
  if (k_ >= horizon_) {
    fail(ErrorCode::kScheduleExhausted, "iteration " + std::to_string(k_) +
                                            " reached the horizon T=" + std::to_string(horizon_));
  }
  double alpha = 0.0;
  double sigma = 1.0;
  double tau_k = tau_;
  double beta = 1.0;
  if (rule_ == MomentumRule::kNesterov) {
    const double th = theta_(k_);
    const double th_next = theta_(k_ + 1);
    alpha = th_next / th - th_next;
    sigma = 1.0 / th_next;
    tau_k = tau_ / th;
    beta = th / th_next;
  }

  MultiVector v = inst_.gradient(x_);
  v += y_hat_;
  MultiVector arg = x_;
  arg.axpy(-gamma_, v);
  MultiVector u_next = a_.apply(arg);

  MultiVector x_next = u_next;
  x_next.axpy(alpha, u_next - u_);

  MultiVector x_hat = sigma * x_next;
  x_hat.axpy(1.0 - sigma, u_next);

  MultiVector y_next = y_;
  y_next.axpy(tau_k, b_.apply(x_hat));
  y_hat_ = y_next;
  y_hat_.axpy(beta, y_next - y_);

  u_ = std::move(u_next);
  x_ = std::move(x_next);
  y_ = std::move(y_next);
  ++k_;
  return {1, a_.rounds() + b_.rounds()};
}

// ---------------------------------------------------------------------------
// Baselines

Dgd::Dgd(const ObjectiveInstance& inst, DenseSym w, double gamma)
    : Algorithm(inst), w_(std::move(w)), gamma_(gamma) {}

StepReport Dgd::initialize(const MultiVector& x1) {
  x_ = x1;
  k_ = 1;
  return {0, 0};
}

StepReport Dgd::step() {
  MultiVector next = apply(w_, x_);
  next.axpy(-gamma_, inst_.gradient(x_));
  x_ = std::move(next);
  ++k_;
  return {1, 1};
}

Extra::Extra(const ObjectiveInstance& inst, DenseSym w, double gamma)
    : Algorithm(inst), w_(std::move(w)), gamma_(gamma) {}

StepReport Extra::initialize(const MultiVector& x1) {
  x_ = x1;
  wx_ = apply(w_, x_);
  y_ = MultiVector(x1.agents(), x1.dim());
  k_ = 1;
  return {0, 1};
}

StepReport Extra::step() {
  MultiVector next = wx_;
  next.axpy(-gamma_, inst_.gradient(x_));
  next -= y_;
  wx_ = apply(w_, next);
  y_ += next - wx_;
  x_ = std::move(next);
  ++k_;
  return {1, 1};
}

GradientTracking::GradientTracking(const ObjectiveInstance& inst, DenseSym w, double gamma)
    : Algorithm(inst), w_(std::move(w)), gamma_(gamma) {}

StepReport GradientTracking::initialize(const MultiVector& x1) {
  x_ = x1;
  grad_ = inst_.gradient(x_);
  y_ = grad_;
  k_ = 1;
  return {1, 0};
}

StepReport GradientTracking::step() {
  MultiVector next = apply(w_, x_);
  next.axpy(-gamma_, y_);
  MultiVector grad_next = inst_.gradient(next);
  MultiVector y_next = apply(w_, y_);
  y_next += grad_next - grad_;
  x_ = std::move(next);
  y_ = std::move(y_next);
  grad_ = std::move(grad_next);
  ++k_;
  return {1, 2};
}

// ---------------------------------------------------------------------------
// Configuration

double psd_margin(double gamma, double tau, double theta, double lf, double lambda_max_b) {
  return (1.0 - gamma * lf) - gamma * tau / (theta * theta) * lambda_max_b;
}

void require_psd(double gamma, double tau, double theta, double lf, double lambda_max_b) {
  const double margin = psd_margin(gamma, tau, theta, lf, lambda_max_b);
  if (margin < -kPsdTolerance) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "step sizes violate (1 - gamma*Lf) I - (gamma*tau/theta^2) B >= 0: "
        << "gamma=" << gamma << " tau=" << tau << " theta=" << theta << " Lf=" << lf
        << " lambda_max(B)=" << lambda_max_b << " smallest eigenvalue=" << margin;
    fail(ErrorCode::kStepSizeInfeasible, msg.str());
  }
}

std::optional<AlgorithmKind> parse_algorithm(const std::string& name) {
  if (name == "primal_dual") return AlgorithmKind::kPrimalDual;
  if (name == "optra_n") return AlgorithmKind::kOptraN;
  if (name == "optra") return AlgorithmKind::kOptra;
  if (name == "dgd") return AlgorithmKind::kDgd;
  if (name == "extra") return AlgorithmKind::kExtra;
  if (name == "gradient_tracking") return AlgorithmKind::kGradientTracking;
  return std::nullopt;
}

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kPrimalDual: return "primal_dual";
    case AlgorithmKind::kOptraN: return "optra_n";
    case AlgorithmKind::kOptra: return "optra";
    case AlgorithmKind::kDgd: return "dgd";
    case AlgorithmKind::kExtra: return "extra";
    case AlgorithmKind::kGradientTracking: return "gradient_tracking";
  }
  return "unknown";
}

double oracle_nu(const ObjectiveInstance& inst, double eigengap) {
  const ReferenceSolution ref = solve_reference(inst);
  const double rx = static_cast<double>(inst.agents()) * dot(ref.x_star, ref.x_star);
  const double ry = frobenius_inner(ref.grad_at_star, ref.grad_at_star);
  if (!(rx > 0.0) || !(ry > 0.0)) {
    fail(ErrorCode::kInvalidParameter,
         "oracle nu needs a nonzero optimum and a nonzero gradient at the optimum");
  }
  return std::sqrt(eigengap * rx / ry);
}

AlgorithmSetup make_algorithm(AlgorithmKind kind, const ObjectiveInstance& inst,
                              const GossipMatrix& laplacian, const AlgorithmParams& params) {
  if (laplacian.matrix.size() != inst.agents()) {
    fail(ErrorCode::kShapeError, "gossip matrix size differs from the number of agents");
  }
  if (!(params.nu > 0.0)) fail(ErrorCode::kInvalidParameter, "nu must be positive");
  if (params.horizon < 1) fail(ErrorCode::kInvalidParameter, "horizon T must be >= 1");
  if (params.gamma && !(*params.gamma > 0.0)) fail(ErrorCode::kInvalidParameter, "gamma must be positive");
  if (params.tau && !(*params.tau > 0.0)) fail(ErrorCode::kInvalidParameter, "tau must be positive");

  const std::size_t m = inst.agents();
  const double lf = inst.lf();
  const auto horizon = static_cast<double>(params.horizon);
  const DenseSym b_plain = laplacian.matrix.scaled(1.0 / laplacian.lambda_max);
  const DenseSym w = DenseSym::identity(m).combined(1.0, b_plain, -1.0);

  AlgorithmSetup setup;
  switch (kind) {
    case AlgorithmKind::kDgd:
    case AlgorithmKind::kExtra:
    case AlgorithmKind::kGradientTracking: {
      const double step = params.gamma.value_or(params.baseline_step);
      if (!(step > 0.0)) fail(ErrorCode::kInvalidParameter, "baseline step size must be positive");
      setup.gamma = step;
      if (kind == AlgorithmKind::kDgd) setup.algorithm = std::make_unique<Dgd>(inst, w, step);
      if (kind == AlgorithmKind::kExtra) setup.algorithm = std::make_unique<Extra>(inst, w, step);
      if (kind == AlgorithmKind::kGradientTracking) {
        setup.algorithm = std::make_unique<GradientTracking>(inst, w, step);
      }
      return setup;
    }
    case AlgorithmKind::kPrimalDual: {
      setup.lambda_max_b = 1.0;
      setup.lambda2_b = laplacian.lambda2 / laplacian.lambda_max;
      const double nu = params.nu_oracle ? oracle_nu(inst, setup.lambda2_b) : params.nu;
      setup.nu = nu;
      setup.gamma = params.gamma.value_or(nu / (nu * lf + 1.0));
      setup.tau = params.tau.value_or(1.0 / (nu * setup.lambda_max_b));
      require_psd(setup.gamma, setup.tau, 1.0, lf, setup.lambda_max_b);
      setup.algorithm = std::make_unique<PrimalDual>(inst, MixingOperator::dense(w),
                                                     MixingOperator::dense(b_plain), setup.gamma,
                                                     setup.tau);
      return setup;
    }
    case AlgorithmKind::kOptraN:
    case AlgorithmKind::kOptra: {
      MixingOperator a = MixingOperator::dense(w);
      MixingOperator b = MixingOperator::dense(b_plain);
      if (kind == AlgorithmKind::kOptraN) {
        setup.lambda_max_b = 1.0;
        setup.lambda2_b = laplacian.lambda2 / laplacian.lambda_max;
        const double nu = params.nu_oracle ? oracle_nu(inst, setup.lambda2_b) : params.nu;
        setup.nu = nu;
        setup.gamma = params.gamma.value_or(nu / (nu * lf + horizon));
        setup.tau = params.tau.value_or(1.0 / (nu * horizon * setup.lambda_max_b));
      } else {
        const GossipMatrix scaled = scale_for_chebyshev(laplacian);
        const ChebyshevPlan cheb = plan(scaled.eigengap, params.chebyshev_rounds);
        a = MixingOperator::chebyshev(scaled, cheb, 1.0, -cheb.c2);
        b = MixingOperator::chebyshev(scaled, cheb, 0.0, 1.0);
        const EigenDecomposition eig = jacobi_eigen(b.materialize());
        setup.lambda2_b = eig.values.size() > 1 ? eig.values[1] : 0.0;
        setup.lambda_max_b = eig.values.back();
        const double nu =
            params.nu_oracle ? oracle_nu(inst, (1.0 - cheb.delta) / (1.0 + cheb.delta)) : params.nu;
        setup.nu = nu;
        setup.gamma = params.gamma.value_or(nu / (nu * lf + horizon));
        setup.tau = params.tau.value_or(cheb.c2 / (nu * horizon));
      }
      if (params.horizon >= 2) {
        const ThetaSchedule theta(params.horizon);
        require_psd(setup.gamma, setup.tau, theta(params.horizon - 1), lf, setup.lambda_max_b);
      }
      setup.certified = true;
      setup.algorithm = std::make_unique<AcceleratedPrimalDual>(
          to_string(kind), inst, std::move(a), std::move(b), setup.gamma, setup.tau,
          params.horizon);
      return setup;
    }
  }
  fail(ErrorCode::kInvalidParameter, "unknown algorithm kind");
}

}  // namespace optra
