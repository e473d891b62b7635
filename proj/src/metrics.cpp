// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include "optra/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optra/error.hpp"

namespace optra {

namespace {

void check_shape(const MultiVector& x, const ObjectiveInstance& inst) {
  if (x.agents() != inst.agents() || x.dim() != inst.dim()) {
    fail(ErrorCode::kShapeError, "metric: iterate shape does not match the objective");
  }
}

}  // namespace

double bregman(const MultiVector& x, const ReferenceSolution& ref, const ObjectiveInstance& inst) {
  check_shape(x, inst);
  double g = 0.0;
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    g += inst.local_bregman(i, x.row(i), ref.x_star, ref.grad_at_star.row(i));
  }
  return g;
}

double fem(const MultiVector& x, const ReferenceSolution& ref, const ObjectiveInstance& inst) {
  check_shape(x, inst);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.agents(); ++i) {
    worst = std::max(worst, inst.global_value(x.row(i)) - ref.f_star);
  }
  return worst;
}

double consensus_error(const MultiVector& x) { return frobenius_norm(x.centered()); }

MetricSnapshot snapshot(const MultiVector& x, const ReferenceSolution& ref,
                        const ObjectiveInstance& inst) {
  MetricSnapshot s;
  s.bregman = bregman(x, ref, inst);
  s.fem = fem(x, ref, inst);
  s.consensus_err = consensus_error(x);
  return s;
}

double lagrangian(const MultiVector& x, const MultiVector& y, const ObjectiveInstance& inst) {
  check_shape(x, inst);
  if (!x.same_shape(y)) fail(ErrorCode::kShapeError, "lagrangian: x and y shapes differ");
  const MultiVector projected = y.centered();
  const double residual = frobenius_norm(y - projected);
  if (residual > 1e-8 * (1.0 + frobenius_norm(y))) {
    fail(ErrorCode::kInvalidParameter, "lagrangian: dual variable has a consensus component");
  }
  return inst.value(x) + frobenius_inner(projected, x);
}

double certified_upper_bound(long long horizon, double gamma, double tau, double rx,
                             double lambda2_b, double y_star_norm2) {
  if (horizon < 2) fail(ErrorCode::kInvalidParameter, "certified bound needs T >= 2");
  if (!(gamma > 0.0) || !(tau > 0.0)) {
    fail(ErrorCode::kInvalidParameter, "certified bound needs gamma > 0 and tau > 0");
  }
  if (!(lambda2_b > 0.0)) fail(ErrorCode::kInvalidParameter, "certified bound needs lambda2(B) > 0");
  const double t = static_cast<double>(horizon);
  return (2.0 * rx / gamma + 2.0 * y_star_norm2 / (tau * lambda2_b)) / (t * t);
}

double averaged_upper_bound(long long horizon, double gamma, double tau, double rx,
                            double lambda2_b, double y_star_norm2) {
  if (horizon < 2) fail(ErrorCode::kInvalidParameter, "averaged bound needs T >= 2");
  if (!(gamma > 0.0) || !(tau > 0.0)) {
    fail(ErrorCode::kInvalidParameter, "averaged bound needs gamma > 0 and tau > 0");
  }
  if (!(lambda2_b > 0.0)) fail(ErrorCode::kInvalidParameter, "averaged bound needs lambda2(B) > 0");
  return (rx / (2.0 * gamma) + y_star_norm2 / (2.0 * tau * lambda2_b)) /
         static_cast<double>(horizon - 1);
}

double lower_bound_curve(double t, double lf, double r, double grad_norm_star, double eta,
                         double tau_c) {
  if (!(eta > 0.0 && eta <= 1.0)) fail(ErrorCode::kInvalidEigengap, "eigengap must lie in (0, 1]");
  const double rounds = std::ceil(1.0 / (5.0 * std::sqrt(eta)));
  const double s = std::max(0.0, t) / (1.0 + rounds * tau_c);
  return lf * r * r / ((s + 2.0) * (s + 2.0)) + r * grad_norm_star / (s + 2.0);
}

double hard_instance_floor(int k, std::size_t group_size, double lf, double support) {
  const double gap = std::max(0.0, static_cast<double>(k) - support);
  const double k1 = k + 1.0;
  return static_cast<double>(group_size) * lf / 8.0 * gap / (k1 * k1);
}

}  // namespace optra
