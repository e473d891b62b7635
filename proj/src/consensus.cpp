// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include "optra/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "optra/error.hpp"

namespace optra {

ChebyshevPlan plan(double eta, std::optional<int> k_override) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    fail(ErrorCode::kInvalidEigengap, "eigengap must lie in (0, 1], got " + std::to_string(eta));
  }
  if (k_override && *k_override < 1) {
    fail(ErrorCode::kInvalidParameter, "Chebyshev round count K must be >= 1");
  }
  ChebyshevPlan p;
  p.eta = eta;
  const double root = std::sqrt(eta);
  // ceil with a 1e-9 relative slack for eigensolver rounding
  p.K = k_override ? *k_override : static_cast<int>(std::ceil(1.0 / root * (1.0 - 1e-9)));
  if (eta >= 1.0) {
    p.c0 = 0.0;
    p.c1 = std::numeric_limits<double>::infinity();
    p.delta = 0.0;
    p.c2 = 1.0;
    if (!k_override) p.K = 1;
    return p;
  }
  p.c0 = (1.0 - root) / (1.0 + root);
  p.c1 = (1.0 + eta) / (1.0 - eta);
  const double c0k = std::pow(p.c0, p.K);
  p.delta = 2.0 * c0k / (1.0 + c0k * c0k);
  p.c2 = 1.0 / (1.0 + p.delta);
  return p;
}

MultiVector acc_gossip(const MultiVector& x, const GossipMatrix& scaled, const ChebyshevPlan& plan) {
  if (scaled.matrix.size() != x.agents()) {
    fail(ErrorCode::kShapeError, "acc_gossip: gossip matrix size does not match agent count");
  }
  if (plan.degenerate()) return apply(scaled.matrix, x);

  // (I - L) z = z - L z; every round is one gossip exchange.
  auto mix = [&](const MultiVector& z) { return z - apply(scaled.matrix, z); };

  const double c1 = plan.c1;
  double a_prev = 1.0;
  double a_cur = c1;
  MultiVector z_prev = x;
  MultiVector z_cur = c1 * mix(x);
  for (int k = 1; k < plan.K; ++k) {
    const double a_next = 2.0 * c1 * a_cur - a_prev;
    MultiVector z_next = (2.0 * c1) * mix(z_cur);
    z_next -= z_prev;
    a_prev = a_cur;
    a_cur = a_next;
    z_prev = std::move(z_cur);
    z_cur = std::move(z_next);
  }
  MultiVector out = x;
  out.axpy(-1.0 / a_cur, z_cur);
  return out;
}

double chebyshev_polynomial(const ChebyshevPlan& plan, double x) {
  if (plan.degenerate()) return 1.0 - std::pow(1.0 - x, plan.K);
  const double c1 = plan.c1;
  double a_prev = 1.0;
  double a_cur = c1;
  double z_prev = 1.0;
  double z_cur = c1 * (1.0 - x);
  for (int k = 1; k < plan.K; ++k) {
    const double a_next = 2.0 * c1 * a_cur - a_prev;
    const double z_next = 2.0 * c1 * (1.0 - x) * z_cur - z_prev;
    a_prev = a_cur;
    a_cur = a_next;
    z_prev = z_cur;
    z_cur = z_next;
  }
  return 1.0 - z_cur / a_cur;
}

double contraction_certificate(const GossipMatrix& scaled, const ChebyshevPlan& plan) {
  const EigenDecomposition eig = jacobi_eigen(scaled.matrix);
  double worst = 0.0;
  for (std::size_t i = 1; i < eig.values.size(); ++i) {
    worst = std::max(worst, std::abs(chebyshev_polynomial(plan, eig.values[i]) - 1.0));
  }
  return worst;
}

double chebyshev_inflation(const ChebyshevPlan& plan) {
  return std::sqrt((1.0 + plan.delta) / (1.0 - plan.delta));
}

}  // namespace optra
