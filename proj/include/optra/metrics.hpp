// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef OPTRA_METRICS_HPP
#define OPTRA_METRICS_HPP

#include <optional>

#include "optra/linalg.hpp"
#include "optra/objectives.hpp"

namespace optra {

struct MetricSnapshot {
  double bregman = 0.0;
  double fem = 0.0;
  double consensus_err = 0.0;
  std::optional<double> lagrangian_gap;
  std::optional<double> certified_ub;
};

/// G(x) = f(x) - f(x*) - <grad f(x*), x - x*> with x* stacked on every agent.
double bregman(const MultiVector& x, const ReferenceSolution& ref, const ObjectiveInstance& inst);

/// max_i F(x_i) - F*
double fem(const MultiVector& x, const ReferenceSolution& ref, const ObjectiveInstance& inst);

/// ||(I - J) x||
double consensus_error(const MultiVector& x);

MetricSnapshot snapshot(const MultiVector& x, const ReferenceSolution& ref,
                        const ObjectiveInstance& inst);

/// Phi(x, y) = f(x) + <y, x> for y in the orthogonal complement of the
/// consensus space. Throws InvalidParameter if the consensus component of y
/// exceeds 1e-8 (1 + ||y||).
double lagrangian(const MultiVector& x, const MultiVector& y, const ObjectiveInstance& inst);

/// (1/T^2) (2 rx / gamma + 2 y_star_norm2 / (tau lambda2_b)); the certificate
/// for G(u^T) of the accelerated scheme.
double certified_upper_bound(long long horizon, double gamma, double tau, double rx,
                             double lambda2_b, double y_star_norm2);

/// (1/(T-1)) (rx / (2 gamma) + y_star_norm2 / (2 tau lambda2_b)); the
/// corresponding bound for the running average of the plain scheme.
double averaged_upper_bound(long long horizon, double gamma, double tau, double rx,
                            double lambda2_b, double y_star_norm2);

/// Generic lower-bound shape with unit constants (reference curve only):
/// with s = t / (1 + ceil(1/(5 sqrt(eta))) tau_c),
/// Lf R^2 / (s+2)^2 + R g / (s+2).
double lower_bound_curve(double t, double lf, double r, double grad_norm_star, double eta,
                         double tau_c);

/// Exact floor of G for a hard instance with parameter k once every iterate is
/// supported on the first `support` coordinates:
/// group_size (Lf/8) max(k - support, 0) / (k+1)^2.
double hard_instance_floor(int k, std::size_t group_size, double lf, double support);

}  // namespace optra

#endif  // OPTRA_METRICS_HPP
