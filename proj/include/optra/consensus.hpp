// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

// Chebyshev-accelerated gossip. For a gossip matrix L whose nonzero spectrum
// lies in [1 - 1/c1, 1 + 1/c1] (see scale_for_chebyshev), K communication
// rounds apply
//
//     P_K(L) = I - T_K(c1 (I - L)) / T_K(c1)
//
// where T_K is the Chebyshev polynomial of the first kind. P_K(0) = 0, so the
// consensus direction stays in the kernel, while every nonzero eigenvalue is
// mapped into [1 - delta, 1 + delta].

#ifndef OPTRA_CONSENSUS_HPP
#define OPTRA_CONSENSUS_HPP

#include <optional>

#include "optra/linalg.hpp"
#include "optra/network.hpp"

namespace optra {

struct ChebyshevPlan {
  int K = 1;
  double eta = 1.0;
  double c0 = 0.0;
  double c1 = 0.0;     // +infinity when eta == 1
  double c2 = 1.0;
  double delta = 0.0;  // 2 c0^K / (1 + c0^{2K})

  bool degenerate() const noexcept { return eta >= 1.0; }
};

/// K = ceil(1/sqrt(eta)), up to a 1e-9 relative slack, unless overridden. Throws InvalidEigengap unless
/// 0 < eta <= 1, InvalidParameter for K_override < 1.
ChebyshevPlan plan(double eta, std::optional<int> k_override = std::nullopt);

/// P_K(L) X using exactly plan.K applications of L. L must already be scaled.
/// For eta == 1 the scaled L is itself the optimal polynomial and L X is
/// returned.
MultiVector acc_gossip(const MultiVector& x, const GossipMatrix& scaled, const ChebyshevPlan& plan);

/// Scalar P_K(x) via the same three-term recurrence used by acc_gossip.
double chebyshev_polynomial(const ChebyshevPlan& plan, double x);

/// max over nonzero eigenvalues of |P_K(lambda) - 1|; never exceeds plan.delta
/// when L is scaled.
double contraction_certificate(const GossipMatrix& scaled, const ChebyshevPlan& plan);

/// sqrt((1 + delta) / (1 - delta)), the condition-number inflation of P_K(L).
double chebyshev_inflation(const ChebyshevPlan& plan);

}  // namespace optra

#endif  // OPTRA_CONSENSUS_HPP
