// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef OPTRA_NETWORK_HPP
#define OPTRA_NETWORK_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optra/linalg.hpp"

namespace optra {

/// Undirected simple graph on nodes 0..m-1. Edges are stored once as (i, j)
/// with i < j, sorted lexicographically.
struct Graph {
  std::size_t m = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Normalizes and validates: rejects self-loops and out-of-range nodes,
  /// drops duplicate edges.
  static Graph from_edges(std::size_t m, std::vector<std::pair<std::size_t, std::size_t>> edges);

  bool has_edge(std::size_t i, std::size_t j) const;
  bool connected() const;
};

enum class Topology { kErdosRenyi, kLine, kRing, kComplete, kTwoAgent };

std::optional<Topology> parse_topology(const std::string& name);
std::string to_string(Topology t);

/// Erdős–Rényi graphs are resampled with seed+1, seed+2, ... until connected
/// (at most 1000 attempts). two_agent requires m == 2.
Graph build_topology(Topology kind, std::size_t m, std::uint64_t seed, double p = 0.1);

/// Graph-induced symmetric PSD matrix with null space span(1) and its cached
/// spectral data.
struct GossipMatrix {
  Graph graph;
  DenseSym matrix;
  double lambda_min = 0.0;  // ~0 for a valid gossip matrix
  double lambda2 = 0.0;
  double lambda_max = 0.0;
  double eigengap = 0.0;    // lambda2 / lambda_max

  /// Validates graph-induced sparsity, PSD-ness and the null space and fills
  /// the spectral fields.
  static GossipMatrix from_matrix(Graph graph, DenseSym matrix);
};

inline constexpr double kNullSpaceTol = 1e-10;

/// Combinatorial Laplacian D - Adj. Throws DisconnectedGraph.
GossipMatrix laplacian(const Graph& g);

/// Rescales so the nonzero spectrum is centered at 1:
/// L = 2 / (lambda2 + lambda_max) * L_raw.
GossipMatrix scale_for_chebyshev(const GossipMatrix& raw);

/// "i j" per line, 0-based; '#' starts a comment. The node count is
/// max index + 1 unless `nodes` is given.
Graph read_edge_list(std::istream& in, std::optional<std::size_t> nodes = std::nullopt);
Graph read_edge_list_file(const std::string& path,
                          std::optional<std::size_t> nodes = std::nullopt);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace optra

#endif  // OPTRA_NETWORK_HPP
