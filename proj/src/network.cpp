// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include "optra/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "optra/error.hpp"
#include "optra/random.hpp"

namespace optra {

Graph Graph::from_edges(std::size_t m, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  for (auto& [i, j] : edges) {
    if (i >= m || j >= m) {
      fail(ErrorCode::kInvalidSize, "edge (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") out of range for " + std::to_string(m) + " nodes");
    }
    if (i == j) fail(ErrorCode::kInvalidParameter, "self-loop at node " + std::to_string(i));
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph{m, std::move(edges)};
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

bool Graph::connected() const {
  if (m == 0) return false;
  std::vector<std::vector<std::size_t>> adj(m);
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<bool> seen(m, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == m;
}

std::optional<Topology> parse_topology(const std::string& name) {
  if (name == "erdos_renyi") return Topology::kErdosRenyi;
  if (name == "line") return Topology::kLine;
  if (name == "ring") return Topology::kRing;
  if (name == "complete") return Topology::kComplete;
  if (name == "two_agent") return Topology::kTwoAgent;
  return std::nullopt;
}

std::string to_string(Topology t) {
  switch (t) {
    case Topology::kErdosRenyi: return "erdos_renyi";
    case Topology::kLine: return "line";
    case Topology::kRing: return "ring";
    case Topology::kComplete: return "complete";
    case Topology::kTwoAgent: return "two_agent";
  }
  return "unknown";
}

Graph build_topology(Topology kind, std::size_t m, std::uint64_t seed, double p) {
  if (m < 2) fail(ErrorCode::kInvalidSize, "topology needs at least 2 nodes");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  switch (kind) {
    case Topology::kTwoAgent:
      if (m != 2) fail(ErrorCode::kInvalidSize, "two_agent topology requires m == 2");
      edges.emplace_back(0, 1);
      break;
    case Topology::kLine:
      for (std::size_t i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
      break;
    case Topology::kRing:
      for (std::size_t i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
      if (m > 2) edges.emplace_back(0, m - 1);
      break;
    case Topology::kComplete:
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) edges.emplace_back(i, j);
      }
      break;
    case Topology::kErdosRenyi: {
      if (!(p > 0.0 && p <= 1.0)) {
        fail(ErrorCode::kInvalidParameter, "erdos_renyi edge probability must lie in (0, 1]");
      }
      constexpr int kMaxAttempts = 1000;
      for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Rng rng(seed + static_cast<std::uint64_t>(attempt));
        edges.clear();
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = i + 1; j < m; ++j) {
            if (rng.uniform() < p) edges.emplace_back(i, j);
          }
        }
        Graph g{m, edges};
        if (g.connected()) return g;
      }
      fail(ErrorCode::kDisconnectedGraph,
           "erdos_renyi: no connected sample within 1000 reseeds (m=" + std::to_string(m) +
               ", p=" + std::to_string(p) + ")");
    }
  }
  return Graph::from_edges(m, std::move(edges));
}

GossipMatrix GossipMatrix::from_matrix(Graph graph, DenseSym matrix) {
  const std::size_t m = graph.m;
  if (matrix.size() != m) fail(ErrorCode::kShapeError, "gossip matrix size differs from graph");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (matrix(i, j) != 0.0 && !graph.has_edge(i, j)) {
        fail(ErrorCode::kInvalidMatrix, "gossip matrix is not induced by the graph at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  const EigenDecomposition eig = jacobi_eigen(matrix);
  GossipMatrix out;
  out.lambda_min = eig.values.front();
  out.lambda2 = m > 1 ? eig.values[1] : 0.0;
  out.lambda_max = eig.values.back();
  if (std::abs(out.lambda_min) > kNullSpaceTol) {
    fail(ErrorCode::kInvalidMatrix, "gossip matrix smallest eigenvalue " +
                                        std::to_string(out.lambda_min) + " is not zero");
  }
  if (out.lambda2 <= kNullSpaceTol) {
    fail(ErrorCode::kDisconnectedGraph,
         "gossip matrix null space is larger than span(1) (lambda2 <= 1e-10)");
  }
  out.eigengap = out.lambda2 / out.lambda_max;
  out.graph = std::move(graph);
  out.matrix = std::move(matrix);
  return out;
}

GossipMatrix laplacian(const Graph& g) {
  DenseSym l(g.m);
  std::vector<double> degree(g.m, 0.0);
  for (auto [i, j] : g.edges) {
    l.set(i, j, -1.0);
    degree[i] += 1.0;
    degree[j] += 1.0;
  }
  for (std::size_t i = 0; i < g.m; ++i) l.set(i, i, degree[i]);
  return GossipMatrix::from_matrix(g, std::move(l));
}

GossipMatrix scale_for_chebyshev(const GossipMatrix& raw) {
  const double s = 2.0 / (raw.lambda2 + raw.lambda_max);
  return GossipMatrix::from_matrix(raw.graph, raw.matrix.scaled(s));
}

Graph read_edge_list(std::istream& in, std::optional<std::size_t> nodes) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t max_index = 0;
  bool any = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long long i = 0;
    long long j = 0;
    if (!(ss >> i)) continue;  // blank or comment-only
    std::string rest;
    if (!(ss >> j) || (ss >> rest) || i < 0 || j < 0) {
      fail(ErrorCode::kParseError, "edge list line " + std::to_string(lineno) +
                                       ": expected two non-negative node indices");
    }
    edges.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    max_index = std::max({max_index, static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
    any = true;
  }
  std::size_t m = nodes.value_or(any ? max_index + 1 : 0);
  return Graph::from_edges(m, std::move(edges));
}

Graph read_edge_list_file(const std::string& path, std::optional<std::size_t> nodes) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open edge list '" + path + "'");
  return read_edge_list(in, nodes);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [i, j] : g.edges) out << i << ' ' << j << '\n';
}

}  // namespace optra
