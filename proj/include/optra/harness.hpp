// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

// Experiment orchestration. A run is fully described by a JSON document:
//
//   {
//     "algorithm": "optra" | "optra_n" | "primal_dual" | "dgd" | "extra" | "gradient_tracking",
//     "seed": 1,                         (required)
//     "iterations": 1000,                horizon T; iterates 1..T are produced
//     "record_every": 5,                 default ceil(T / 200)
//     "tau_c": 1.0, "grad_time": 1.0,    cost model
//     "lower_bound_overlay": false,      reference curve on non-hard instances
//     "topology":  { "kind": "erdos_renyi" | "line" | "ring" | "complete" | "two_agent" | "edge_list",
//                    "m": 20, "p": 0.1, "seed": <int>, "path": "edges.txt" },
//     "objective": { "kind": "least_squares", "r": 10, "d": 100, "omega": 0.95,
//                    "noise_sd": 0.5, "seed": <int> }
//                | { "kind": "logistic_csv", "path": "data.csv", "label_column": "label",
//                    "rescale": true }
//                | { "kind": "hard_two_agent", "k": 10, "d": 25, "lf": 1.0 }
//                | { "kind": "hard_line", "k": 10, "d": 25, "lf": 1.0, "zeta": 0.03125 }
//                | { "kind": "zero", "d": 4 },
//     "params": { "nu": 1.0 | "oracle", "K": 2, "gamma": <real>, "tau": <real>,
//                 "baseline_step": 1e-5 }
//   }
//
// Unknown keys are rejected with ConfigError naming the field path.

#ifndef OPTRA_HARNESS_HPP
#define OPTRA_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "optra/algorithms.hpp"
#include "optra/error.hpp"
#include "optra/network.hpp"
#include "optra/objectives.hpp"

namespace optra {

struct CostModel {
  double tau_c = 1.0;
  double grad_time = 1.0;

  double time(long long grad_evals, long long comm_rounds) const {
    return static_cast<double>(grad_evals) * grad_time + static_cast<double>(comm_rounds) * tau_c;
  }
};

struct TopologyConfig {
  std::string kind = "erdos_renyi";
  std::size_t m = 20;
  double p = 0.1;
  std::optional<std::uint64_t> seed;
  std::string path;
};

struct ObjectiveConfig {
  std::string kind = "least_squares";
  std::size_t r = 10;
  std::size_t d = 100;
  double omega = 0.95;
  double noise_sd = 0.5;
  std::optional<std::uint64_t> seed;
  std::string path;
  std::string label_column = "label";
  bool rescale = true;
  int k = 5;
  double lf = 1.0;
  double zeta = 1.0 / 32.0;
};

struct RunConfig {
  std::string algorithm = "optra";
  std::uint64_t seed = 0;
  long long iterations = 1000;
  std::optional<long long> record_every;
  CostModel cost;
  bool lower_bound_overlay = false;
  TopologyConfig topology;
  ObjectiveConfig objective;
  AlgorithmParams params;
};

/// Relative paths inside the document are resolved against base_dir.
RunConfig parse_config(const std::string& json_text, const std::string& base_dir = "");
RunConfig load_config(const std::string& path);
/// Canonical JSON echo of a configuration.
std::string config_to_json(const RunConfig& config);
/// RFC 7386 merge patch applied to a JSON document.
std::string merge_json(const std::string& base, const std::string& patch);

/// Everything a run needs, built and checked but not yet iterated.
struct Experiment {
  RunConfig config;
  GossipMatrix laplacian;
  std::unique_ptr<ObjectiveInstance> objective;
  AlgorithmKind kind = AlgorithmKind::kOptra;
  AlgorithmSetup setup;  // holds a reference to *objective
};

/// Builds graph and objective and configures the algorithm (including the
/// step-size PSD check) without iterating. Throws on any contradiction.
Experiment prepare(const RunConfig& config);
void validate_config(const RunConfig& config);

struct TraceRecord {
  long long k = 0;
  long long grad_evals = 0;
  long long comm_rounds = 0;
  double sim_time = 0.0;
  double bregman = 0.0;
  double fem = 0.0;
  double consensus_err = 0.0;
  std::optional<double> certified_ub;
  std::optional<double> lower_bound_ref;
};

enum class LowerBoundMode { kNone, kHardInstanceFloor, kReferenceOnly };

struct RunTrace {
  std::vector<TraceRecord> records;
  std::string config_json;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::uint64_t instance_fingerprint = 0;
  LowerBoundMode lower_bound = LowerBoundMode::kNone;
  double lf = 0.0;
  double eta = 0.0;
  double nu = 0.0;  // effective value (resolved when "oracle")
  double gamma = 0.0;
  double tau = 0.0;
  double tau_c = 1.0;
  double grad_time = 1.0;
};

RunTrace run_experiment(const RunConfig& config);

/// k,grad_evals,comm_rounds,sim_time,bregman,fem,consensus_err,certified_ub,lower_bound_ref
void write_trace_csv(std::ostream& out, const RunTrace& trace);
void write_trace_csv(const std::string& path, const RunTrace& trace);
/// Run metadata (config echo, fingerprint, lower-bound column meaning).
std::string trace_metadata_json(const RunTrace& trace);

struct SweepItem {
  std::optional<RunTrace> trace;
  std::optional<ErrorCode> error;
  std::string message;
};

/// Independent runs on up to `jobs` threads; output order equals input order
/// and a failing run does not stop the others.
std::vector<SweepItem> sweep(const std::vector<RunConfig>& configs, unsigned jobs = 1);

struct BudgetEntry {
  std::size_t index = 0;  // position in the input list
  TraceRecord record;     // last record with sim_time <= budget
};

/// Ranked by bregman ascending, ties by fem. Throws BudgetTooSmall if some
/// trace has no record within the budget.
std::vector<BudgetEntry> compare_at_budget(const std::vector<const RunTrace*>& traces,
                                           double budget);

struct PlotSeries {
  std::string csv_path;
  std::string label;
};

/// Gnuplot script with three panels: metric against total cost,
/// communication rounds and gradient evaluations (log-scale y).
void write_plot_script(std::ostream& out, const std::vector<PlotSeries>& series,
                       const std::string& image = "figure.png");

}  // namespace optra

#endif  // OPTRA_HARNESS_HPP
