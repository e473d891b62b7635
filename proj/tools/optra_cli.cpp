// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Exit codes: 0 success, 1 configuration or
// validation error, 2 runtime error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "optra/optra.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int report(optra_status status, const std::string& context, int code) {
  std::cerr << "optra: " << context << ": " << optra_status_name(status) << ": "
            << optra_last_error() << "\n";
  return code;
}

/// Flag values that override fields of a configuration document.
struct Overrides {
  std::optional<std::string> algorithm;
  std::optional<unsigned long long> seed;
  std::optional<long long> iterations;
  std::optional<long long> record_every;
  std::optional<double> tau_c;
  std::optional<double> grad_time;
  std::optional<std::string> nu;
  std::optional<int> chebyshev_rounds;
  std::optional<double> gamma;
  std::optional<double> tau;
  std::optional<double> baseline_step;
  bool lower_bound_overlay = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--algorithm", algorithm,
                   "optra | optra_n | primal_dual | dgd | extra | gradient_tracking");
    cmd.add_option("--seed", seed, "master seed");
    cmd.add_option("--iterations", iterations, "horizon T (iterates 1..T)");
    cmd.add_option("--record-every", record_every, "metric cadence (default ceil(T/200))");
    cmd.add_option("--tau-c", tau_c, "time per communication round (default 1)");
    cmd.add_option("--grad-time", grad_time, "time per gradient evaluation (default 1)");
    cmd.add_option("--nu", nu, "primal-dual tuning parameter: a positive number or \"oracle\" (default 1)")
        ->check(CLI::Number | CLI::IsMember({"oracle"}));
    cmd.add_option("--K", chebyshev_rounds, "Chebyshev rounds per gossip (default ceil(1/sqrt(eta)))");
    cmd.add_option("--gamma", gamma, "primal step size override");
    cmd.add_option("--tau", tau, "dual step size override");
    cmd.add_option("--baseline-step", baseline_step, "DGD / EXTRA / gradient tracking step (default 1e-5)");
    cmd.add_flag("--lower-bound-overlay", lower_bound_overlay,
                 "add the reference lower-bound curve on non-hard instances");
  }

  json patch() const {
    json p = json::object();
    if (algorithm) p["algorithm"] = *algorithm;
    if (seed) p["seed"] = *seed;
    if (iterations) p["iterations"] = *iterations;
    if (record_every) p["record_every"] = *record_every;
    if (tau_c) p["tau_c"] = *tau_c;
    if (grad_time) p["grad_time"] = *grad_time;
    if (lower_bound_overlay) p["lower_bound_overlay"] = true;
    json params = json::object();
    if (nu) {
      // Non-numeric text is forwarded verbatim; the loader accepts only "oracle".
      char* end = nullptr;
      const double value = std::strtod(nu->c_str(), &end);
      if (!nu->empty() && end == nu->c_str() + nu->size()) {
        params["nu"] = value;
      } else {
        params["nu"] = *nu;
      }
    }
    if (chebyshev_rounds) params["K"] = *chebyshev_rounds;
    if (gamma) params["gamma"] = *gamma;
    if (tau) params["tau"] = *tau;
    if (baseline_step) params["baseline_step"] = *baseline_step;
    if (!params.empty()) p["params"] = params;
    return p;
  }
};

/// Loads a config file and applies flag overrides. Returns nullptr after
/// printing a diagnostic.
optra_config* load_with_overrides(const std::string& path, const Overrides& ov) {
  optra_config* cfg = nullptr;
  optra_status st = optra_config_from_file(path.c_str(), &cfg);
  if (st != OPTRA_OK) {
    report(st, "config '" + path + "'", kExitConfig);
    return nullptr;
  }
  const json patch = ov.patch();
  if (!patch.empty()) {
    st = optra_config_merge_json(cfg, patch.dump().c_str());
    if (st != OPTRA_OK) {
      report(st, "flag overrides", kExitConfig);
      optra_config_free(cfg);
      return nullptr;
    }
  }
  return cfg;
}

bool ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "optra: cannot create output directory '" << dir << "': " << ec.message() << "\n";
    return false;
  }
  return true;
}

std::string algorithm_of(const optra_config* cfg) {
  char* text = nullptr;
  if (optra_config_to_json(cfg, &text) != OPTRA_OK) return "run";
  const std::string name = json::parse(text).value("algorithm", "run");
  optra_string_free(text);
  return name;
}

int cmd_run(const std::string& config, const std::string& out, const Overrides& ov) {
  optra_config* cfg = load_with_overrides(config, ov);
  if (cfg == nullptr) return kExitConfig;
  optra_status st = optra_config_validate(cfg);
  if (st != OPTRA_OK) {
    optra_config_free(cfg);
    return report(st, "validation", kExitConfig);
  }
  if (!ensure_dir(out)) {
    optra_config_free(cfg);
    return kExitRuntime;
  }
  optra_trace* trace = nullptr;
  st = optra_run(cfg, &trace);
  const std::string label = algorithm_of(cfg);
  optra_config_free(cfg);
  if (st != OPTRA_OK) return report(st, "run", kExitRuntime);

  const std::string csv = (fs::path(out) / "trace.csv").string();
  const std::string meta = (fs::path(out) / "run.json").string();
  const std::string plot = (fs::path(out) / "plot.gp").string();
  const char* csv_names[] = {"trace.csv"};
  const char* labels[] = {label.c_str()};
  st = optra_trace_write_csv(trace, csv.c_str());
  if (st == OPTRA_OK) st = optra_trace_write_metadata(trace, meta.c_str());
  if (st == OPTRA_OK) st = optra_write_plot_script(plot.c_str(), csv_names, labels, 1, "figure.png");
  if (st != OPTRA_OK) {
    optra_trace_free(trace);
    return report(st, "writing outputs", kExitRuntime);
  }
  optra_record last{};
  optra_trace_get_record(trace, optra_trace_record_count(trace) - 1, &last);
  std::printf("%s: k=%lld grad_evals=%lld comm_rounds=%lld sim_time=%.6g bregman=%.6e fem=%.6e "
              "consensus_err=%.6e\n",
              label.c_str(), last.k, last.grad_evals, last.comm_rounds, last.sim_time, last.bregman,
              last.fem, last.consensus_err);
  if (last.has_certified_ub) std::printf("certified upper bound: %.6e\n", last.certified_ub);
  std::printf("wrote %s, %s, %s\n", csv.c_str(), meta.c_str(), plot.c_str());
  optra_trace_free(trace);
  return 0;
}

/// Sweep files hold {"base": {...}, "runs": [patch, ...]} or {"runs": [config, ...]}.
int cmd_sweep(const std::string& path, const std::string& out, unsigned jobs,
              std::optional<double> budget, const Overrides& ov) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "optra: cannot open sweep file '" << path << "'\n";
    return kExitConfig;
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    std::cerr << "optra: sweep file '" << path << "': invalid JSON: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!doc.is_object() || !doc.contains("runs") || !doc["runs"].is_array() || doc["runs"].empty()) {
    std::cerr << "optra: sweep file '" << path << "': expected a nonempty \"runs\" array\n";
    return kExitConfig;
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "base" && key != "runs") {
      std::cerr << "optra: sweep file '" << path << "': " << key << ": unknown key\n";
      return kExitConfig;
    }
  }
  const json base = doc.value("base", json::object());
  const std::string base_dir = fs::path(path).parent_path().string();
  const json flags = ov.patch();

  std::vector<optra_config*> configs;
  auto cleanup = [&] {
    for (optra_config* c : configs) optra_config_free(c);
  };
  for (std::size_t i = 0; i < doc["runs"].size(); ++i) {
    json merged = base;
    merged.merge_patch(doc["runs"][i]);
    merged.merge_patch(flags);
    optra_config* c = nullptr;
    const optra_status st = optra_config_from_json_in(merged.dump().c_str(),
                                                      base_dir.empty() ? "." : base_dir.c_str(), &c);
    if (st != OPTRA_OK) {
      cleanup();
      return report(st, "runs[" + std::to_string(i) + "]", kExitConfig);
    }
    configs.push_back(c);
  }
  if (!ensure_dir(out)) {
    cleanup();
    return kExitRuntime;
  }

  const std::size_t n = configs.size();
  std::vector<optra_trace*> traces(n, nullptr);
  std::vector<optra_status> statuses(n, OPTRA_OK);
  std::vector<char*> messages(n, nullptr);
  const optra_status st =
      optra_sweep(configs.data(), n, jobs, traces.data(), statuses.data(), messages.data());
  if (st != OPTRA_OK) {
    cleanup();
    return report(st, "sweep", kExitRuntime);
  }

  int exit_code = 0;
  std::vector<std::string> csv_names;
  std::vector<std::string> labels;
  json summary = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    char name[64];
    const std::string alg = algorithm_of(configs[i]);
    std::snprintf(name, sizeof name, "run_%02zu_%s", i, alg.c_str());
    json entry = {{"index", i}, {"algorithm", alg}};
    if (traces[i] == nullptr) {
      std::cerr << "optra: run " << i << " (" << alg << ") failed: " << optra_status_name(statuses[i])
                << ": " << messages[i] << "\n";
      entry["status"] = optra_status_name(statuses[i]);
      entry["error"] = messages[i];
      exit_code = kExitRuntime;
    } else {
      const std::string csv = std::string(name) + ".csv";
      optra_status w = optra_trace_write_csv(traces[i], (fs::path(out) / csv).string().c_str());
      if (w == OPTRA_OK) {
        w = optra_trace_write_metadata(traces[i], (fs::path(out) / (std::string(name) + ".json")).string().c_str());
      }
      if (w != OPTRA_OK) {
        report(w, "writing run " + std::to_string(i), kExitRuntime);
        exit_code = kExitRuntime;
      }
      csv_names.push_back(csv);
      labels.push_back(std::to_string(i) + ":" + alg);
      entry["status"] = "ok";
      entry["csv"] = csv;
    }
    summary.push_back(entry);
    optra_string_free(messages[i]);
  }

  std::vector<const char*> csv_ptrs;
  std::vector<const char*> label_ptrs;
  for (std::size_t i = 0; i < csv_names.size(); ++i) {
    csv_ptrs.push_back(csv_names[i].c_str());
    label_ptrs.push_back(labels[i].c_str());
  }
  if (!csv_ptrs.empty()) {
    const optra_status w = optra_write_plot_script((fs::path(out) / "plot.gp").string().c_str(),
                                                   csv_ptrs.data(), label_ptrs.data(),
                                                   csv_ptrs.size(), "figure.png");
    if (w != OPTRA_OK) exit_code = report(w, "writing plot script", kExitRuntime);
  }

  if (budget) {
    std::vector<const optra_trace*> ok;
    std::vector<std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
      if (traces[i] != nullptr) {
        ok.push_back(traces[i]);
        index.push_back(i);
      }
    }
    if (!ok.empty()) {
      std::vector<std::size_t> order(ok.size());
      std::vector<optra_record> picked(ok.size());
      const optra_status c =
          optra_compare_at_budget(ok.data(), ok.size(), *budget, order.data(), picked.data());
      if (c != OPTRA_OK) {
        exit_code = report(c, "compare at budget", kExitRuntime);
      } else {
        std::printf("ranking at budget %.6g:\n", *budget);
        for (std::size_t r = 0; r < order.size(); ++r) {
          std::printf("  %zu. run %zu (%s) k=%lld bregman=%.6e fem=%.6e\n", r + 1, index[order[r]],
                      summary[index[order[r]]]["algorithm"].get<std::string>().c_str(),
                      picked[r].k, picked[r].bregman, picked[r].fem);
        }
      }
    }
  }

  std::ofstream sf(fs::path(out) / "summary.json");
  sf << summary.dump(2) << "\n";
  for (optra_trace* t : traces) optra_trace_free(t);
  cleanup();
  std::printf("%zu runs, outputs in %s\n", n, out.c_str());
  return exit_code;
}

int cmd_spectrum(const std::string& graph, std::size_t nodes) {
  optra_spectrum s{};
  const optra_status st = optra_spectrum_from_edge_list(graph.c_str(), nodes, &s);
  if (st != OPTRA_OK) {
    const bool input_error = st == OPTRA_ERR_PARSE || st == OPTRA_ERR_IO ||
                             st == OPTRA_ERR_INVALID_SIZE || st == OPTRA_ERR_INVALID_PARAMETER;
    return report(st, "graph '" + graph + "'", input_error ? kExitConfig : kExitRuntime);
  }
  std::printf("nodes      %zu\n", s.nodes);
  std::printf("edges      %zu\n", s.edges);
  std::printf("lambda2    %.12g\n", s.lambda2);
  std::printf("lambda_max %.12g\n", s.lambda_max);
  std::printf("eta        %.12g\n", s.eta);
  std::printf("K          %d\n", s.chebyshev_rounds);
  return 0;
}

int cmd_hard_instance(const std::string& kind, int k, std::size_t d, std::size_t m, double lf,
                      double zeta, const std::string& out) {
  const optra_status st = optra_hard_instance_write(kind.c_str(), k, d, m, lf, zeta, out.c_str());
  if (st == OPTRA_ERR_IO) return report(st, "hard-instance", kExitRuntime);
  if (st != OPTRA_OK) return report(st, "hard-instance", kExitConfig);
  std::printf("wrote %s\n", (fs::path(out) / "instance.json").string().c_str());
  return 0;
}

int cmd_validate(const std::string& config, const Overrides& ov) {
  optra_config* cfg = load_with_overrides(config, ov);
  if (cfg == nullptr) return kExitConfig;
  const optra_status st = optra_config_validate(cfg);
  optra_config_free(cfg);
  if (st != OPTRA_OK) return report(st, "validation", kExitConfig);
  std::printf("config ok\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optra: gossip-based primal-dual methods for decentralized optimization"};
  app.set_version_flag("--version", std::string(optra_version()));
  app.require_subcommand(1, 1);

  std::string config;
  std::string out;
  Overrides ov;

  CLI::App* run = app.add_subcommand("run", "run one experiment and write trace.csv, run.json, plot.gp");
  run->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory")->required();
  ov.attach(*run);

  std::string sweep_file;
  unsigned jobs = 1;
  std::optional<double> budget;
  CLI::App* sweep = app.add_subcommand("sweep", "run several experiments, optionally in parallel");
  sweep->add_option("--config", sweep_file, "sweep file {\"base\": {...}, \"runs\": [...]}")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "output directory")->required();
  sweep->add_option("--jobs", jobs, "parallel runs (default 1)")->check(CLI::PositiveNumber);
  sweep->add_option("--budget", budget, "rank runs by Bregman distance at this simulated time");
  Overrides sweep_ov;
  sweep_ov.attach(*sweep);

  std::string graph;
  std::size_t nodes = 0;
  CLI::App* spectrum = app.add_subcommand("spectrum", "print lambda2, lambda_max, eta and K of a graph");
  spectrum->add_option("--graph", graph, "edge list, one 0-based \"i j\" pair per line")
      ->required()
      ->check(CLI::ExistingFile);
  spectrum->add_option("--nodes", nodes, "node count (default: largest index + 1)");

  std::string kind = "two-agent";
  int k = 10;
  std::size_t d = 25;
  std::size_t m = 64;
  double lf = 1.0;
  double zeta = 1.0 / 32.0;
  std::string hard_out = ".";
  CLI::App* hard = app.add_subcommand("hard-instance", "write a worst-case quadratic instance");
  hard->add_option("--kind", kind, "two-agent | line (default two-agent)")
      ->check(CLI::IsMember({"two-agent", "line"}));
  hard->add_option("--k", k, "coupled coordinates k (default 10)");
  hard->add_option("--d", d, "dimension, at least 2k+1 (default 25)");
  hard->add_option("--m", m, "agents on the line (default 64)");
  hard->add_option("--lf", lf, "smoothness parameter Lf (default 1)");
  hard->add_option("--zeta", zeta, "fraction of agents per end group (default 1/32)");
  hard->add_option("--out", hard_out, "output directory (default .)");

  std::string validate_file;
  Overrides validate_ov;
  CLI::App* validate = app.add_subcommand("validate-config", "check a configuration without running it");
  validate->add_option("--config", validate_file, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  validate_ov.attach(*validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*run) return cmd_run(config, out, ov);
  if (*sweep) return cmd_sweep(sweep_file, out, jobs, budget, sweep_ov);
  if (*spectrum) return cmd_spectrum(graph, nodes);
  if (*hard) return cmd_hard_instance(kind, k, d, m, lf, zeta, hard_out);
  if (*validate) return cmd_validate(validate_file, validate_ov);
  return kExitConfig;
}
