// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include "optra/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "optra/metrics.hpp"
#include "optra/random.hpp"

namespace optra {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::kConfigError, path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&](const char* a) { return key == a; });
    if (!ok) config_error(join(path, key), "unknown key");
  }
}

double get_real(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) config_error(join(path, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_error(join(path, key), "expected a finite number");
  return d;
}

std::optional<double> get_opt_real(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return get_real(obj, path, key, 0.0);
}

long long get_int(const json& obj, const std::string& path, const char* key, long long fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) config_error(join(path, key), "expected an integer");
  return v.get<long long>();
}

std::uint64_t get_seed(const json& obj, const std::string& path, const char* key) {
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  config_error(join(path, key), "expected a nonnegative integer seed");
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) config_error(join(path, key), "expected a string");
  return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) config_error(join(path, key), "expected true or false");
  return v.get<bool>();
}

std::string resolve(const std::string& base_dir, const std::string& p) {
  if (p.empty() || base_dir.empty()) return p;
  const std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

std::size_t positive_size(long long v, const std::string& path) {
  if (v < 1) config_error(path, "must be >= 1");
  return static_cast<std::size_t>(v);
}

TopologyConfig parse_topology(const json& t, const std::string& base_dir) {
  const std::string path = "topology";
  if (!t.is_object()) config_error(path, "expected an object");
  TopologyConfig out;
  out.kind = get_string(t, path, "kind", out.kind);
  if (out.kind == "erdos_renyi") {
    check_keys(t, path, {"kind", "m", "p", "seed"});
    out.p = get_real(t, path, "p", out.p);
    if (!(out.p > 0.0 && out.p <= 1.0)) config_error(path + ".p", "must lie in (0, 1]");
    if (t.contains("seed")) out.seed = get_seed(t, path, "seed");
  } else if (out.kind == "line" || out.kind == "ring" || out.kind == "complete" ||
             out.kind == "two_agent") {
    check_keys(t, path, {"kind", "m"});
  } else if (out.kind == "edge_list") {
    check_keys(t, path, {"kind", "m", "path"});
    out.path = resolve(base_dir, get_string(t, path, "path", ""));
    if (out.path.empty()) config_error(path + ".path", "required for edge_list");
  } else {
    config_error(path + ".kind", "unknown topology '" + out.kind + "'");
  }
  if (out.kind == "two_agent") out.m = 2;
  if (t.contains("m")) out.m = positive_size(get_int(t, path, "m", 0), path + ".m");
  if (out.kind == "edge_list" && !t.contains("m")) out.m = 0;
  if (out.kind != "edge_list" && out.m < 2) config_error(path + ".m", "needs at least 2 agents");
  if (out.kind == "two_agent" && out.m != 2) config_error(path + ".m", "two_agent requires m == 2");
  return out;
}

ObjectiveConfig parse_objective(const json& o, const std::string& base_dir) {
  const std::string path = "objective";
  if (!o.is_object()) config_error(path, "expected an object");
  ObjectiveConfig out;
  out.kind = get_string(o, path, "kind", out.kind);
  if (out.kind == "least_squares") {
    check_keys(o, path, {"kind", "r", "d", "omega", "noise_sd", "seed"});
    out.r = positive_size(get_int(o, path, "r", 10), path + ".r");
    out.d = positive_size(get_int(o, path, "d", 100), path + ".d");
    out.omega = get_real(o, path, "omega", out.omega);
    if (!(out.omega >= 0.0 && out.omega < 1.0)) config_error(path + ".omega", "must lie in [0, 1)");
    out.noise_sd = get_real(o, path, "noise_sd", out.noise_sd);
    if (out.noise_sd < 0.0) config_error(path + ".noise_sd", "must be nonnegative");
    if (o.contains("seed")) out.seed = get_seed(o, path, "seed");
  } else if (out.kind == "logistic_csv") {
    check_keys(o, path, {"kind", "path", "label_column", "rescale"});
    out.path = resolve(base_dir, get_string(o, path, "path", ""));
    if (out.path.empty()) config_error(path + ".path", "required for logistic_csv");
    out.label_column = get_string(o, path, "label_column", out.label_column);
    out.rescale = get_bool(o, path, "rescale", out.rescale);
  } else if (out.kind == "hard_two_agent" || out.kind == "hard_line") {
    if (out.kind == "hard_line") {
      check_keys(o, path, {"kind", "k", "d", "lf", "zeta"});
      out.zeta = get_real(o, path, "zeta", out.zeta);
      if (!(out.zeta > 0.0 && out.zeta < 0.5)) config_error(path + ".zeta", "must lie in (0, 1/2)");
    } else {
      check_keys(o, path, {"kind", "k", "d", "lf"});
    }
    out.k = static_cast<int>(positive_size(get_int(o, path, "k", out.k), path + ".k"));
    out.d = positive_size(get_int(o, path, "d", 2 * out.k + 1), path + ".d");
    if (2 * static_cast<std::size_t>(out.k) + 1 > out.d) config_error(path + ".d", "must be >= 2k+1");
    out.lf = get_real(o, path, "lf", out.lf);
    if (!(out.lf > 0.0)) config_error(path + ".lf", "must be positive");
  } else if (out.kind == "zero") {
    check_keys(o, path, {"kind", "d"});
    out.d = positive_size(get_int(o, path, "d", 1), path + ".d");
  } else {
    config_error(path + ".kind", "unknown objective '" + out.kind + "'");
  }
  return out;
}

AlgorithmParams parse_params(const json& p) {
  const std::string path = "params";
  check_keys(p, path, {"nu", "K", "gamma", "tau", "baseline_step"});
  AlgorithmParams out;
  if (p.contains("nu") && p.at("nu").is_string()) {
    if (p.at("nu").get<std::string>() != "oracle") {
      config_error(path + ".nu", "must be a positive number or \"oracle\"");
    }
    out.nu_oracle = true;
  } else {
    out.nu = get_real(p, path, "nu", out.nu);
  }
  if (!(out.nu > 0.0)) config_error(path + ".nu", "must be positive");
  if (p.contains("K") && !p.at("K").is_null()) {
    const long long k = get_int(p, path, "K", 1);
    if (k < 1) config_error(path + ".K", "must be >= 1");
    out.chebyshev_rounds = static_cast<int>(k);
  }
  out.gamma = get_opt_real(p, path, "gamma");
  if (out.gamma && !(*out.gamma > 0.0)) config_error(path + ".gamma", "must be positive");
  out.tau = get_opt_real(p, path, "tau");
  if (out.tau && !(*out.tau > 0.0)) config_error(path + ".tau", "must be positive");
  out.baseline_step = get_real(p, path, "baseline_step", out.baseline_step);
  if (!(out.baseline_step > 0.0)) config_error(path + ".baseline_step", "must be positive");
  return out;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kConfigError, std::string("config: invalid JSON: ") + e.what());
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::string& base_dir) {
  const json doc = parse_json_text(json_text);
  check_keys(doc, "", {"algorithm", "seed", "iterations", "record_every", "tau_c", "grad_time",
                       "lower_bound_overlay", "topology", "objective", "params"});
  RunConfig cfg;
  cfg.algorithm = get_string(doc, "", "algorithm", cfg.algorithm);
  if (!parse_algorithm(cfg.algorithm)) config_error("algorithm", "unknown algorithm '" + cfg.algorithm + "'");
  if (!doc.contains("seed")) config_error("seed", "required (runs are always explicitly seeded)");
  cfg.seed = get_seed(doc, "", "seed");
  cfg.iterations = get_int(doc, "", "iterations", cfg.iterations);
  if (cfg.iterations < 1) config_error("iterations", "must be >= 1");
  if (doc.contains("record_every")) {
    cfg.record_every = get_int(doc, "", "record_every", 1);
    if (*cfg.record_every < 1) config_error("record_every", "must be >= 1");
  }
  cfg.cost.tau_c = get_real(doc, "", "tau_c", cfg.cost.tau_c);
  if (cfg.cost.tau_c < 0.0) config_error("tau_c", "must be nonnegative");
  cfg.cost.grad_time = get_real(doc, "", "grad_time", cfg.cost.grad_time);
  if (cfg.cost.grad_time < 0.0) config_error("grad_time", "must be nonnegative");
  cfg.lower_bound_overlay = get_bool(doc, "", "lower_bound_overlay", false);

  if (doc.contains("objective")) cfg.objective = parse_objective(doc.at("objective"), base_dir);
  if (doc.contains("topology")) {
    cfg.topology = parse_topology(doc.at("topology"), base_dir);
  } else if (cfg.objective.kind == "hard_two_agent") {
    cfg.topology.kind = "two_agent";
    cfg.topology.m = 2;
  } else if (cfg.objective.kind == "hard_line") {
    cfg.topology.kind = "line";
  }
  if (doc.contains("params")) cfg.params = parse_params(doc.at("params"));
  cfg.params.horizon = cfg.iterations;

  if (cfg.objective.kind == "hard_two_agent" && cfg.topology.kind != "edge_list" && cfg.topology.m != 2) {
    config_error("topology.m", "hard_two_agent needs exactly 2 agents");
  }
  if (cfg.objective.kind == "hard_line") {
    if (cfg.topology.kind != "line") config_error("topology.kind", "hard_line needs a line topology");
    if (cfg.topology.m < 3) config_error("topology.m", "hard_line needs m >= 3");
  }
  const auto kind = *parse_algorithm(cfg.algorithm);
  if ((kind == AlgorithmKind::kOptraN || kind == AlgorithmKind::kOptra) && cfg.iterations < 2) {
    config_error("iterations", "accelerated schemes need a horizon T >= 2");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto parent = std::filesystem::path(path).parent_path().string();
  return parse_config(ss.str(), parent.empty() ? "." : parent);
}

std::string config_to_json(const RunConfig& c) {
  json doc;
  doc["algorithm"] = c.algorithm;
  doc["seed"] = c.seed;
  doc["iterations"] = c.iterations;
  if (c.record_every) doc["record_every"] = *c.record_every;
  doc["tau_c"] = c.cost.tau_c;
  doc["grad_time"] = c.cost.grad_time;
  doc["lower_bound_overlay"] = c.lower_bound_overlay;

  json t;
  t["kind"] = c.topology.kind;
  if (c.topology.kind != "edge_list" || c.topology.m > 0) t["m"] = c.topology.m;
  if (c.topology.kind == "erdos_renyi") {
    t["p"] = c.topology.p;
    if (c.topology.seed) t["seed"] = *c.topology.seed;
  }
  if (c.topology.kind == "edge_list") t["path"] = c.topology.path;
  doc["topology"] = t;

  json o;
  const ObjectiveConfig& ob = c.objective;
  o["kind"] = ob.kind;
  if (ob.kind == "least_squares") {
    o["r"] = ob.r;
    o["d"] = ob.d;
    o["omega"] = ob.omega;
    o["noise_sd"] = ob.noise_sd;
    if (ob.seed) o["seed"] = *ob.seed;
  } else if (ob.kind == "logistic_csv") {
    o["path"] = ob.path;
    o["label_column"] = ob.label_column;
    o["rescale"] = ob.rescale;
  } else if (ob.kind == "hard_two_agent" || ob.kind == "hard_line") {
    o["k"] = ob.k;
    o["d"] = ob.d;
    o["lf"] = ob.lf;
    if (ob.kind == "hard_line") o["zeta"] = ob.zeta;
  } else {
    o["d"] = ob.d;
  }
  doc["objective"] = o;

  json p;
  if (c.params.nu_oracle) {
    p["nu"] = "oracle";
  } else {
    p["nu"] = c.params.nu;
  }
  if (c.params.chebyshev_rounds) p["K"] = *c.params.chebyshev_rounds;
  if (c.params.gamma) p["gamma"] = *c.params.gamma;
  if (c.params.tau) p["tau"] = *c.params.tau;
  p["baseline_step"] = c.params.baseline_step;
  doc["params"] = p;
  return doc.dump(2);
}

std::string merge_json(const std::string& base, const std::string& patch) {
  json doc = parse_json_text(base);
  doc.merge_patch(parse_json_text(patch));
  return doc.dump(2);
}

namespace {

GossipMatrix build_laplacian(const RunConfig& c) {
  const TopologyConfig& t = c.topology;
  if (t.kind == "edge_list") {
    std::optional<std::size_t> nodes;
    if (t.m > 0) nodes = t.m;
    return laplacian(read_edge_list_file(t.path, nodes));
  }
  const auto kind = optra::parse_topology(t.kind);
  const std::uint64_t seed = t.seed.value_or(derive_seed(c.seed, 1));
  return laplacian(build_topology(*kind, t.m, seed, t.p));
}

ObjectiveInstance build_objective(const RunConfig& c, std::size_t m) {
  const ObjectiveConfig& o = c.objective;
  if (o.kind == "least_squares") {
    return generate_least_squares(m, o.r, o.d, o.omega, o.noise_sd, o.seed.value_or(derive_seed(c.seed, 2)));
  }
  if (o.kind == "logistic_csv") return load_csv_dataset(o.path, o.label_column, m, o.rescale);
  if (o.kind == "hard_two_agent") {
    if (m != 2) config_error("topology", "hard_two_agent needs exactly 2 agents");
    return generate_hard_two_agent(o.k, o.d, o.lf);
  }
  if (o.kind == "hard_line") return generate_hard_line(m, o.k, o.d, o.lf, o.zeta);
  return make_zero_objective(m, o.d);
}

}  // namespace

Experiment prepare(const RunConfig& config) {
  Experiment ex;
  ex.config = config;
  ex.kind = *parse_algorithm(config.algorithm);
  ex.laplacian = build_laplacian(config);
  ex.objective = std::make_unique<ObjectiveInstance>(build_objective(config, ex.laplacian.graph.m));
  AlgorithmParams params = config.params;
  params.horizon = config.iterations;
  ex.setup = make_algorithm(ex.kind, *ex.objective, ex.laplacian, params);
  return ex;
}

void validate_config(const RunConfig& config) { (void)prepare(config); }

RunTrace run_experiment(const RunConfig& config) {
  Experiment ex = prepare(config);
  const ObjectiveInstance& inst = *ex.objective;
  const ReferenceSolution ref = solve_reference(inst);
  Algorithm& alg = *ex.setup.algorithm;

  RunTrace trace;
  trace.config_json = config_to_json(config);
  trace.seed = config.seed;
  trace.algorithm = config.algorithm;
  trace.instance_fingerprint = inst.fingerprint();
  trace.lf = inst.lf();
  trace.eta = ex.laplacian.eigengap;
  trace.nu = ex.setup.nu;
  trace.gamma = ex.setup.gamma;
  trace.tau = ex.setup.tau;
  trace.tau_c = config.cost.tau_c;
  trace.grad_time = config.cost.grad_time;
  if (inst.hard_info()) {
    trace.lower_bound = LowerBoundMode::kHardInstanceFloor;
  } else if (config.lower_bound_overlay) {
    trace.lower_bound = LowerBoundMode::kReferenceOnly;
  }

  const MultiVector x1(inst.agents(), inst.dim());
  const MultiVector stacked_star = MultiVector::consensus(inst.agents(), ref.x_star);
  const double rx = std::pow(frobenius_norm(x1 - stacked_star), 2);
  const double y_star_norm2 = std::pow(frobenius_norm(ref.y_star), 2);
  const double grad_norm_star = frobenius_norm(ref.grad_at_star);

  const long long horizon = config.iterations;
  const long long every =
      config.record_every.value_or(std::max<long long>(1, (horizon + 199) / 200));

  long long grads = 0;
  long long comms = 0;
  auto record = [&](bool final_record) {
    TraceRecord r;
    r.k = alg.iteration();
    r.grad_evals = grads;
    r.comm_rounds = comms;
    r.sim_time = config.cost.time(grads, comms);
    const MultiVector& it = alg.metric_iterate();
    r.bregman = bregman(it, ref, inst);
    r.fem = fem(it, ref, inst);
    r.consensus_err = consensus_error(it);
    if (final_record && ex.setup.certified && horizon >= 2 && r.k == horizon) {
      r.certified_ub = certified_upper_bound(horizon, ex.setup.gamma, ex.setup.tau, rx,
                                             ex.setup.lambda2_b, y_star_norm2);
    }
    if (trace.lower_bound == LowerBoundMode::kHardInstanceFloor) {
      const HardInstanceInfo& h = *inst.hard_info();
      const double support = static_cast<double>(std::min(grads, comms + 1));
      r.lower_bound_ref = hard_instance_floor(h.k, h.group_size, inst.lf(), support);
    } else if (trace.lower_bound == LowerBoundMode::kReferenceOnly) {
      r.lower_bound_ref = lower_bound_curve(r.sim_time, inst.lf(), std::sqrt(rx), grad_norm_star,
                                            ex.laplacian.eigengap, config.cost.tau_c);
    }
    trace.records.push_back(r);
  };

  const StepReport init = alg.initialize(x1);
  grads += init.grad_evals;
  comms += init.comm_rounds;
  record(horizon == 1);
  while (alg.iteration() < horizon) {
    const StepReport s = alg.step();
    grads += s.grad_evals;
    comms += s.comm_rounds;
    const long long k = alg.iteration();
    if (k == horizon) {
      record(true);
    } else if (k % every == 0) {
      record(false);
    }
  }
  return trace;
}

namespace {

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "k,grad_evals,comm_rounds,sim_time,bregman,fem,consensus_err,certified_ub,lower_bound_ref\n";
  for (const TraceRecord& r : trace.records) {
    out << r.k << ',' << r.grad_evals << ',' << r.comm_rounds << ',' << fmt_real(r.sim_time) << ','
        << fmt_real(r.bregman) << ',' << fmt_real(r.fem) << ',' << fmt_real(r.consensus_err) << ',';
    if (r.certified_ub) out << fmt_real(*r.certified_ub);
    out << ',';
    if (r.lower_bound_ref) out << fmt_real(*r.lower_bound_ref);
    out << '\n';
  }
}

void write_trace_csv(const std::string& path, const RunTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write '" + path + "'");
  write_trace_csv(out, trace);
  if (!out) fail(ErrorCode::kIoError, "write failed for '" + path + "'");
}

std::string trace_metadata_json(const RunTrace& trace) {
  json doc;
  doc["config"] = json::parse(trace.config_json);
  doc["algorithm"] = trace.algorithm;
  doc["seed"] = trace.seed;
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016" PRIx64, trace.instance_fingerprint);
  doc["instance_fingerprint"] = hex;
  doc["lf"] = trace.lf;
  doc["eta"] = trace.eta;
  doc["nu"] = trace.nu;
  doc["gamma"] = trace.gamma;
  doc["tau"] = trace.tau;
  doc["tau_c"] = trace.tau_c;
  doc["grad_time"] = trace.grad_time;
  doc["records"] = trace.records.size();
  switch (trace.lower_bound) {
    case LowerBoundMode::kNone: doc["lower_bound_ref"] = "absent"; break;
    case LowerBoundMode::kHardInstanceFloor:
      doc["lower_bound_ref"] = "hard-instance floor; a valid lower bound for this instance";
      break;
    case LowerBoundMode::kReferenceOnly:
      doc["lower_bound_ref"] = "reference only; generic curve shape with unit constants, not a bound";
      break;
  }
  doc["columns"] = {"k", "grad_evals", "comm_rounds", "sim_time", "bregman", "fem",
                    "consensus_err", "certified_ub", "lower_bound_ref"};
  return doc.dump(2);
}

std::vector<SweepItem> sweep(const std::vector<RunConfig>& configs, unsigned jobs) {
  std::vector<SweepItem> out(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        out[i].trace = run_experiment(configs[i]);
      } catch (const Error& e) {
        out[i].error = e.code();
        out[i].message = e.what();
      } catch (const std::exception& e) {
        out[i].error = ErrorCode::kInvalidParameter;
        out[i].message = e.what();
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), configs.size()));
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return out;
}

std::vector<BudgetEntry> compare_at_budget(const std::vector<const RunTrace*>& traces,
                                           double budget) {
  if (traces.empty()) fail(ErrorCode::kInvalidParameter, "compare_at_budget needs at least one trace");
  std::vector<BudgetEntry> out;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& recs = traces[i]->records;
    const TraceRecord* pick = nullptr;
    for (const TraceRecord& r : recs) {
      if (r.sim_time <= budget) pick = &r;
    }
    if (pick == nullptr) {
      fail(ErrorCode::kBudgetTooSmall,
           "budget " + fmt_real(budget) + " is below the first record of trace " + std::to_string(i) +
               " (" + traces[i]->algorithm + ")");
    }
    out.push_back({i, *pick});
  }
  std::stable_sort(out.begin(), out.end(), [](const BudgetEntry& a, const BudgetEntry& b) {
    if (a.record.bregman != b.record.bregman) return a.record.bregman < b.record.bregman;
    return a.record.fem < b.record.fem;
  });
  return out;
}

void write_plot_script(std::ostream& out, const std::vector<PlotSeries>& series,
                       const std::string& image) {
  auto quote = [](const std::string& s) {
    std::string q = "'";
    for (char c : s) {
      if (c == '\'') q += "''";
      else q += c;
    }
    return q + "'";
  };
  auto panel = [&](const char* xlabel, const char* xcol) {
    out << "set xlabel " << quote(xlabel) << "\n";
    out << "plot ";
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (i > 0) out << ", \\\n     ";
      out << quote(series[i].csv_path) << " skip 1 using " << xcol << ":5 with lines lw 2 title "
          << quote(series[i].label);
    }
    out << "\n";
  };
  out << "# gnuplot script: Bregman distance against total cost, communication and computation\n";
  out << "set terminal pngcairo size 1500,450 enhanced\n";
  out << "set output " << quote(image) << "\n";
  out << "set datafile separator ','\n";
  out << "set logscale y\n";
  out << "set format y '10^{%L}'\n";
  out << "set ylabel 'G(x)'\n";
  out << "set key top right\n";
  out << "set multiplot layout 1,3\n";
  panel("total cost (simulated time)", "4");
  panel("communication rounds", "3");
  panel("gradient evaluations", "2");
  out << "unset multiplot\n";
}

}  // namespace optra
