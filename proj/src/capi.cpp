// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include "optra/optra.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "optra/consensus.hpp"
#include "optra/harness.hpp"
#include "optra/metrics.hpp"

struct optra_config {
  std::string json;
  optra::RunConfig parsed;
  std::string base_dir;
};

struct optra_trace {
  optra::RunTrace trace;
};

namespace {

thread_local std::string g_last_error;

optra_status to_status(optra::ErrorCode code) { return static_cast<optra_status>(code); }

template <class F>
optra_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return OPTRA_OK;
  } catch (const optra::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OPTRA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OPTRA_ERR_INTERNAL;
  }
}

optra_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return OPTRA_ERR_NULL_ARGUMENT;
}

char* duplicate(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_record(const optra::TraceRecord& r, optra_record* out) {
  out->k = r.k;
  out->grad_evals = r.grad_evals;
  out->comm_rounds = r.comm_rounds;
  out->sim_time = r.sim_time;
  out->bregman = r.bregman;
  out->fem = r.fem;
  out->consensus_err = r.consensus_err;
  out->has_certified_ub = r.certified_ub ? 1 : 0;
  out->certified_ub = r.certified_ub.value_or(0.0);
  out->has_lower_bound_ref = r.lower_bound_ref ? 1 : 0;
  out->lower_bound_ref = r.lower_bound_ref.value_or(0.0);
}

nlohmann::json vector_json(std::span<const double> v) { return nlohmann::json(std::vector<double>(v.begin(), v.end())); }

}  // namespace

extern "C" {

const char* optra_version(void) { return "1.0.0"; }

const char* optra_last_error(void) { return g_last_error.c_str(); }

const char* optra_status_name(optra_status status) {
  switch (status) {
    case OPTRA_OK: return "ok";
    case OPTRA_ERR_NULL_ARGUMENT: return "NullArgument";
    case OPTRA_ERR_INTERNAL: return "Internal";
    default: break;
  }
  const auto code = static_cast<optra::ErrorCode>(status);
  static thread_local std::string name;
  name = std::string(optra::to_string(code));
  return name.c_str();
}

void optra_string_free(char* s) { delete[] s; }

optra_status optra_config_from_json(const char* json, optra_config** out) {
  if (json == nullptr) return null_argument("json");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<optra_config>();
    cfg->json = json;
    cfg->parsed = optra::parse_config(cfg->json);
    *out = cfg.release();
  });
}

optra_status optra_config_from_json_in(const char* json, const char* base_dir,
                                       optra_config** out) {
  if (json == nullptr) return null_argument("json");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<optra_config>();
    cfg->json = json;
    cfg->base_dir = base_dir != nullptr ? base_dir : "";
    cfg->parsed = optra::parse_config(cfg->json, cfg->base_dir);
    *out = cfg.release();
  });
}

optra_status optra_config_from_file(const char* path, optra_config** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    std::ifstream in(path);
    if (!in) optra::fail(optra::ErrorCode::kIoError, std::string("cannot open config '") + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto cfg = std::make_unique<optra_config>();
    const auto parent = std::filesystem::path(path).parent_path().string();
    cfg->base_dir = parent.empty() ? "." : parent;
    cfg->json = std::move(text);
    cfg->parsed = optra::parse_config(cfg->json, cfg->base_dir);
    *out = cfg.release();
  });
}

optra_status optra_config_merge_json(optra_config* config, const char* patch) {
  if (config == nullptr) return null_argument("config");
  if (patch == nullptr) return null_argument("patch");
  return guarded([&] {
    std::string merged = optra::merge_json(config->json, patch);
    optra::RunConfig parsed = optra::parse_config(merged, config->base_dir);
    config->json = std::move(merged);
    config->parsed = std::move(parsed);
  });
}

optra_status optra_config_validate(const optra_config* config) {
  if (config == nullptr) return null_argument("config");
  return guarded([&] { optra::validate_config(config->parsed); });
}

optra_status optra_config_to_json(const optra_config* config, char** out) {
  if (config == nullptr) return null_argument("config");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = duplicate(optra::config_to_json(config->parsed)); });
}

void optra_config_free(optra_config* config) { delete config; }

optra_status optra_run(const optra_config* config, optra_trace** out) {
  if (config == nullptr) return null_argument("config");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto t = std::make_unique<optra_trace>();
    t->trace = optra::run_experiment(config->parsed);
    *out = t.release();
  });
}

size_t optra_trace_record_count(const optra_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.records.size();
}

optra_status optra_trace_get_record(const optra_trace* trace, size_t index, optra_record* out) {
  if (trace == nullptr) return null_argument("trace");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    if (index >= trace->trace.records.size()) {
      optra::fail(optra::ErrorCode::kIndexError, "record index " + std::to_string(index) + " out of range");
    }
    fill_record(trace->trace.records[index], out);
  });
}

optra_status optra_trace_write_csv(const optra_trace* trace, const char* path) {
  if (trace == nullptr) return null_argument("trace");
  if (path == nullptr) return null_argument("path");
  return guarded([&] { optra::write_trace_csv(std::string(path), trace->trace); });
}

optra_status optra_trace_write_metadata(const optra_trace* trace, const char* path) {
  if (trace == nullptr) return null_argument("trace");
  if (path == nullptr) return null_argument("path");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) optra::fail(optra::ErrorCode::kIoError, std::string("cannot write '") + path + "'");
    out << optra::trace_metadata_json(trace->trace) << '\n';
  });
}

void optra_trace_free(optra_trace* trace) { delete trace; }

optra_status optra_sweep(const optra_config* const* configs, size_t n, unsigned jobs,
                         optra_trace** traces_out, optra_status* statuses_out,
                         char** messages_out) {
  if (configs == nullptr && n > 0) return null_argument("configs");
  if (traces_out == nullptr) return null_argument("traces_out");
  if (statuses_out == nullptr) return null_argument("statuses_out");
  for (size_t i = 0; i < n; ++i) {
    if (configs[i] == nullptr) return null_argument("configs[i]");
  }
  return guarded([&] {
    if (n == 0) optra::fail(optra::ErrorCode::kInvalidParameter, "sweep needs at least one config");
    std::vector<optra::RunConfig> list;
    list.reserve(n);
    for (size_t i = 0; i < n; ++i) list.push_back(configs[i]->parsed);
    std::vector<optra::SweepItem> items = optra::sweep(list, jobs);
    for (size_t i = 0; i < n; ++i) {
      traces_out[i] = nullptr;
      if (items[i].trace) {
        auto t = std::make_unique<optra_trace>();
        t->trace = std::move(*items[i].trace);
        traces_out[i] = t.release();
        statuses_out[i] = OPTRA_OK;
      } else {
        statuses_out[i] = to_status(*items[i].error);
      }
      if (messages_out != nullptr) messages_out[i] = duplicate(items[i].message);
    }
  });
}

optra_status optra_compare_at_budget(const optra_trace* const* traces, size_t n, double budget,
                                     size_t* order_out, optra_record* selected_out) {
  if (traces == nullptr) return null_argument("traces");
  if (order_out == nullptr) return null_argument("order_out");
  for (size_t i = 0; i < n; ++i) {
    if (traces[i] == nullptr) return null_argument("traces[i]");
  }
  return guarded([&] {
    std::vector<const optra::RunTrace*> list;
    for (size_t i = 0; i < n; ++i) list.push_back(&traces[i]->trace);
    const auto ranking = optra::compare_at_budget(list, budget);
    for (size_t r = 0; r < ranking.size(); ++r) {
      order_out[r] = ranking[r].index;
      if (selected_out != nullptr) fill_record(ranking[r].record, &selected_out[r]);
    }
  });
}

optra_status optra_write_plot_script(const char* path, const char* const* csv_paths,
                                     const char* const* labels, size_t n, const char* image) {
  if (path == nullptr) return null_argument("path");
  if (csv_paths == nullptr || labels == nullptr) return null_argument("csv_paths/labels");
  return guarded([&] {
    std::vector<optra::PlotSeries> series;
    for (size_t i = 0; i < n; ++i) series.push_back({csv_paths[i], labels[i]});
    std::ofstream out(path, std::ios::binary);
    if (!out) optra::fail(optra::ErrorCode::kIoError, std::string("cannot write '") + path + "'");
    optra::write_plot_script(out, series, image != nullptr ? image : "figure.png");
  });
}

optra_status optra_spectrum_from_edge_list(const char* path, size_t nodes, optra_spectrum* out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    std::optional<std::size_t> n;
    if (nodes > 0) n = nodes;
    const optra::GossipMatrix l = optra::laplacian(optra::read_edge_list_file(path, n));
    out->nodes = l.graph.m;
    out->edges = l.graph.edges.size();
    out->lambda2 = l.lambda2;
    out->lambda_max = l.lambda_max;
    out->eta = l.eigengap;
    out->chebyshev_rounds = optra::plan(l.eigengap).K;
  });
}

optra_status optra_hard_instance_write(const char* kind, int k, size_t d, size_t m, double lf,
                                       double zeta, const char* out_dir) {
  if (kind == nullptr) return null_argument("kind");
  if (out_dir == nullptr) return null_argument("out_dir");
  return guarded([&] {
    const std::string which(kind);
    std::optional<optra::ObjectiveInstance> inst;
    if (which == "two-agent" || which == "two_agent") {
      inst.emplace(optra::generate_hard_two_agent(k, d, lf));
    } else if (which == "line") {
      inst.emplace(optra::generate_hard_line(m, k, d, lf, zeta));
    } else {
      optra::fail(optra::ErrorCode::kInvalidParameter, "hard instance kind must be two-agent or line");
    }
    const optra::ReferenceSolution ref = optra::solve_reference(*inst);

    nlohmann::json doc;
    doc["kind"] = optra::to_string(inst->kind());
    doc["k"] = k;
    doc["d"] = inst->dim();
    doc["m"] = inst->agents();
    doc["lf"] = lf;
    if (inst->kind() == optra::ObjectiveKind::kHardLine) doc["zeta"] = zeta;
    doc["group_size"] = inst->hard_info()->group_size;
    nlohmann::json agents = nlohmann::json::array();
    for (std::size_t i = 0; i < inst->agents(); ++i) {
      nlohmann::json a;
      if (const auto* q = std::get_if<optra::QuadraticTerm>(&inst->term(i))) {
        a["type"] = "quadratic";
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < q->h.size(); ++r) rows.push_back(vector_json(q->h.row(r)));
        a["H"] = rows;
        a["c"] = vector_json(q->c);
      } else {
        a["type"] = "zero";
      }
      agents.push_back(a);
    }
    doc["agents"] = agents;
    doc["objective_form"] = "f_i(x) = 0.5 x^T H x + c^T x";
    nlohmann::json refj;
    refj["x_star"] = vector_json(ref.x_star);
    refj["f_star"] = ref.f_star;
    refj["grad_norm_star"] = optra::frobenius_norm(ref.grad_at_star);
    nlohmann::json grads = nlohmann::json::array();
    for (std::size_t i = 0; i < inst->agents(); ++i) grads.push_back(vector_json(ref.grad_at_star.row(i)));
    refj["grad_at_star"] = grads;
    doc["reference"] = refj;

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) optra::fail(optra::ErrorCode::kIoError, std::string("cannot create '") + out_dir + "'");
    const auto file = (std::filesystem::path(out_dir) / "instance.json").string();
    std::ofstream out(file, std::ios::binary);
    if (!out) optra::fail(optra::ErrorCode::kIoError, "cannot write '" + file + "'");
    out << doc.dump(2) << '\n';
  });
}

}  // extern "C"
