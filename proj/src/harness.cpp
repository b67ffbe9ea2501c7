// SPDX-License-Identifier: Apache-2.0
//
// rsopt: SE/EE tradeoff simulator for rate-splitting multiple access
// precoding in the multi-antenna downlink.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rsopt/harness.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace rsopt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

struct MethodSpec {
  bool dinkelbach = false;
  Strategy strategy = Strategy::kRs;
  Bound bound = Bound::kLb1;
};

MethodSpec parse_method(const std::string& name) {
  if (name == "RS-SOCP") return {false, Strategy::kRs, Bound::kLb1};
  if (name == "RS-GCP") return {false, Strategy::kRs, Bound::kLb2};
  if (name == "NoRS-SOCP") return {false, Strategy::kNoRs, Bound::kLb1};
  if (name == "NoRS-GCP") return {false, Strategy::kNoRs, Bound::kLb2};
  if (name == "RS-D-MMSE") return {true, Strategy::kRs, Bound::kLb1};
  if (name == "NoRS-D-MMSE") return {true, Strategy::kNoRs, Bound::kLb1};
  throw std::invalid_argument("unknown method '" + name + "'");
}

const char* approach_label(Approach a) {
  return a == Approach::kWeightedSum ? "weighted_sum" : "weighted_power";
}

struct Task {
  std::string method;
  MethodSpec ms;
  Approach approach;
  double w;
  double snr_db;
  double chi;
  int trial;
  std::uint64_t seed;
};

SweepResult run_task(const ExperimentConfig& cfg, const Task& task) {
  SweepResult res;
  res.record.method = task.method;
  res.record.approach = approach_label(task.approach);
  res.record.w = task.w;
  res.record.snr_db = task.snr_db;
  res.record.chi = task.chi;
  res.record.trial = task.trial;
  res.record.seed = task.seed;
  try {
    const Scenario s = scenario_for(cfg, task.snr_db, task.chi, task.seed);
    RunTrace trace;
    if (task.ms.dinkelbach) {
      trace = dinkelbach_wmmse(task.ms.strategy, task.w, s, cfg.run);
    } else {
      SubproblemSpec spec;
      spec.approach = task.approach;
      spec.bound = task.ms.bound;
      spec.strategy = task.ms.strategy;
      spec.w = task.w;
      trace = sca_solve(spec, s, cfg.run);
    }
    // Re-derive the reported metrics from the final precoders; solver-side
    // numbers never reach the CSV.
    const RateReport rep = evaluate(trace.final_precoders, s);
    res.record.se_bits = rep.sum_se_bits;
    res.record.ee = rep.ee;
    res.record.tx_power_w = trace.final_precoders.frobenius_sq();
    res.record.iterations = trace.iterations;
    res.record.wall_ms = trace.total_wall_ms;
    res.record.status = to_string(trace.status);
    res.final_precoders = trace.final_precoders;
    res.final_true_obj = trace.final_true_obj;
  } catch (const std::exception& e) {
    res.record.status = std::string("error: ") + e.what();
  }
  return res;
}

std::vector<Task> grid_tasks(const ExperimentConfig& cfg) {
  const std::vector<double> chis = cfg.chi_grid.empty() ? std::vector<double>{cfg.chi}
                                                        : cfg.chi_grid;
  std::vector<Task> tasks;
  for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    const MethodSpec ms = parse_method(cfg.methods[mi]);
    for (size_t ai = 0; ai < cfg.approaches.size(); ++ai) {
      // Dinkelbach is defined on the weighted-sum transform only.
      if (ms.dinkelbach && cfg.approaches[ai] != Approach::kWeightedSum) continue;
      for (size_t si = 0; si < cfg.snr_grid.size(); ++si) {
        for (size_t wi = 0; wi < cfg.w_grid.size(); ++wi) {
          for (size_t ci = 0; ci < chis.size(); ++ci) {
            for (int trial = 0; trial < cfg.trials; ++trial) {
              std::uint64_t seed = cfg.master_seed;
              seed = mix_seed(seed, si);
              seed = mix_seed(seed, wi);
              seed = mix_seed(seed, ci);
              seed = mix_seed(seed, static_cast<std::uint64_t>(trial));
              // Channel realizations are shared across methods/approaches
              // so comparisons see the same instances.
              Task t;
              t.method = cfg.methods[mi];
              t.ms = ms;
              t.approach = cfg.approaches[ai];
              t.w = cfg.w_grid[wi];
              t.snr_db = cfg.snr_grid[si];
              t.chi = chis[ci];
              t.trial = trial;
              t.seed = seed;
              tasks.push_back(std::move(t));
            }
          }
        }
      }
    }
  }
  return tasks;
}

int pool_size(const ExperimentConfig& cfg, size_t n_tasks) {
  int n = cfg.threads;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (n > 8) n = 8;
  }
  return std::min<int>(n, static_cast<int>(n_tasks) > 0 ? static_cast<int>(n_tasks) : 1);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("short write on '" + path + "'");
}

// Output directory must be usable before any solve starts.
void prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string probe = dir + "/.rsopt_probe";
  {
    std::ofstream out(probe, std::ios::binary);
    if (!out) throw std::runtime_error("output directory not writable: '" + dir + "'");
  }
  std::filesystem::remove(probe, ec);
}

std::string sweep_csv(const std::string& schema, const std::vector<SweepResult>& results) {
  std::string out =
      "schema,method,approach,w,snr_db,chi,trial,seed,se_bits,ee,tx_power_w,iterations,"
      "wall_ms,status\n";
  for (const auto& r : results) {
    const auto& rec = r.record;
    out += csv_escape(schema) + ',' + csv_escape(rec.method) + ',' + csv_escape(rec.approach) +
           ',' + format_double(rec.w) + ',' + format_double(rec.snr_db) + ',' +
           format_double(rec.chi) + ',' + std::to_string(rec.trial) + ',' +
           std::to_string(rec.seed) + ',' + format_double(rec.se_bits) + ',' +
           format_double(rec.ee) + ',' + format_double(rec.tx_power_w) + ',' +
           std::to_string(rec.iterations) + ',' + format_double(rec.wall_ms) + ',' +
           csv_escape(rec.status) + '\n';
  }
  return out;
}

void write_manifest(const ExperimentConfig& cfg, const std::string& experiment,
                    const std::vector<std::pair<std::string, size_t>>& files) {
  nlohmann::json m;
  m["schema"] = "rsopt.manifest.v1";
  m["experiment"] = experiment;
  m["master_seed"] = cfg.master_seed;
  m["config"] = nlohmann::json::parse(cfg.to_json_text());
  for (const auto& [name, rows] : files) {
    m["files"].push_back({{"name", name}, {"rows", rows}});
  }
  write_file(cfg.out_dir + "/manifest.json", m.dump(2) + "\n");
}

bool any_failed(const std::vector<SweepResult>& results) {
  for (const auto& r : results) {
    if (r.record.status != to_string(RunStatus::kConverged) &&
        r.record.status != to_string(RunStatus::kMaxIterations)) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<SweepResult> execute_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<Task> tasks = grid_tasks(cfg);
  std::vector<SweepResult> results(tasks.size());

  const int n_threads = pool_size(cfg, tasks.size());
  if (n_threads <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) results[i] = run_task(cfg, tasks[i]);
    return results;
  }

  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (int w = 0; w < n_threads; ++w) {
    workers.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
        results[i] = run_task(cfg, tasks[i]);
      }
    });
  }
  for (auto& th : workers) th.join();
  return results;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  prepare_out_dir(cfg.out_dir);
  const std::vector<SweepResult> results = execute_sweep(cfg);

  const std::string csv = sweep_csv("rsopt.sweep.v1", results);
  const std::string path = cfg.out_dir + "/sweep.csv";
  write_file(path, csv);
  write_manifest(cfg, "sweep", {{"sweep.csv", results.size()}});

  ExperimentOutput out;
  out.files = {path, cfg.out_dir + "/manifest.json"};
  out.any_failure = any_failed(results);
  return out;
}

ExperimentOutput pareto_frontier(ExperimentConfig cfg) {
  // Paired frontiers: sweep w under both scalarization approaches.
  cfg.approaches = {Approach::kWeightedSum, Approach::kWeightedPower};
  cfg.validate();
  prepare_out_dir(cfg.out_dir);
  const std::vector<SweepResult> results = execute_sweep(cfg);

  const std::string csv = sweep_csv("rsopt.pareto.v1", results);
  const std::string path = cfg.out_dir + "/pareto.csv";
  write_file(path, csv);
  write_manifest(cfg, "pareto", {{"pareto.csv", results.size()}});

  ExperimentOutput out;
  out.files = {path, cfg.out_dir + "/manifest.json"};
  out.any_failure = any_failed(results);
  return out;
}

ConvergenceReport convergence_traces(const ExperimentConfig& cfg) {
  // Reference convergence scenario: K = 3 with AoDs [0, pi/9, 2pi/9],
  // SNR 20 dB, w = 0.5, weighted-sum objective.
  ExperimentConfig fixed = cfg;
  fixed.channel_kind = "geometric";
  fixed.nt = 4;
  fixed.angles = {0.0, std::numbers::pi / 9.0, 2.0 * std::numbers::pi / 9.0};
  fixed.gains.clear();
  fixed.snr_grid = {20.0};
  fixed.w_grid = {0.5};
  fixed.chi_grid.clear();
  fixed.approaches = {Approach::kWeightedSum};
  fixed.trials = 1;
  fixed.run.record_trace = true;
  fixed.validate();

  ConvergenceReport report;
  const Scenario s = scenario_for(fixed, 20.0, fixed.chi, fixed.master_seed);
  for (const std::string& name : fixed.methods) {
    const MethodSpec ms = parse_method(name);
    RunTrace trace;
    if (ms.dinkelbach) {
      trace = dinkelbach_wmmse(ms.strategy, 0.5, s, fixed.run);
    } else {
      SubproblemSpec spec;
      spec.approach = Approach::kWeightedSum;
      spec.bound = ms.bound;
      spec.strategy = ms.strategy;
      spec.w = 0.5;
      trace = sca_solve(spec, s, fixed.run);
    }
    for (size_t i = 0; i < trace.iters.size(); ++i) {
      ConvergenceRow row;
      row.method = name;
      row.iteration = static_cast<int>(i) + 1;
      row.surrogate_obj = trace.iters[i].surrogate_obj;
      row.true_obj = trace.iters[i].true_obj;
      row.wall_ms = trace.iters[i].wall_ms;
      report.rows.push_back(std::move(row));
    }
    const RateReport rep = evaluate(trace.final_precoders, s);
    SweepRecord rec;
    rec.method = name;
    rec.approach = approach_label(Approach::kWeightedSum);
    rec.w = 0.5;
    rec.snr_db = 20.0;
    rec.chi = fixed.chi;
    rec.trial = 0;
    rec.seed = fixed.master_seed;
    rec.se_bits = rep.sum_se_bits;
    rec.ee = rep.ee;
    rec.tx_power_w = trace.final_precoders.frobenius_sq();
    rec.iterations = trace.iterations;
    rec.wall_ms = trace.total_wall_ms;
    rec.status = to_string(trace.status);
    report.summary.push_back(std::move(rec));
  }
  return report;
}

ExperimentOutput convergence_report(ExperimentConfig cfg) {
  prepare_out_dir(cfg.out_dir);
  const ConvergenceReport report = convergence_traces(cfg);

  std::string trace_csv = "schema,method,iteration,surrogate_obj,true_obj,wall_ms\n";
  for (const auto& row : report.rows) {
    trace_csv += std::string("rsopt.convergence.v1,") + csv_escape(row.method) + ',' +
                 std::to_string(row.iteration) + ',' + format_double(row.surrogate_obj) + ',' +
                 format_double(row.true_obj) + ',' + format_double(row.wall_ms) + '\n';
  }
  const std::string trace_path = cfg.out_dir + "/convergence_trace.csv";
  write_file(trace_path, trace_csv);

  std::vector<SweepResult> summary;
  summary.reserve(report.summary.size());
  for (const auto& rec : report.summary) {
    SweepResult r;
    r.record = rec;
    summary.push_back(std::move(r));
  }
  const std::string summary_path = cfg.out_dir + "/convergence_summary.csv";
  write_file(summary_path, sweep_csv("rsopt.convergence-summary.v1", summary));

  write_manifest(cfg, "convergence",
                 {{"convergence_trace.csv", report.rows.size()},
                  {"convergence_summary.csv", report.summary.size()}});

  ExperimentOutput out;
  out.files = {trace_path, summary_path, cfg.out_dir + "/manifest.json"};
  for (const auto& rec : report.summary) {
    if (rec.status != to_string(RunStatus::kConverged) &&
        rec.status != to_string(RunStatus::kMaxIterations)) {
      out.any_failure = true;
    }
  }
  return out;
}

}  // namespace rsopt
