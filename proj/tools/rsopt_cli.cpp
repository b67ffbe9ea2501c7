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

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "rsopt/harness.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string methods_csv;
  std::uint64_t seed = 0;
  int trials = 0;
  int threads = 0;
  bool no_timer = false;
  std::vector<double> snr;
  std::vector<double> w;
  std::vector<double> chi;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON experiment config file");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--trials", flags.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--methods", flags.methods_csv,
                  "comma-separated method list (RS-SOCP, RS-GCP, NoRS-SOCP, NoRS-GCP, "
                  "RS-D-MMSE, NoRS-D-MMSE)");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = auto)");
  cmd->add_flag("--no-timer", flags.no_timer, "omit wall-clock columns for byte-stable CSVs");
  cmd->add_option("--snr", flags.snr, "SNR grid in dB");
  cmd->add_option("--w", flags.w, "tradeoff weight grid");
  cmd->add_option("--chi", flags.chi, "rate-dependent power slope grid");
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

rsopt::ExperimentConfig assemble(const CommonFlags& flags) {
  rsopt::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = rsopt::ExperimentConfig::from_json_file(flags.config_path);
  }
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (flags.seed != 0) cfg.master_seed = flags.seed;
  if (flags.trials > 0) cfg.trials = flags.trials;
  if (!flags.methods_csv.empty()) cfg.methods = split_csv(flags.methods_csv);
  if (flags.threads > 0) cfg.threads = flags.threads;
  if (flags.no_timer) cfg.run.timer = false;
  if (!flags.snr.empty()) cfg.snr_grid = flags.snr;
  if (!flags.w.empty()) cfg.w_grid = flags.w;
  if (!flags.chi.empty()) cfg.chi_grid = flags.chi;
  return cfg;
}

int report(const rsopt::ExperimentOutput& out) {
  for (const auto& f : out.files) {
    std::printf("wrote %s\n", f.c_str());
  }
  if (out.any_failure) {
    std::fprintf(stderr, "warning: some runs did not finish cleanly (see status column)\n");
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SE-EE tradeoff experiments for rate-splitting downlink precoding"};
  app.require_subcommand(1);

  CommonFlags tradeoff_flags, snr_flags, conv_flags, sweep_flags;

  CLI::App* tradeoff = app.add_subcommand(
      "tradeoff", "w-sweep Pareto frontiers under both scalarization approaches");
  add_common(tradeoff, tradeoff_flags);

  CLI::App* ee_vs_snr = app.add_subcommand(
      "ee-vs-snr", "EE/SE/power versus SNR at w = 0 and w = 1");
  add_common(ee_vs_snr, snr_flags);

  CLI::App* convergence = app.add_subcommand(
      "convergence", "per-iteration objective traces on the 3-user reference scenario");
  add_common(convergence, conv_flags);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Monte Carlo sweep over random channels per the config grids");
  add_common(sweep, sweep_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (tradeoff->parsed()) {
      rsopt::ExperimentConfig cfg = assemble(tradeoff_flags);
      if (tradeoff_flags.snr.empty() && tradeoff_flags.config_path.empty()) {
        cfg.snr_grid = {15.0, 25.0};
      }
      return report(rsopt::pareto_frontier(cfg));
    }
    if (ee_vs_snr->parsed()) {
      rsopt::ExperimentConfig cfg = assemble(snr_flags);
      if (snr_flags.w.empty()) cfg.w_grid = {0.0, 1.0};
      if (snr_flags.snr.empty() && snr_flags.config_path.empty()) {
        cfg.snr_grid = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0};
      }
      return report(rsopt::run_experiment(cfg));
    }
    if (convergence->parsed()) {
      return report(rsopt::convergence_report(assemble(conv_flags)));
    }
    if (sweep->parsed()) {
      rsopt::ExperimentConfig cfg = assemble(sweep_flags);
      if (sweep_flags.config_path.empty()) {
        cfg.channel_kind = "cscg";
        cfg.users = 2;
        if (sweep_flags.snr.empty()) cfg.snr_grid = {25.0};
        if (sweep_flags.trials == 0) cfg.trials = 50;
      }
      return report(rsopt::run_experiment(cfg));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
