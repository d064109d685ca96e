// Copyright 2026 The txnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end over the C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "txnav/txnav.h"

namespace {

int exit_code(txnav_status st) {
  if (st == TXNAV_OK) return 0;
  std::fprintf(stderr, "error: %s\n", txnav_last_error());
  return st == TXNAV_E_CONFIG || st == TXNAV_E_ARGUMENT ? 2 : 3;
}

int run_spec(const std::string& spec, const std::string& scenario, bool has_seed, std::uint64_t seed,
             const std::string& out, int jobs) {
  txnav_experiment* x = nullptr;
  txnav_status st = txnav_experiment_load(spec.c_str(), &x);
  if (st != TXNAV_OK) return exit_code(st);
  if (has_seed) txnav_experiment_set_seed(x, seed);
  if (!scenario.empty()) st = txnav_experiment_set_scenario(x, scenario.c_str());
  if (st == TXNAV_OK) st = txnav_experiment_run(x, out.c_str(), jobs);
  if (st == TXNAV_OK) std::printf("wrote %s/%s/summary.csv\n", out.c_str(), txnav_experiment_name(x));
  txnav_experiment_free(x);
  return exit_code(st);
}

int run_sweep(const std::string& name, std::uint64_t seed, const std::string& scenario, const std::string& out,
              int jobs) {
  txnav_experiment** list = nullptr;
  size_t count = 0;
  txnav_status st = txnav_sweep_build(name.c_str(), seed, &list, &count);
  if (st != TXNAV_OK) return exit_code(st);
  for (size_t i = 0; i < count && st == TXNAV_OK; ++i) {
    if (!scenario.empty() && (st = txnav_experiment_set_scenario(list[i], scenario.c_str())) != TXNAV_OK) break;
    std::printf("running %s\n", txnav_experiment_name(list[i]));
    std::fflush(stdout);
    st = txnav_experiment_run(list[i], out.c_str(), jobs);
    if (st == TXNAV_OK) std::printf("wrote %s/%s/summary.csv\n", out.c_str(), txnav_experiment_name(list[i]));
  }
  txnav_sweep_free(list, count);
  return exit_code(st);
}

int run_plot(const std::string& csv, const std::string& scenario, const std::string& out) {
  txnav_scenario* s = nullptr;
  txnav_status st = txnav_scenario_load(scenario.c_str(), &s);
  if (st != TXNAV_OK) return exit_code(st);
  st = txnav_plot(csv.c_str(), s, out.c_str());
  txnav_scenario_free(s);
  if (st == TXNAV_OK) std::printf("wrote %s\n", out.c_str());
  return exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robot data-transmission controllers and experiment runner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", txnav_version());

  std::string spec, scenario, out = "results", csv, sweep_name;
  std::uint64_t seed = 1;
  int jobs = 1;

  CLI::App* run = app.add_subcommand("run", "Run an experiment file");
  run->add_option("--spec", spec, "Experiment JSON file")->required();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Master seed (overrides the file)");
  run->add_option("--out", out, "Output directory");
  run->add_option("--jobs", jobs, "Parallel episodes")->check(CLI::PositiveNumber);
  run->add_option("--scenario", scenario, "Scenario name or file (overrides the file)");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a preset experiment batch");
  sweep->add_option("name", sweep_name, "pt-tuning, pt-baselines, pt-random, pn-variance or pn-baseline")->required();
  sweep->add_option("--seed", seed, "Master seed");
  sweep->add_option("--out", out, "Output directory");
  sweep->add_option("--jobs", jobs, "Parallel episodes")->check(CLI::PositiveNumber);
  sweep->add_option("--scenario", scenario, "Scenario name or file (overrides the preset)");

  CLI::App* plot = app.add_subcommand("plot", "Render an episode CSV as SVG");
  plot->add_option("csv", csv, "Episode CSV")->required();
  plot->add_option("--scenario", scenario, "Scenario name or file")->required();
  std::string svg;
  plot->add_option("--out", svg, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (*run) return run_spec(spec, scenario, seed_opt->count() > 0, seed, out, jobs);
  if (*sweep) return run_sweep(sweep_name, seed, scenario, out, jobs);
  return run_plot(csv, scenario, svg);
}
