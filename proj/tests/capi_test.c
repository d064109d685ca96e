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

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "txnav/txnav.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static void test_scenarios(void) {
  size_t n = txnav_builtin_scenario_count();
  EXPECT(n >= 4);
  for (size_t i = 0; i < n; ++i) {
    txnav_scenario* s = NULL;
    EXPECT(txnav_scenario_load(txnav_builtin_scenario_name(i), &s) == TXNAV_OK);
    EXPECT(strcmp(txnav_scenario_name(s), txnav_builtin_scenario_name(i)) == 0);
    txnav_scenario_free(s);
  }
  EXPECT(txnav_builtin_scenario_name(n) == NULL);

  txnav_scenario* s = NULL;
  EXPECT(txnav_scenario_load("no-such-scenario", &s) != TXNAV_OK);
  EXPECT(s == NULL);
  EXPECT(strlen(txnav_last_error()) > 0);
  EXPECT(txnav_scenario_parse("{\"name\": \"x\"}", &s) == TXNAV_E_CONFIG);
  EXPECT(txnav_scenario_load(NULL, &s) == TXNAV_E_ARGUMENT);
  txnav_scenario_free(NULL);
}

static void test_episode(void) {
  txnav_scenario* s = NULL;
  EXPECT(txnav_scenario_load("pn-single", &s) == TXNAV_OK);
  txnav_episode_options opt = txnav_episode_options_default();
  EXPECT(opt.radius == 4 && opt.neighbors == 1 && opt.sweeps == 10);
  EXPECT(isnan(opt.rice_v));
  opt.neighbors = 3;
  opt.rice_v = -1.0;

  txnav_episode* e = NULL;
  EXPECT(txnav_episode_run(s, TXNAV_GRADIENT, &opt, 7, &e) == TXNAV_OK);
  size_t steps = txnav_episode_steps(e);
  EXPECT(steps > 0);
  EXPECT(txnav_episode_reached_goal(e) == 1);
  EXPECT(txnav_episode_emptied(e) == 1);
  EXPECT(txnav_episode_capped(e) == 0);
  EXPECT(txnav_episode_collided(e) == 0);
  txnav_step row;
  EXPECT(txnav_episode_row(e, 0, &row) == TXNAV_OK);
  EXPECT(row.k == 0 && row.p1 == 30.0 && row.p2 == 140.0 && row.b == 250.0 && row.reward == -1.0);
  EXPECT(txnav_episode_row(e, steps, &row) == TXNAV_E_ARGUMENT);

  txnav_episode* again = NULL;
  EXPECT(txnav_episode_run(s, TXNAV_GRADIENT, &opt, 7, &again) == TXNAV_OK);
  EXPECT(txnav_episode_steps(again) == steps);
  txnav_episode_free(again);

  const char* csv = "capi_episode.csv";
  const char* svg = "capi_episode.svg";
  EXPECT(txnav_episode_write_csv(e, csv) == TXNAV_OK);
  EXPECT(txnav_plot(csv, s, svg) == TXNAV_OK);
  FILE* f = fopen(svg, "r");
  EXPECT(f != NULL);
  if (f) fclose(f);
  remove(csv);
  remove(svg);
  EXPECT(txnav_plot("missing.csv", s, svg) != TXNAV_OK);

  txnav_scenario* obstacles = NULL;
  EXPECT(txnav_scenario_load("pt-obstacles", &obstacles) == TXNAV_OK);
  EXPECT(txnav_episode_run(obstacles, TXNAV_GRADIENT, &opt, 1, &again) == TXNAV_E_CONFIG);
  EXPECT(txnav_episode_run(obstacles, (txnav_controller)42, &opt, 1, &again) == TXNAV_E_ARGUMENT);
  txnav_scenario_free(obstacles);

  txnav_episode_free(e);
  txnav_scenario_free(s);
}

static void test_experiments(void) {
  txnav_experiment* x = NULL;
  EXPECT(txnav_experiment_parse("{\"name\": \"capi\", \"scenario\": \"pn-single\", \"controller\": \"gradient\","
                                " \"runs\": 2, \"grid\": {\"starts\": [[30, 140, 60]]}}",
                                &x) == TXNAV_OK);
  EXPECT(strcmp(txnav_experiment_name(x), "capi") == 0);
  txnav_experiment_set_seed(x, 5);
  EXPECT(txnav_experiment_run(x, "capi_out", 1) == TXNAV_OK);
  FILE* f = fopen("capi_out/capi/summary.csv", "r");
  EXPECT(f != NULL);
  if (f) fclose(f);
  EXPECT(txnav_experiment_set_scenario(x, "pt-obstacles") == TXNAV_OK);
  EXPECT(txnav_experiment_run(x, "", 1) == TXNAV_E_CONFIG);
  EXPECT(txnav_experiment_set_scenario(x, "no-such-scenario") != TXNAV_OK);
  txnav_experiment_free(x);
  EXPECT(txnav_experiment_parse("{\"runs\": 1}", &x) == TXNAV_E_CONFIG);
  EXPECT(txnav_experiment_load("/nonexistent.json", &x) == TXNAV_E_IO);

  size_t n = txnav_sweep_count();
  EXPECT(n == 5);
  for (size_t i = 0; i < n; ++i) {
    txnav_experiment** list = NULL;
    size_t count = 0;
    EXPECT(txnav_sweep_build(txnav_sweep_name(i), 1, &list, &count) == TXNAV_OK);
    EXPECT(count > 0);
    txnav_sweep_free(list, count);
  }
  txnav_experiment** list = NULL;
  size_t count = 0;
  EXPECT(txnav_sweep_build("nope", 1, &list, &count) == TXNAV_E_CONFIG);
}

int main(void) {
  EXPECT(strlen(txnav_version()) > 0);
  test_scenarios();
  test_episode();
  test_experiments();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
