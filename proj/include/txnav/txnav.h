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

#ifndef TXNAV_TXNAV_H
#define TXNAV_TXNAV_H

#include <stddef.h>
#include <stdint.h>

#if defined(TXNAV_BUILDING_LIBRARY)
#define TXNAV_API __attribute__((visibility("default")))
#else
#define TXNAV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values 2 and 3 double as CLI exit codes. */
typedef enum txnav_status {
  TXNAV_OK = 0,
  TXNAV_E_ARGUMENT = 1,      /* null handle or out-of-range index */
  TXNAV_E_CONFIG = 2,        /* invalid scenario, experiment or parameter */
  TXNAV_E_RUNTIME = 3,       /* any other failure during a run */
  TXNAV_E_IO = 4,            /* file could not be read or written */
  TXNAV_E_INVALID_ACTION = 5,
  TXNAV_E_MODEL = 6,         /* non-finite model value */
  TXNAV_E_ESTIMATOR = 7,     /* estimator queried before any sample */
  TXNAV_E_BRACKET = 8
} txnav_status;

typedef enum txnav_controller {
  TXNAV_MODEL_BASED_PT = 0,
  TXNAV_LEARNING_PT = 1,
  TXNAV_MODEL_BASED_PN = 2,
  TXNAV_LEARNING_PN = 3,
  TXNAV_GRADIENT = 4
} txnav_controller;

typedef struct txnav_scenario txnav_scenario;
typedef struct txnav_experiment txnav_experiment;
typedef struct txnav_episode txnav_episode;

typedef struct txnav_episode_options {
  int radius;       /* r_DP */
  int neighbors;    /* N */
  int sweeps;       /* l_DP */
  int max_steps;    /* 0: scenario limit */
  int exploit_only; /* navigation learning only */
  double rice_v;    /* negative: fading off; NaN: keep the scenario setting */
} txnav_episode_options;

typedef struct txnav_step {
  int k;
  double p1, p2, b, r, u_v, u_h, reward;
} txnav_step;

TXNAV_API const char* txnav_version(void);
/* Message of the last failed call on this thread, "" if none. */
TXNAV_API const char* txnav_last_error(void);

TXNAV_API size_t txnav_builtin_scenario_count(void);
TXNAV_API const char* txnav_builtin_scenario_name(size_t index);
/* Builtin name first, then a file path. */
TXNAV_API txnav_status txnav_scenario_load(const char* name_or_path, txnav_scenario** out);
TXNAV_API txnav_status txnav_scenario_parse(const char* json_text, txnav_scenario** out);
TXNAV_API const char* txnav_scenario_name(const txnav_scenario* s);
TXNAV_API void txnav_scenario_free(txnav_scenario* s);

TXNAV_API txnav_episode_options txnav_episode_options_default(void);
TXNAV_API txnav_status txnav_episode_run(const txnav_scenario* s, txnav_controller controller,
                                         const txnav_episode_options* options, uint64_t seed, txnav_episode** out);
TXNAV_API size_t txnav_episode_steps(const txnav_episode* e);
TXNAV_API txnav_status txnav_episode_row(const txnav_episode* e, size_t index, txnav_step* out);
TXNAV_API int txnav_episode_emptied(const txnav_episode* e);
TXNAV_API int txnav_episode_reached_goal(const txnav_episode* e);
TXNAV_API int txnav_episode_collided(const txnav_episode* e);
TXNAV_API int txnav_episode_capped(const txnav_episode* e);
TXNAV_API txnav_status txnav_episode_write_csv(const txnav_episode* e, const char* path);
TXNAV_API void txnav_episode_free(txnav_episode* e);

TXNAV_API txnav_status txnav_experiment_load(const char* path, txnav_experiment** out);
TXNAV_API txnav_status txnav_experiment_parse(const char* json_text, txnav_experiment** out);
TXNAV_API const char* txnav_experiment_name(const txnav_experiment* x);
TXNAV_API void txnav_experiment_set_seed(txnav_experiment* x, uint64_t seed);
/* Overrides the scenario reference of the experiment; fails if it cannot be loaded. */
TXNAV_API txnav_status txnav_experiment_set_scenario(txnav_experiment* x, const char* name_or_path);
/* Writes <out_dir>/<name>/summary.csv and per-episode CSVs. */
TXNAV_API txnav_status txnav_experiment_run(const txnav_experiment* x, const char* out_dir, int jobs);
TXNAV_API void txnav_experiment_free(txnav_experiment* x);

TXNAV_API size_t txnav_sweep_count(void);
TXNAV_API const char* txnav_sweep_name(size_t index);
/* Builds the preset batch as a list of experiments. */
TXNAV_API txnav_status txnav_sweep_build(const char* name, uint64_t seed, txnav_experiment*** out, size_t* count);
TXNAV_API void txnav_sweep_free(txnav_experiment** list, size_t count);

/* Renders an episode CSV over the scenario's rate field as SVG. */
TXNAV_API txnav_status txnav_plot(const char* episode_csv_path, const txnav_scenario* s, const char* svg_path);

#ifdef __cplusplus
}
#endif

#endif /* TXNAV_TXNAV_H */
