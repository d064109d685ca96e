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

#pragma once

#include <cstdint>
#include <vector>

#include "txnav/world.hpp"

namespace txnav {

/// One control step: the state at step k, the rate measured there, the
/// applied action and the stage reward of the transition to step k + 1.
struct StepRecord {
  int k = 0;
  Position position;
  double buffer = 0.0;
  double rate = 0.0;
  Action action;
  double reward = 0.0;
  std::size_t estimator_samples = 0;  ///< size of the controller's sample memory after step k
  bool collision = false;             ///< position at k + 1 inside an obstacle
};

struct EpisodeLog {
  std::uint64_t seed = 0;
  std::vector<StepRecord> rows;
  RobotState final_state;
  bool emptied = false;       ///< buffer reached zero
  bool reached_goal = false;  ///< navigation episodes: at the goal with an empty buffer
  bool collided = false;      ///< at least one step ended inside an obstacle
  bool capped = false;        ///< stopped by the step limit

  int steps() const { return static_cast<int>(rows.size()); }
  bool terminated() const { return !capped; }
  int collisions() const;
};

/// Sum of the stage rewards.
double evaluate_return(const EpisodeLog& log);

}  // namespace txnav
