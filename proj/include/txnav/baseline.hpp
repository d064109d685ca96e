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

#include "txnav/episode.hpp"
#include "txnav/llr.hpp"
#include "txnav/world.hpp"

/// Myopic gradient ascent on the locally regressed rate field.
namespace txnav::baseline {

struct GradientConfig {
  llr::LlrConfig llr{.neighbors = 3};  ///< at least 3 neighbors
  int max_steps = 0;                   ///< 0 uses the scenario limit
};

/// Full-speed move along the estimated rate gradient at the current
/// position. Without a usable gradient, heads (k mod 4) * pi/2.
Action gradient_action(const RobotState& x, const llr::SampleStore& store, const Scenario& s, int k,
                       const GradientConfig& cfg = {});

/// Runs gradient ascent until the buffer is empty. Scenarios with a goal then
/// drive straight to it. Throws ConfigError if the scenario has obstacles or
/// fewer than 3 neighbors are configured.
EpisodeLog run_gradient_episode(const Scenario& s, const GradientConfig& cfg, std::uint64_t seed);

}  // namespace txnav::baseline
