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

#include "txnav/episode.hpp"

#include <algorithm>

namespace txnav {

int EpisodeLog::collisions() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const StepRecord& r) { return r.collision; }));
}

double evaluate_return(const EpisodeLog& log) {
  double sum = 0.0;
  for (const StepRecord& r : log.rows) sum += r.reward;
  return sum;
}

}  // namespace txnav
