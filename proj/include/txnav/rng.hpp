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
#include <initializer_list>
#include <random>

namespace txnav {

/// All randomness flows through std::mt19937_64 engines. Seeds for the
/// individual engines are derived from a master seed by SplitMix64 mixing, so
/// any (seed, stream) pair names one reproducible sequence.
using Rng = std::mt19937_64;

/// Independent random streams inside one episode.
enum class Stream : std::uint64_t {
  Fading = 1,      ///< channel realizations only
  Controller = 2,  ///< controller-internal randomness
  Starts = 3,      ///< harness draws of initial positions
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Pure function of its arguments; order matters.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_stream(std::uint64_t episode_seed, Stream s) {
  return Rng{derive_seed(episode_seed, {static_cast<std::uint64_t>(s)})};
}

}  // namespace txnav
