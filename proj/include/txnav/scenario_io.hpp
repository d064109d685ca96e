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

#include <string>
#include <string_view>
#include <vector>

#include "txnav/world.hpp"

namespace txnav {

/// Scenario documents are JSON objects; the schema is described in
/// README.md ("Scenario files"). Throws ConfigError on malformed input and
/// IoError when the file cannot be read.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario_file(const std::string& path);

/// Names of the scenarios compiled into the library.
std::vector<std::string> builtin_scenario_names();
/// Throws ConfigError for an unknown name.
Scenario builtin_scenario(const std::string& name);
/// Builtin name first, then a file path.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace txnav
