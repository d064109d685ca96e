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

#include "txnav/scenario_io.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "embedded_scenarios.hpp"
#include "txnav/error.hpp"

namespace txnav {

namespace {

using nlohmann::json;

Position read_point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw config_error(std::string(what) + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Orientation read_orientation(const std::string& s) {
  if (s == "horizontal") return Orientation::Horizontal;
  if (s == "vertical") return Orientation::Vertical;
  throw config_error("obstacle orientation must be 'horizontal' or 'vertical', got '" + s + "'");
}

std::vector<Action> read_actions(const json& j) {
  if (j.contains("list")) {
    std::vector<Action> out;
    for (const json& a : j.at("list")) out.push_back({a.at("velocity").get<double>(), wrap_angle(a.at("heading").get<double>())});
    return out;
  }
  return heading_actions(j.at("velocity").get<double>(), j.at("headings").get<int>(), j.value("stop", true));
}

RateModel read_rate(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "parametric") {
    ParametricRate pr;
    for (const json& a : j.at("antennas")) {
      pr.antennas.push_back({read_point(a.at("position"), "antenna position"), a.at("K").get<double>(),
                             a.at("h").get<double>(), a.at("gamma").get<double>(), a.at("R0").get<double>()});
    }
    return pr;
  }
  if (type == "tabulated") {
    TabulatedSnr t;
    t.xs = j.at("x").get<std::vector<double>>();
    t.ys = j.at("y").get<std::vector<double>>();
    const bool in_db = j.contains("snr_db");
    const json& rows = in_db ? j.at("snr_db") : j.at("snr");
    for (const json& row : rows)
      for (const json& v : row) t.snr.push_back(in_db ? std::pow(10.0, v.get<double>() / 10.0) : v.get<double>());
    t.R0 = j.value("R0", 1.0);
    t.bandwidth = j.value("bandwidth", 1.0);
    return t;
  }
  throw config_error("rate type must be 'parametric' or 'tabulated', got '" + type + "'");
}

Scenario from_json(const json& j) {
  Scenario s;
  s.name = j.value("name", std::string("unnamed"));
  const json& d = j.at("domain");
  const Position dx = read_point(d.at("x"), "domain.x");
  const Position dy = read_point(d.at("y"), "domain.y");
  s.domain = {dx.x, dx.y, dy.x, dy.y};
  s.sample_period = j.at("sample_period").get<double>();
  const std::string dyn = j.value("dynamics", std::string("unicycle"));
  if (dyn == "unicycle")
    s.dynamics = Dynamics::Unicycle;
  else if (dyn == "integrator")
    s.dynamics = Dynamics::Integrator;
  else
    throw config_error("dynamics must be 'unicycle' or 'integrator', got '" + dyn + "'");
  s.actions = read_actions(j.at("actions"));
  s.rate = read_rate(j.at("rate"));
  if (j.contains("fading") && j.at("fading").value("enabled", false))
    s.fading = make_fading(j.at("fading").at("rice_v").get<double>());
  if (j.contains("obstacles")) {
    for (const json& o : j.at("obstacles")) {
      Obstacle ob;
      ob.center = read_point(o.at("center"), "obstacle center");
      ob.length = o.at("length").get<double>();
      ob.width = o.at("width").get<double>();
      ob.orientation = read_orientation(o.at("orientation").get<std::string>());
      ob.enlarged_length = o.value("enlarged_length", ob.length);
      ob.enlarged_width = o.value("enlarged_width", ob.width);
      s.obstacles.push_back(ob);
    }
  }
  s.obstacle_penalty = j.value("obstacle_penalty", 100.0);
  s.buffer_max = j.at("buffer_max").get<double>();
  const json& init = j.at("initial");
  s.initial.position = read_point(init.at("position"), "initial.position");
  s.initial.buffer = init.at("buffer").get<double>();
  s.initial.extra = init.value("extra", std::vector<double>{});
  if (j.contains("goal") && !j.at("goal").is_null()) s.goal = read_point(j.at("goal"), "goal");
  s.max_steps = j.value("max_steps", 1000);
  if (j.contains("rate_max")) s.rate_max = j.at("rate_max").get<double>();
  if (j.contains("rate_min")) s.rate_min = j.at("rate_min").get<double>();
  return s;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  Scenario s;
  try {
    s = from_json(json::parse(json_text, nullptr, true, /*ignore_comments=*/true));
  } catch (const json::exception& e) {
    throw config_error(std::string("scenario document: ") + e.what());
  }
  validate(s);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> names;
  for (const auto& e : detail::embedded_scenarios()) names.emplace_back(e.name);
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  for (const auto& e : detail::embedded_scenarios())
    if (name == e.name) return parse_scenario(e.json);
  throw config_error("unknown builtin scenario '" + name + "'");
}

Scenario resolve_scenario(const std::string& name_or_path) {
  for (const auto& e : detail::embedded_scenarios())
    if (name_or_path == e.name) return parse_scenario(e.json);
  return load_scenario_file(name_or_path);
}

}  // namespace txnav
