#pragma once

#include <string>

#include "json.hpp"

#include "bladedisk/scenario.hpp"

namespace bladedisk {

// Strict parser: unknown keys are validation errors naming the field.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario_file(const std::string& path);

// Fully resolved configuration (all defaults applied); feeding the result back
// through scenario_from_json reproduces the same scenario.
nlohmann::json scenario_to_json(const Scenario& scenario);
std::string dump_manifest(const Scenario& scenario);

}  // namespace bladedisk
