#pragma once

#include <filesystem>

#include <json.hpp>

#include "gridmender/scenario.hpp"

namespace gridmender::scenario {

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Parses a scenario document. Entities are sorted by id (the canonical
/// form), cross-references resolved, and every structural invariant checked.
Scenario parse_scenario(const nlohmann::json& doc);

/// Canonical serialization; parse(to_json(s)) reproduces s exactly.
nlohmann::json to_json(const Scenario& s);

/// Applies a sparse overlay (`{"patch": [...]}`, operations `set` / `remove`
/// addressed by section + entity id) to a raw scenario document.
nlohmann::json apply_overlay(nlohmann::json doc, const nlohmann::json& overlay);

}  // namespace gridmender::scenario
