#pragma once

#include "gridforge/env/env.hpp"
#include "gridforge/gdy/parser.hpp"
#include "gridforge/observers/observers.hpp"
#include "gridforge/sim/engine.hpp"
#include "gridforge/trajectory/trajectory.hpp"

#include <json.hpp>

#include <vector>

// JSON shapes shared by the CLI and the HTTP service.
namespace gridforge::app {

using nlohmann::json;

[[nodiscard]] json to_json(const std::vector<gdy::Diagnostic>& diagnostics);
[[nodiscard]] json to_json(const gdy::LevelLayout& layout);
[[nodiscard]] json to_json(const obs::RenderMap& map);
[[nodiscard]] json to_json(const sim::ActionSpace& space);
[[nodiscard]] json to_json(const std::vector<sim::Event>& events, const sim::Game& game);
[[nodiscard]] json mask_json(const std::vector<bool>& mask);
[[nodiscard]] json to_json(const traj::ReplayReport& report);

// Throws gdy::SchemaError on a malformed layout object.
[[nodiscard]] gdy::LevelLayout layout_from_json(const json& j);
// {"index":N} | {"string":S} | {"generator":{"seed","width","height",...knobs}}; null means index 0.
// Throws gdy::SchemaError.
[[nodiscard]] std::variant<int, std::string, levelgen::GenParams> level_from_json(const json& j);

// A syntax error reported as a single diagnostic.
[[nodiscard]] gdy::Diagnostic syntax_diagnostic(const gdy::SyntaxError& e);

} // namespace gridforge::app
