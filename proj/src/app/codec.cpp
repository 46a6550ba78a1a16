#include "gridforge/app/codec.hpp"

#include "gridforge/util/hash.hpp"

#include <limits>

namespace gridforge::app {

namespace {

[[noreturn]] void bad(std::string code, std::string path, std::string message)
{
    throw gdy::SchemaError({{gdy::Severity::error, std::move(code), std::move(path), std::move(message)}});
}

int int_field(const json& obj, const char* key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        bad("MISSING_FIELD", path + key, std::string("missing field `") + key + "`");
    }
    if (!it->is_number_integer() || it->get<std::int64_t>() < std::numeric_limits<int>::min() ||
        it->get<std::int64_t>() > std::numeric_limits<int>::max()) {
        bad("INVALID_TYPE", path + key, std::string("`") + key + "` must be an integer");
    }
    return it->get<int>();
}

std::uint64_t seed_field(const json& obj, const char* key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        bad("MISSING_FIELD", path + key, std::string("missing field `") + key + "`");
    }
    if (it->is_number_unsigned()) {
        return it->get<std::uint64_t>();
    }
    if (it->is_number_integer() && it->get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(it->get<std::int64_t>());
    }
    bad("INVALID_TYPE", path + key, std::string("`") + key + "` must be a non-negative integer");
}

} // namespace

json to_json(const std::vector<gdy::Diagnostic>& diagnostics)
{
    json out = json::array();
    for (const auto& d : diagnostics) {
        out.push_back({{"severity", std::string(gdy::to_string(d.severity))},
                       {"code", d.code},
                       {"path", d.path},
                       {"message", d.message}});
    }
    return out;
}

json to_json(const gdy::LevelLayout& layout)
{
    json placements = json::array();
    for (const auto& p : layout.placements) {
        placements.push_back({{"x", p.x}, {"y", p.y}, {"object", p.object}});
    }
    return {{"width", layout.width}, {"height", layout.height}, {"placements", std::move(placements)}};
}

json to_json(const obs::RenderMap& map)
{
    json cells = json::array();
    for (const auto& tiles : map.cells) {
        json cell = json::array();
        for (const auto& t : tiles) {
            cell.push_back({{"object", t.object},
                            {"tile", t.tile},
                            {"z", t.z},
                            {"orientation", std::string(sim::to_string(t.orientation))},
                            {"autotile", t.autotile_index ? json(*t.autotile_index) : json(nullptr)}});
        }
        cells.push_back(std::move(cell));
    }
    return {{"width", map.width}, {"height", map.height}, {"cells", std::move(cells)}};
}

json to_json(const sim::ActionSpace& space)
{
    json out = json::array();
    for (const auto& e : space.entries) {
        out.push_back({{"id", e.id}, {"action", e.action_name}, {"input", e.input}, {"label", e.label}, {"key", e.key}});
    }
    return out;
}

json to_json(const std::vector<sim::Event>& events, const sim::Game& game)
{
    json out = json::array();
    for (const auto& e : events) {
        out.push_back({{"kind", std::string(sim::to_string(e.kind))},
                       {"object", game.object_name(e.object)},
                       {"x", e.x},
                       {"y", e.y}});
    }
    return out;
}

json mask_json(const std::vector<bool>& mask)
{
    json out = json::array();
    for (bool b : mask) {
        out.push_back(b);
    }
    return out;
}

json to_json(const traj::ReplayReport& report)
{
    return {{"total_reward", report.total_reward},
            {"status", std::string(sim::to_string(report.status))},
            {"final_hash", to_hex64(report.final_hash)},
            {"verified", report.verified},
            {"rewards", report.rewards}};
}

gdy::LevelLayout layout_from_json(const json& j)
{
    if (!j.is_object()) {
        bad("INVALID_TYPE", "layout", "layout must be an object");
    }
    gdy::LevelLayout layout;
    layout.width = int_field(j, "width", "layout.");
    layout.height = int_field(j, "height", "layout.");
    if (layout.width < 1 || layout.height < 1) {
        bad("INVALID_LAYOUT", "layout", "width and height must be >= 1");
    }
    auto it = j.find("placements");
    if (it == j.end() || !it->is_array()) {
        bad("MISSING_FIELD", "layout.placements", "placements must be an array");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& p = (*it)[i];
        const std::string path = "layout.placements[" + std::to_string(i) + "].";
        if (!p.is_object() || !p.contains("object") || !p["object"].is_string()) {
            bad("INVALID_TYPE", path + "object", "placement needs x, y and object");
        }
        gdy::Placement pl{int_field(p, "x", path), int_field(p, "y", path), p["object"].get<std::string>()};
        if (pl.x < 0 || pl.y < 0 || pl.x >= layout.width || pl.y >= layout.height) {
            bad("INVALID_LAYOUT", path, "placement out of bounds");
        }
        layout.placements.push_back(std::move(pl));
    }
    return layout;
}

std::variant<int, std::string, levelgen::GenParams> level_from_json(const json& j)
{
    if (j.is_null()) {
        return 0;
    }
    if (!j.is_object() || j.size() != 1) {
        bad("INVALID_LEVEL", "level", "level must hold exactly one of index, string, generator");
    }
    if (j.contains("index")) {
        return int_field(j, "index", "level.");
    }
    if (j.contains("string")) {
        if (!j["string"].is_string()) {
            bad("INVALID_TYPE", "level.string", "level.string must be a string");
        }
        return j["string"].get<std::string>();
    }
    if (!j.contains("generator") || !j["generator"].is_object()) {
        bad("INVALID_LEVEL", "level", "level must hold exactly one of index, string, generator");
    }
    const json& g = j["generator"];
    levelgen::GenParams p;
    p.seed = seed_field(g, "seed", "level.generator.");
    p.width = int_field(g, "width", "level.generator.");
    p.height = int_field(g, "height", "level.generator.");
    for (const auto& [key, value] : g.items()) {
        const std::string path = "level.generator." + key;
        if (key == "seed" || key == "width" || key == "height") {
            continue;
        }
        if (key == "water_threshold" || key == "stone_threshold" || key == "lava_threshold" ||
            key == "tree_threshold") {
            if (!value.is_number()) {
                bad("INVALID_TYPE", path, key + " must be a number");
            }
            const double v = value.get<double>();
            (key == "water_threshold" ? p.water_threshold
             : key == "stone_threshold" ? p.stone_threshold
             : key == "lava_threshold"  ? p.lava_threshold
                                        : p.tree_threshold) = v;
        } else if (key == "coal" || key == "iron" || key == "diamond") {
            const int n = int_field(g, key.c_str(), "level.generator.");
            (key == "coal" ? p.coal : key == "iron" ? p.iron : p.diamond) = n;
        } else {
            bad("UNKNOWN_FIELD", path, "unknown generator field `" + key + "`");
        }
    }
    return p;
}

gdy::Diagnostic syntax_diagnostic(const gdy::SyntaxError& e)
{
    return {gdy::Severity::error, "SYNTAX_ERROR", "line " + std::to_string(e.line()) + ", column " +
                                                      std::to_string(e.column()),
            e.what()};
}

} // namespace gridforge::app
