#include "gridforge/trajectory/trajectory.hpp"

#include "gridforge/levelgen/levelgen.hpp"
#include "gridforge/util/hash.hpp"

#include <json.hpp>

#include <limits>

namespace gridforge::traj {

using nlohmann::json;

gdy::LevelLayout resolve_level(const gdy::GdyDocument& document, const LevelRef& level)
{
    if (const int* index = std::get_if<int>(&level)) {
        const auto& levels = document.environment.levels;
        if (*index < 0 || static_cast<std::size_t>(*index) >= levels.size()) {
            throw Error(ErrorCode::level_unavailable, "level " + std::to_string(*index) + " does not exist (document has " +
                                                          std::to_string(levels.size()) + ")");
        }
        return gdy::parse_level(document, levels[static_cast<std::size_t>(*index)]);
    }
    if (const auto* text = std::get_if<std::string>(&level)) {
        return gdy::parse_level(document, *text);
    }
    const auto& gen = std::get<GeneratorRef>(level);
    levelgen::GenParams params;
    params.seed = gen.seed;
    params.width = gen.width;
    params.height = gen.height;
    return gdy::parse_level(document, levelgen::generate(params));
}

Recorder::Recorder(std::shared_ptr<const sim::Game> game, LevelRef level, std::uint64_t seed)
    : game_(std::move(game)),
      level_(std::move(level)),
      seed_(seed),
      state_(sim::reset(game_, resolve_level(game_->document(), level_), seed))
{
}

sim::StepResult Recorder::step(int action_id)
{
    sim::StepResult r = sim::step(state_, action_id);
    actions_.push_back(action_id);
    return r;
}

TrajectoryRecord Recorder::record() const
{
    TrajectoryRecord rec;
    rec.gdy_hash = game_->document().source_hash;
    rec.level = level_;
    rec.seed = seed_;
    rec.actions = actions_;
    rec.final_hash = sim::state_hash(state_);
    rec.total_reward = state_.accumulated_return();
    return rec;
}

TrajectoryRecord record(std::shared_ptr<const sim::Game> game, const LevelRef& level, std::uint64_t seed,
                        const std::vector<int>& actions)
{
    Recorder rec(std::move(game), level, seed);
    for (int a : actions) {
        rec.step(a);
    }
    return rec.record();
}

std::string save(const TrajectoryRecord& record)
{
    json j;
    j["version"] = record.version;
    j["gdy_hash"] = to_hex64(record.gdy_hash);
    if (const int* index = std::get_if<int>(&record.level)) {
        j["level"] = {{"index", *index}};
    } else if (const auto* text = std::get_if<std::string>(&record.level)) {
        j["level"] = {{"string", *text}};
    } else {
        const auto& g = std::get<GeneratorRef>(record.level);
        j["level"] = {{"generator", {{"seed", g.seed}, {"width", g.width}, {"height", g.height}}}};
    }
    j["seed"] = record.seed;
    j["actions"] = record.actions;
    if (record.final_hash) {
        j["final_hash"] = to_hex64(*record.final_hash);
    }
    if (record.total_reward) {
        j["total_reward"] = *record.total_reward;
    }
    return j.dump();
}

namespace {

class RecordReader {
public:
    TrajectoryRecord read(std::string_view text)
    {
        json j = json::parse(text.begin(), text.end(), nullptr, false);
        if (j.is_discarded()) {
            fail("INVALID_JSON", "", "not valid JSON");
        }
        if (!j.is_object()) {
            fail("INVALID_TYPE", "", "trajectory must be a JSON object");
        }
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (key != "version" && key != "gdy_hash" && key != "level" && key != "seed" && key != "actions" &&
                key != "final_hash" && key != "total_reward") {
                fail("UNKNOWN_FIELD", key, "unknown field `" + key + "`");
            }
        }
        TrajectoryRecord rec;
        const json& version = need(j, "version");
        if (!version.is_number_integer()) {
            fail("INVALID_TYPE", "version", "version must be an integer");
        }
        if (version.get<std::int64_t>() != kVersion) {
            fail("UNSUPPORTED_VERSION", "version",
                 "version " + version.dump() + " is not supported (expected " + std::to_string(kVersion) + ")");
        }
        rec.version = kVersion;
        rec.gdy_hash = hash(need(j, "gdy_hash"), "gdy_hash");
        rec.level = level(need(j, "level"));
        rec.seed = unsigned_int(need(j, "seed"), "seed");
        const json& actions = need(j, "actions");
        if (!actions.is_array()) {
            fail("INVALID_TYPE", "actions", "actions must be an array of integers");
        }
        for (std::size_t i = 0; i < actions.size(); ++i) {
            rec.actions.push_back(small_int(actions[i], "actions[" + std::to_string(i) + "]"));
        }
        if (j.contains("final_hash")) {
            rec.final_hash = hash(j["final_hash"], "final_hash");
        }
        if (j.contains("total_reward")) {
            const json& r = j["total_reward"];
            if (!r.is_number_integer()) {
                fail("INVALID_TYPE", "total_reward", "total_reward must be an integer");
            }
            if (r.is_number_unsigned() && r.get<std::uint64_t>() > std::numeric_limits<std::int64_t>::max()) {
                fail("INVALID_TYPE", "total_reward", "total_reward out of range");
            }
            rec.total_reward = r.get<std::int64_t>();
        }
        return rec;
    }

private:
    [[noreturn]] static void fail(std::string code, std::string path, std::string message)
    {
        throw gdy::SchemaError({{gdy::Severity::error, std::move(code), std::move(path), std::move(message)}});
    }

    static const json& need(const json& obj, const char* key)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            fail("MISSING_FIELD", key, std::string("missing field `") + key + "`");
        }
        return *it;
    }

    static std::uint64_t hash(const json& v, const std::string& path)
    {
        std::uint64_t out = 0;
        if (!v.is_string() || !parse_hex64(v.get<std::string>(), out)) {
            fail("INVALID_HASH", path, path + " must be 16 lowercase hex digits");
        }
        return out;
    }

    static std::uint64_t unsigned_int(const json& v, const std::string& path)
    {
        if (v.is_number_unsigned()) {
            return v.get<std::uint64_t>();
        }
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
            return static_cast<std::uint64_t>(v.get<std::int64_t>());
        }
        fail("INVALID_TYPE", path, path + " must be a non-negative integer");
    }

    static int small_int(const json& v, const std::string& path)
    {
        if (!v.is_number_integer()) {
            fail("INVALID_TYPE", path, path + " must be an integer");
        }
        if (v.is_number_unsigned() ? v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<int>::max())
                                   : (v.get<std::int64_t>() < std::numeric_limits<int>::min() ||
                                      v.get<std::int64_t>() > std::numeric_limits<int>::max())) {
            fail("INVALID_TYPE", path, path + " out of range");
        }
        return static_cast<int>(v.get<std::int64_t>());
    }

    static LevelRef level(const json& v)
    {
        if (!v.is_object() || v.size() != 1) {
            fail("INVALID_LEVEL", "level", "level must hold exactly one of index, string, generator");
        }
        if (v.contains("index")) {
            return small_int(v["index"], "level.index");
        }
        if (v.contains("string")) {
            if (!v["string"].is_string()) {
                fail("INVALID_TYPE", "level.string", "level.string must be a string");
            }
            return v["string"].get<std::string>();
        }
        if (v.contains("generator")) {
            const json& g = v["generator"];
            if (!g.is_object()) {
                fail("INVALID_TYPE", "level.generator", "level.generator must be an object");
            }
            for (const auto& [key, value] : g.items()) {
                (void)value;
                if (key != "seed" && key != "width" && key != "height") {
                    fail("UNKNOWN_FIELD", "level.generator." + key, "unknown field `" + key + "`");
                }
            }
            GeneratorRef ref;
            ref.seed = unsigned_int(need(g, "seed"), "level.generator.seed");
            ref.width = small_int(need(g, "width"), "level.generator.width");
            ref.height = small_int(need(g, "height"), "level.generator.height");
            return ref;
        }
        fail("INVALID_LEVEL", "level", "level must hold exactly one of index, string, generator");
    }
};

} // namespace

TrajectoryRecord load(std::string_view json_text)
{
    return RecordReader().read(json_text);
}

ReplayReport replay(std::shared_ptr<const sim::Game> game, const TrajectoryRecord& record)
{
    const auto& doc = game->document();
    if (record.gdy_hash != doc.source_hash) {
        throw Error(ErrorCode::hash_mismatch, "trajectory was recorded against document " + to_hex64(record.gdy_hash) +
                                                  ", this document is " + to_hex64(doc.source_hash));
    }
    sim::GameState state = sim::reset(game, resolve_level(doc, record.level), record.seed);
    ReplayReport report;
    report.rewards.reserve(record.actions.size());
    for (int a : record.actions) {
        report.rewards.push_back(sim::step(state, a).reward);
    }
    report.total_reward = state.accumulated_return();
    report.status = state.status();
    report.final_hash = sim::state_hash(state);
    report.verified = (!record.final_hash || *record.final_hash == report.final_hash) &&
                      (!record.total_reward || *record.total_reward == report.total_reward);
    return report;
}

} // namespace gridforge::traj
