#pragma once

#include "gridforge/errors.hpp"
#include "gridforge/gdy/parser.hpp"
#include "gridforge/sim/engine.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gridforge::traj {

inline constexpr int kVersion = 1;

struct GeneratorRef {
    std::uint64_t seed = 0;
    int width = 0;
    int height = 0;

    friend bool operator==(const GeneratorRef&, const GeneratorRef&) = default;
};

// Exactly one of: a level index into the document, a literal level string, or
// generator parameters (default knobs).
using LevelRef = std::variant<int, std::string, GeneratorRef>;

struct TrajectoryRecord {
    int version = kVersion;
    std::uint64_t gdy_hash = 0;
    LevelRef level = 0;
    std::uint64_t seed = 0;
    std::vector<int> actions;
    std::optional<std::uint64_t> final_hash;
    std::optional<std::int64_t> total_reward;

    friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

// Throws Error(level_unavailable) for an index outside the document's levels;
// generator and parse errors propagate.
[[nodiscard]] gdy::LevelLayout resolve_level(const gdy::GdyDocument& document, const LevelRef& level);

// A live session that remembers every action it applies.
class Recorder {
public:
    Recorder(std::shared_ptr<const sim::Game> game, LevelRef level, std::uint64_t seed);

    // Throws EpisodeOver / BadAction like sim::step; a rejected action is not recorded.
    sim::StepResult step(int action_id);

    [[nodiscard]] const sim::GameState& state() const noexcept { return state_; }
    // Carries the current state hash and return.
    [[nodiscard]] TrajectoryRecord record() const;

private:
    std::shared_ptr<const sim::Game> game_;
    LevelRef level_;
    std::uint64_t seed_;
    sim::GameState state_;
    std::vector<int> actions_;
};

// Runs the actions from reset and returns the finished record.
[[nodiscard]] TrajectoryRecord record(std::shared_ptr<const sim::Game> game, const LevelRef& level, std::uint64_t seed,
                                      const std::vector<int>& actions);

// Compact JSON with sorted keys; the bytes depend only on the record.
[[nodiscard]] std::string save(const TrajectoryRecord& record);
// Throws gdy::SchemaError (codes INVALID_JSON, INVALID_TYPE, MISSING_FIELD,
// UNKNOWN_FIELD, INVALID_LEVEL, INVALID_HASH, UNSUPPORTED_VERSION).
[[nodiscard]] TrajectoryRecord load(std::string_view json_text);

struct ReplayReport {
    std::int64_t total_reward = 0;
    sim::Status status = sim::Status::running;
    std::uint64_t final_hash = 0;
    bool verified = false;
    std::vector<std::int64_t> rewards; // one per action
};

// Throws Error(hash_mismatch) when the record was made with another document,
// Error(level_unavailable) for a missing level; step errors propagate.
[[nodiscard]] ReplayReport replay(std::shared_ptr<const sim::Game> game, const TrajectoryRecord& record);

} // namespace gridforge::traj
