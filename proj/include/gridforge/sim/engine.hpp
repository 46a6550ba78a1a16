#pragma once

#include "gridforge/errors.hpp"
#include "gridforge/gdy/parser.hpp"
#include "gridforge/sim/game.hpp"
#include "gridforge/sim/state.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gridforge::sim {

enum class EventKind : std::uint8_t {
    mov,
    cascade,
    remove,
    spawn,
    add,
    sub,
    set,
    incr,
    decr,
    reward,
    cascade_overflow,
};

[[nodiscard]] std::string_view to_string(EventKind kind) noexcept;

struct Event {
    EventKind kind = EventKind::mov;
    int object = kEmptyObjectIndex; // acting object
    int x = 0;                      // where it happened
    int y = 0;

    friend bool operator==(const Event&, const Event&) = default;
};

struct StepResult {
    std::int64_t reward = 0;
    bool terminated = false; // win or lose
    bool truncated = false;  // max steps reached
    std::vector<Event> events;
    gdy::VariableMap info; // player variables after the step
};

// Places the layout's instances without checking for an avatar. Observers and
// tools that look at arbitrary layouts use this; episodes start with reset().
[[nodiscard]] GameState materialize(std::shared_ptr<const Game> game, const gdy::LevelLayout& layout,
                                    std::uint64_t seed);

// Throws MissingAvatar / MultipleAvatars (as Error) unless the layout holds
// exactly one avatar instance.
[[nodiscard]] GameState reset(std::shared_ptr<const Game> game, const gdy::LevelLayout& layout, std::uint64_t seed);

// Throws EpisodeOver when the state is not running, BadAction for an unknown id.
StepResult step(GameState& state, int action_id);

// One flag per action id. No-op is always valid; other ids are valid iff a
// behaviour would be selected. Throws EpisodeOver when the state is not running.
[[nodiscard]] std::vector<bool> valid_action_mask(const GameState& state);

// Canonical text the hashes are computed over. Live instances sorted by
// (y, x, z, name), one `name,x,y,z,orientation,{k=v,...}` line each, then
// `player:{k=v,...}`, `step:N` and `status:S`.
[[nodiscard]] std::string canonical_state_text(const GameState& state);
[[nodiscard]] std::uint64_t state_hash(const GameState& state);
// Same text without the step and status lines: the board and variables only.
[[nodiscard]] std::uint64_t configuration_hash(const GameState& state);

} // namespace gridforge::sim
