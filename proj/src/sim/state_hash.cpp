#include "gridforge/sim/engine.hpp"
#include "gridforge/util/hash.hpp"

#include <algorithm>
#include <tuple>

namespace gridforge::sim {

namespace {

void append_vars(std::string& out, const std::vector<std::string>& names, const std::vector<std::int64_t>& values)
{
    out.push_back('{');
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) {
            out.push_back(',');
        }
        out += names[i];
        out.push_back('=');
        out += std::to_string(values[i]);
    }
    out.push_back('}');
}

std::string board_text(const GameState& state)
{
    const Game& game = state.game();
    std::vector<const Instance*> live;
    live.reserve(state.live_instance_count());
    for (const auto& inst : state.instances()) {
        if (inst.alive) {
            live.push_back(&inst);
        }
    }
    std::sort(live.begin(), live.end(), [&](const Instance* a, const Instance* b) {
        return std::tie(a->y, a->x, a->z, game.object_name(a->object)) <
               std::tie(b->y, b->x, b->z, game.object_name(b->object));
    });
    std::string out;
    out.reserve(live.size() * 24 + 64);
    for (const Instance* inst : live) {
        out += game.object_name(inst->object);
        out.push_back(',');
        out += std::to_string(inst->x);
        out.push_back(',');
        out += std::to_string(inst->y);
        out.push_back(',');
        out += std::to_string(inst->z);
        out.push_back(',');
        out += to_string(inst->orientation);
        out.push_back(',');
        append_vars(out, game.object_variable_names(inst->object), inst->variables);
        out.push_back('\n');
    }
    out += "player:";
    append_vars(out, game.player_variable_names(), state.player_values());
    out.push_back('\n');
    return out;
}

} // namespace

std::string canonical_state_text(const GameState& state)
{
    std::string out = board_text(state);
    out += "step:";
    out += std::to_string(state.step_count());
    out += "\nstatus:";
    out += to_string(state.status());
    out.push_back('\n');
    return out;
}

std::uint64_t state_hash(const GameState& state)
{
    return fnv1a64(canonical_state_text(state));
}

std::uint64_t configuration_hash(const GameState& state)
{
    return fnv1a64(board_text(state));
}

} // namespace gridforge::sim
