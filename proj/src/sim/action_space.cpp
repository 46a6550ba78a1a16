#include "gridforge/sim/action_space.hpp"

#include <array>
#include <cctype>

namespace gridforge::sim {

std::string_view to_string(Direction d) noexcept
{
    switch (d) {
    case Direction::left: return "left";
    case Direction::right: return "right";
    case Direction::down: return "down";
    case Direction::up: return "up";
    }
    return "?";
}

std::optional<Direction> parse_direction(std::string_view text) noexcept
{
    if (text == "left") return Direction::left;
    if (text == "right") return Direction::right;
    if (text == "down") return Direction::down;
    if (text == "up") return Direction::up;
    return std::nullopt;
}

const ActionEntry* ActionSpace::find_by_key(char key) const noexcept
{
    const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(key)));
    for (const auto& e : entries) {
        if (e.key.size() == 1 && e.key.front() == upper) {
            return &e;
        }
    }
    return nullptr;
}

namespace {

std::string title_case(std::string_view name)
{
    std::string out;
    bool start = true;
    for (char c : name) {
        if (c == '_') {
            out.push_back(' ');
            start = true;
            continue;
        }
        out.push_back(start ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
        start = false;
    }
    return out;
}

} // namespace

ActionSpace build_action_space(const gdy::GdyDocument& document)
{
    static constexpr std::array<Direction, 4> order{Direction::left, Direction::right, Direction::down,
                                                    Direction::up};
    static constexpr std::array<const char*, 4> movement_keys{"A", "D", "S", "W"};
    static constexpr std::array<const char*, 13> pool{"E", "Q", "R", "T", "1", "2", "3",
                                                      "4", "5", "6", "7", "8", "9"};

    ActionSpace space;
    ActionEntry noop;
    noop.id = 0;
    noop.input = "none";
    noop.label = "No-Op";
    space.entries.push_back(noop);

    bool movement_bound = false;
    for (std::size_t a = 0; a < document.actions.size(); ++a) {
        const auto& action = document.actions[a];
        const std::string base = action.description.empty() ? title_case(action.name) : action.description;
        if (action.input_mapping == gdy::InputMapping::directional) {
            const bool movement = !movement_bound;
            movement_bound = true;
            for (std::size_t i = 0; i < order.size(); ++i) {
                ActionEntry e;
                e.id = static_cast<int>(space.entries.size());
                e.action_name = action.name;
                e.action_index = static_cast<int>(a);
                e.direction = order[i];
                e.delta = delta_of(order[i]);
                e.input = std::string(to_string(order[i]));
                e.label = base + " " + title_case(e.input);
                if (movement) {
                    e.key = movement_keys[i];
                }
                space.entries.push_back(std::move(e));
            }
        } else {
            ActionEntry e;
            e.id = static_cast<int>(space.entries.size());
            e.action_name = action.name;
            e.action_index = static_cast<int>(a);
            e.input = "faced";
            e.label = base;
            space.entries.push_back(std::move(e));
        }
    }

    std::size_t next = 0;
    for (auto& e : space.entries) {
        if (e.key.empty() && next < pool.size()) {
            e.key = pool[next++];
        }
    }
    return space;
}

} // namespace gridforge::sim
