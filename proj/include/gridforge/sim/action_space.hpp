#pragma once

#include "gridforge/gdy/document.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gridforge::sim {

enum class Direction : std::uint8_t { left, right, down, up };

struct GridDelta {
    int dx = 0;
    int dy = 0;

    friend bool operator==(const GridDelta&, const GridDelta&) = default;
};

[[nodiscard]] constexpr GridDelta delta_of(Direction d) noexcept
{
    switch (d) {
    case Direction::left: return {-1, 0};
    case Direction::right: return {1, 0};
    case Direction::down: return {0, 1};
    case Direction::up: return {0, -1};
    }
    return {};
}

[[nodiscard]] std::string_view to_string(Direction d) noexcept;
[[nodiscard]] std::optional<Direction> parse_direction(std::string_view text) noexcept;

struct ActionEntry {
    int id = 0;
    // Empty for the no-op entry.
    std::string action_name;
    // -1 for the no-op entry, else the index into GdyDocument::actions.
    int action_index = -1;
    // "none", "left", "right", "down", "up" or "faced".
    std::string input;
    // e.g. "Move Left", "Interact With Object".
    std::string label;
    // Set for directional inputs; unary inputs use the avatar's facing at step time.
    std::optional<Direction> direction;
    GridDelta delta;
    // Single uppercase key or digit; empty when the key pool ran out.
    std::string key;
};

struct ActionSpace {
    std::vector<ActionEntry> entries;

    [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
    // Case-insensitive.
    [[nodiscard]] const ActionEntry* find_by_key(char key) const noexcept;
};

// Entry 0 is the no-op. Then, per action in declaration order, one entry per
// input: directional actions expand to left, right, down, up; unary actions to
// one entry. The first directional action is bound to A/D/S/W; every other
// entry, the no-op included, draws from E, Q, R, T, 1..9 in id order.
[[nodiscard]] ActionSpace build_action_space(const gdy::GdyDocument& document);

} // namespace gridforge::sim
