#pragma once

#include "gridforge/gdy/document.hpp"
#include "gridforge/sim/state.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gridforge::obs {

struct Channel {
    std::string kind; // "object", "orientation" or "variable"
    std::string name; // object name, direction name or player variable name

    friend bool operator==(const Channel&, const Channel&) = default;
};

// Row-major (y, x, c).
struct VectorObservation {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::int64_t> data;
    std::vector<Channel> layout;

    [[nodiscard]] std::int64_t at(int x, int y, int c) const
    {
        return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) *
                        static_cast<std::size_t>(channels) +
                    static_cast<std::size_t>(c)];
    }

    friend bool operator==(const VectorObservation&, const VectorObservation&) = default;
};

struct Shape {
    int width = 0;
    int height = 0;
    int channels = 0;

    friend bool operator==(const Shape&, const Shape&) = default;
};

// Channel order: objects in declaration order, then left/right/down/up of the
// topmost instance when orientation channels are on, then player variables
// (sorted by name) repeated over every cell when variable channels are on.
[[nodiscard]] std::vector<Channel> channel_layout(const gdy::GdyDocument& document, const gdy::ObserverConfig& config);

// Window size if one is configured, else the given grid size.
[[nodiscard]] Shape observation_shape(const gdy::GdyDocument& document, const gdy::ObserverConfig& config,
                                      int grid_width, int grid_height);

// Whole grid when no window is configured. Otherwise a window centred on the
// avatar (on the grid centre if there is none) with zeros outside the grid,
// turned so the avatar faces up when rotate_with_avatar is set.
[[nodiscard]] VectorObservation vector_obs(const sim::GameState& state, const gdy::ObserverConfig& config);

// A quarter turn clockwise: a W x H x C tensor becomes H x W x C.
[[nodiscard]] VectorObservation rotate_window(const VectorObservation& observation);

// One character per cell, rows joined with '\n'.
[[nodiscard]] std::string ascii_obs(const sim::GameState& state);

struct Entity {
    std::string object;
    int x = 0;
    int y = 0;
    int z = 0;
    sim::Direction orientation = sim::Direction::down;
    gdy::VariableMap variables;

    friend bool operator==(const Entity&, const Entity&) = default;
};

struct EntityObservation {
    std::vector<Entity> entities;
    gdy::VariableMap global_entity; // the player variables

    friend bool operator==(const EntityObservation&, const EntityObservation&) = default;
};

// Every live instance inside the observation window (all of them without a
// window), ordered by (y, x, z) in world coordinates.
[[nodiscard]] EntityObservation entity_obs(const sim::GameState& state, const gdy::ObserverConfig& config);

struct RenderTile {
    std::string object;
    std::string tile;
    int z = 0;
    sim::Direction orientation = sim::Direction::down;
    // N=1, E=2, S=4, W=8 over same-object neighbours; only for autotiled objects.
    std::optional<int> autotile_index;

    friend bool operator==(const RenderTile&, const RenderTile&) = default;
};

struct RenderMap {
    int width = 0;
    int height = 0;
    std::vector<std::vector<RenderTile>> cells; // row-major, each ascending Z

    [[nodiscard]] const std::vector<RenderTile>& at(int x, int y) const
    {
        return cells[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
    }

    friend bool operator==(const RenderMap&, const RenderMap&) = default;
};

[[nodiscard]] RenderMap render_map(const sim::GameState& state);

} // namespace gridforge::obs
