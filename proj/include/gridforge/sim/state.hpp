#pragma once

#include "gridforge/gdy/document.hpp"
#include "gridforge/sim/action_space.hpp"
#include "gridforge/sim/game.hpp"
#include "gridforge/util/splitmix.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridforge::sim {

enum class Status : std::uint8_t { running, win, lose, truncated };

[[nodiscard]] std::string_view to_string(Status s) noexcept;

struct Instance {
    int id = 0;
    int object = 0; // index into GdyDocument::objects
    int x = 0;
    int y = 0;
    int z = 0;
    Direction orientation = Direction::down;
    std::vector<std::int64_t> variables; // slot order of Game::object_variable_names
    bool alive = true;
};

class GameState {
public:
    [[nodiscard]] const Game& game() const noexcept { return *game_; }
    [[nodiscard]] const std::shared_ptr<const Game>& game_ptr() const noexcept { return game_; }
    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] bool in_bounds(int x, int y) const noexcept
    {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    // Indexed by id; removed instances stay with alive == false.
    [[nodiscard]] const std::vector<Instance>& instances() const noexcept { return instances_; }
    // Live instance ids in the cell, ascending Z.
    [[nodiscard]] std::span<const int> cell(int x, int y) const;
    // Topmost live instance, or null for an empty (or out-of-bounds) cell.
    [[nodiscard]] const Instance* top(int x, int y) const;
    [[nodiscard]] int count(int object) const { return counts_.at(static_cast<std::size_t>(object)); }
    [[nodiscard]] std::size_t live_instance_count() const noexcept;

    [[nodiscard]] const Instance* avatar() const noexcept;
    [[nodiscard]] const std::vector<std::int64_t>& player_values() const noexcept { return player_values_; }
    [[nodiscard]] std::optional<std::int64_t> player_variable(std::string_view name) const;
    [[nodiscard]] gdy::VariableMap player_variables() const;

    [[nodiscard]] std::uint64_t step_count() const noexcept { return step_count_; }
    [[nodiscard]] Status status() const noexcept { return status_; }
    [[nodiscard]] std::int64_t accumulated_return() const noexcept { return accumulated_return_; }
    [[nodiscard]] const SplitMix64& rng() const noexcept { return rng_; }

private:
    std::shared_ptr<const Game> game_;
    int width_ = 0;
    int height_ = 0;
    std::vector<Instance> instances_;
    std::vector<std::vector<int>> cells_; // [y * width + x]
    std::vector<int> counts_;
    std::vector<std::int64_t> player_values_;
    int avatar_id_ = -1;
    std::uint64_t step_count_ = 0;
    SplitMix64 rng_;
    Status status_ = Status::running;
    std::int64_t accumulated_return_ = 0;

    friend class Engine;
};

} // namespace gridforge::sim
