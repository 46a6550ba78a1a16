#pragma once

#include "gridforge/errors.hpp"
#include "gridforge/levelgen/levelgen.hpp"
#include "gridforge/observers/observers.hpp"
#include "gridforge/sim/engine.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gridforge::env {

enum class ObservationMode { vector, none };

struct ResetOptions {
    // Level index, literal level string, or generator parameters.
    std::variant<int, std::string, levelgen::GenParams> level = 0;
    std::uint64_t seed = 0;
};

struct Info {
    // Player variables plus a read-only `<object>:count` entry per object.
    gdy::VariableMap variables;
    // One flag per action id; all clear once the episode is over.
    std::vector<bool> mask;
};

struct StepOutput {
    obs::VectorObservation observation; // empty in ObservationMode::none
    std::int64_t reward = 0;
    bool terminated = false;
    bool truncated = false;
    Info info;
    std::vector<sim::Event> events;
    bool autoreset = false; // VectorEnv: this entry is the first observation of a new episode
};

class Env {
public:
    Env(std::shared_ptr<const sim::Game> game, ObservationMode mode = ObservationMode::vector);
    [[nodiscard]] static Env make(const gdy::GdyDocument& document, ObservationMode mode = ObservationMode::vector);

    [[nodiscard]] const sim::Game& game() const noexcept { return *game_; }
    [[nodiscard]] const std::shared_ptr<const sim::Game>& game_ptr() const noexcept { return game_; }
    [[nodiscard]] const sim::ActionSpace& action_space() const noexcept { return game_->action_space(); }
    // From the declared window, else level 0 (0 x 0 when there is neither).
    [[nodiscard]] obs::Shape observation_shape() const;
    [[nodiscard]] ObservationMode mode() const noexcept { return mode_; }

    // Throws NoLevels for a level index on a document without levels,
    // LevelUnavailable for an index out of range, and whatever parsing,
    // generation or sim::reset throw.
    std::pair<obs::VectorObservation, Info> reset(const ResetOptions& options);
    // Throws EpisodeOver (also before the first reset) and BadAction.
    StepOutput step(int action_id);

    [[nodiscard]] bool has_state() const noexcept { return state_.has_value(); }
    [[nodiscard]] const sim::GameState& state() const;
    [[nodiscard]] std::uint64_t episode_count() const noexcept { return episodes_; }
    [[nodiscard]] const ResetOptions& last_options() const noexcept { return options_; }

private:
    [[nodiscard]] obs::VectorObservation observe() const;
    [[nodiscard]] Info info() const;

    std::shared_ptr<const sim::Game> game_;
    ObservationMode mode_;
    std::optional<sim::GameState> state_;
    ResetOptions options_;
    std::uint64_t episodes_ = 0;
};

[[nodiscard]] gdy::VariableMap observed_variables(const sim::GameState& state);

[[nodiscard]] gdy::LevelLayout resolve_level(const gdy::GdyDocument& document,
                                             const std::variant<int, std::string, levelgen::GenParams>& level);

// Carries the index of the batch instance that failed, keeping the original code.
class InstanceError : public Error {
public:
    InstanceError(std::size_t index, const Error& cause);

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// n independent environments stepped together. An instance that finishes an
// episode returns its terminal observation; its next step ignores the action
// and returns the first observation of a new episode (autoreset == true),
// reset with the previous options and seed + 1 (generator seed + 1 too).
class VectorEnv {
public:
    VectorEnv(std::shared_ptr<const sim::Game> game, std::size_t n, ObservationMode mode = ObservationMode::vector,
              unsigned workers = 1);

    [[nodiscard]] std::size_t size() const noexcept { return envs_.size(); }
    [[nodiscard]] const Env& at(std::size_t i) const { return envs_.at(i); }

    std::vector<std::pair<obs::VectorObservation, Info>> reset(const std::vector<ResetOptions>& options);
    std::vector<StepOutput> step(const std::vector<int>& actions);

private:
    template <typename Fn>
    void for_each(Fn&& fn);

    std::vector<Env> envs_;
    std::vector<bool> done_;
    unsigned workers_;
};

} // namespace gridforge::env
