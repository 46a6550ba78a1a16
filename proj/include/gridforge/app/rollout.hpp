#pragma once

#include "gridforge/app/codec.hpp"
#include "gridforge/env/env.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gridforge::app {

inline constexpr std::int64_t kDefaultRolloutMaxSteps = 1000;

enum class Policy { random, noop };

struct RolloutOptions {
    int episodes = 1;
    Policy policy = Policy::random;
    std::uint64_t seed = 0; // episode i runs with seed + i
    std::variant<int, std::string, levelgen::GenParams> level = 0;
    // Applies only when the document declares no MaxSteps.
    std::int64_t max_steps = kDefaultRolloutMaxSteps;
};

struct RolloutStats {
    int episodes = 0;
    double mean_reward = 0.0;
    double mean_length = 0.0;
    double solve_rate = 0.0;
    std::vector<std::uint64_t> seeds;
};

// For generated levels episode i also uses generator seed + i. The random
// policy draws uniformly over all action ids from a splitmix64 seeded per episode.
[[nodiscard]] RolloutStats rollout(const std::shared_ptr<const sim::Game>& game, const RolloutOptions& options);
[[nodiscard]] json to_json(const RolloutStats& stats);

struct BenchResult {
    std::uint64_t steps = 0;
    double seconds = 0.0;
    double steps_per_second = 0.0;
};

// Raw engine stepping with a random policy, no observations, one thread;
// resets whenever an episode ends.
[[nodiscard]] BenchResult bench(const std::shared_ptr<const sim::Game>& game, const gdy::LevelLayout& layout,
                                std::uint64_t steps, std::uint64_t seed);
[[nodiscard]] json to_json(const BenchResult& result);

} // namespace gridforge::app
