#include "gridforge/app/rollout.hpp"

#include "gridforge/util/splitmix.hpp"

#include <chrono>

namespace gridforge::app {

RolloutStats rollout(const std::shared_ptr<const sim::Game>& game, const RolloutOptions& options)
{
    RolloutStats stats;
    if (options.episodes <= 0) {
        return stats;
    }
    const auto declared = game->document().environment.max_steps;
    const std::int64_t limit = declared ? *declared : options.max_steps;
    const auto actions = game->action_space().size();
    double reward_sum = 0;
    double length_sum = 0;
    int solved = 0;
    for (int i = 0; i < options.episodes; ++i) {
        const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
        auto level = options.level;
        if (auto* gen = std::get_if<levelgen::GenParams>(&level)) {
            gen->seed += static_cast<std::uint64_t>(i);
        }
        sim::GameState state = sim::reset(game, env::resolve_level(game->document(), level), seed);
        SplitMix64 rng(seed);
        std::int64_t length = 0;
        while (state.status() == sim::Status::running && length < limit) {
            const int a = options.policy == Policy::noop ? 0 : static_cast<int>(rng.below(actions));
            (void)sim::step(state, a);
            ++length;
        }
        reward_sum += static_cast<double>(state.accumulated_return());
        length_sum += static_cast<double>(length);
        solved += state.status() == sim::Status::win ? 1 : 0;
        stats.seeds.push_back(seed);
    }
    stats.episodes = options.episodes;
    stats.mean_reward = reward_sum / options.episodes;
    stats.mean_length = length_sum / options.episodes;
    stats.solve_rate = static_cast<double>(solved) / options.episodes;
    return stats;
}

json to_json(const RolloutStats& stats)
{
    return {{"episodes", stats.episodes},
            {"mean_reward", stats.mean_reward},
            {"mean_length", stats.mean_length},
            {"solve_rate", stats.solve_rate},
            {"seeds", stats.seeds}};
}

BenchResult bench(const std::shared_ptr<const sim::Game>& game, const gdy::LevelLayout& layout, std::uint64_t steps,
                  std::uint64_t seed)
{
    const auto actions = game->action_space().size();
    SplitMix64 rng(seed);
    sim::GameState state = sim::reset(game, layout, seed);
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < steps; ++i) {
        if (state.status() != sim::Status::running) {
            state = sim::reset(game, layout, seed + i);
        }
        (void)sim::step(state, static_cast<int>(rng.below(actions)));
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {steps, seconds, seconds > 0 ? static_cast<double>(steps) / seconds : 0.0};
}

json to_json(const BenchResult& result)
{
    return {{"steps", result.steps}, {"seconds", result.seconds}, {"steps_per_second", result.steps_per_second}};
}

} // namespace gridforge::app
