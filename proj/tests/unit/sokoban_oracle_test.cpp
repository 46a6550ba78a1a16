#include "fixtures.hpp"

#include "gridforge/observers/observers.hpp"
#include "gridforge/util/splitmix.hpp"

#include <gtest/gtest.h>

using namespace gridforge;

// Random walks through the engine and an independent Sokoban model must agree
// on the board and the reward after every single step.
TEST(SokobanOracle, RandomWalksMatchReferenceModel)
{
    const auto& game = support::sokoban();
    const auto& levels = game->document().environment.levels;
    SplitMix64 rng(1234);
    for (int episode = 0; episode < 200; ++episode) {
        const int level = episode % 2;
        auto state = support::reset_level(game, level, static_cast<std::uint64_t>(episode));
        support::SokobanModel model(gdy::normalize_level_string(levels[static_cast<std::size_t>(level)]));
        ASSERT_EQ(obs::ascii_obs(state), model.ascii());
        for (int t = 0; t < 300 && state.status() == sim::Status::running; ++t) {
            const int a = static_cast<int>(rng.below(5));
            const auto r = sim::step(state, a);
            const int expected = model.step(a);
            ASSERT_EQ(r.reward, expected) << "episode " << episode << " step " << t;
            ASSERT_EQ(obs::ascii_obs(state), model.ascii()) << "episode " << episode << " step " << t;
            ASSERT_EQ(state.count(0), model.boxes());
            ASSERT_EQ(r.terminated, model.boxes() == 0);
        }
    }
}

TEST(SokobanOracle, BfsSolvesBothLevels)
{
    const auto& game = support::sokoban();
    for (int level = 0; level < 2; ++level) {
        const auto start = support::reset_level(game, level);
        const auto boxes = start.count(0);
        const auto result = support::bfs_solve(start);
        ASSERT_TRUE(result.plan.has_value()) << "level " << level;
        auto s = start;
        std::int64_t total = 0;
        for (int a : *result.plan) {
            total += sim::step(s, a).reward;
        }
        EXPECT_EQ(s.status(), sim::Status::win);
        EXPECT_EQ(total, boxes);
    }
}
