#include "fixtures.hpp"

#include "gridforge/env/env.hpp"

#include <gtest/gtest.h>

using namespace gridforge;

TEST(Env, ResetAndStep)
{
    env::Env e(support::sokoban());
    EXPECT_FALSE(e.has_state());
    EXPECT_EQ(e.observation_shape(), (obs::Shape{7, 7, 4}));
    auto [o, info] = e.reset({});
    EXPECT_EQ(o.data.size(), 7u * 7u * 4u);
    EXPECT_EQ(info.variables.at("box:count"), 3);
    EXPECT_EQ(info.mask, (std::vector<bool>{true, true, true, false, false}));
    EXPECT_EQ(e.episode_count(), 1u);
    const auto out = e.step(1);
    EXPECT_EQ(out.reward, 0);
    EXPECT_FALSE(out.terminated);
    EXPECT_FALSE(out.autoreset);
    EXPECT_EQ(out.observation.width, 7);
}

TEST(Env, EpisodeOverAndMask)
{
    env::Env e(support::sokoban(), env::ObservationMode::none);
    EXPECT_THROW((void)e.step(0), Error);
    (void)e.reset({std::string("hbA"), 0});
    const auto out = e.step(1);
    EXPECT_TRUE(out.terminated);
    EXPECT_TRUE(out.observation.data.empty());
    EXPECT_EQ(out.info.mask, std::vector<bool>(5, false));
    try {
        (void)e.step(0);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), ErrorCode::episode_over);
    }
}

TEST(Env, LevelResolution)
{
    env::Env e(support::sokoban());
    try {
        (void)e.reset({7, 0});
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), ErrorCode::level_unavailable);
    }
    auto empty = support::compile(R"(
Environment:
  Name: bare
  Player:
    AvatarObject: a
Objects:
  - Name: a
    MapCharacter: a
)");
    env::Env bare(empty);
    try {
        (void)bare.reset({0, 0});
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), ErrorCode::no_levels);
    }
    EXPECT_NO_THROW((void)bare.reset({std::string("a."), 0}));
    EXPECT_EQ(bare.action_space().size(), 1u);
}

TEST(Env, GeneratedLevels)
{
    env::Env e(support::escape_room());
    levelgen::GenParams p;
    p.seed = 3;
    p.width = 12;
    p.height = 10;
    auto [o, info] = e.reset({p, 1});
    EXPECT_EQ(o.width, 7);
    EXPECT_EQ(o.height, 9);
    EXPECT_EQ(o.channels, 38);
    EXPECT_EQ(e.state().width(), 12);
    EXPECT_EQ(info.variables.at("cherry_tree:count"), 1);
}

TEST(VectorEnv, MatchesIndependentEnvs)
{
    const auto& game = support::escape_room();
    for (unsigned workers : {1u, 3u}) {
        env::VectorEnv venv(game, 4, env::ObservationMode::vector, workers);
        std::vector<env::Env> singles(4, env::Env(game));
        std::vector<env::ResetOptions> opts;
        for (int i = 0; i < 4; ++i) {
            opts.push_back({i % 3, static_cast<std::uint64_t>(i)});
        }
        const auto first = venv.reset(opts);
        for (int i = 0; i < 4; ++i) {
            EXPECT_EQ(first[static_cast<std::size_t>(i)].first,
                      singles[static_cast<std::size_t>(i)].reset(opts[static_cast<std::size_t>(i)]).first);
        }
        for (int t = 0; t < 50; ++t) {
            std::vector<int> actions{t % 12, (t * 7) % 12, (t * 5 + 1) % 12, 2};
            const auto outs = venv.step(actions);
            for (std::size_t i = 0; i < 4; ++i) {
                const auto one = singles[i].step(actions[i]);
                ASSERT_EQ(outs[i].observation, one.observation);
                ASSERT_EQ(outs[i].reward, one.reward);
            }
        }
    }
}

TEST(VectorEnv, AutoresetAfterEpisodeEnd)
{
    env::VectorEnv venv(support::sokoban(), 2, env::ObservationMode::none);
    (void)venv.reset({{std::string("hbA"), 10}, {0, 0}});
    auto outs = venv.step({1, 0});
    EXPECT_TRUE(outs[0].terminated);
    EXPECT_FALSE(outs[0].autoreset);
    EXPECT_EQ(outs[0].reward, 1);
    outs = venv.step({1, 0});
    EXPECT_TRUE(outs[0].autoreset);
    EXPECT_EQ(outs[0].reward, 0);
    EXPECT_EQ(venv.at(0).state().step_count(), 0);
    EXPECT_EQ(venv.at(0).last_options().seed, 11u);
    EXPECT_EQ(venv.at(0).episode_count(), 2u);
    EXPECT_FALSE(outs[1].autoreset);
}

TEST(VectorEnv, ReportsFailingInstance)
{
    env::VectorEnv venv(support::sokoban(), 3, env::ObservationMode::none, 2);
    try {
        (void)venv.reset({{0, 0}, {9, 0}, {4, 0}});
        FAIL();
    } catch (const env::InstanceError& e) {
        EXPECT_EQ(e.index(), 1u);
        EXPECT_EQ(e.code(), ErrorCode::level_unavailable);
    }
    (void)venv.reset({{0, 0}, {0, 0}, {0, 0}});
    try {
        (void)venv.step({0, 0, 9});
        FAIL();
    } catch (const env::InstanceError& e) {
        EXPECT_EQ(e.index(), 2u);
        EXPECT_EQ(e.code(), ErrorCode::bad_action);
    }
}
