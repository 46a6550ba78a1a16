#include "fixtures.hpp"

#include "gridforge/observers/observers.hpp"

#include <gtest/gtest.h>

using namespace gridforge;
using support::action_id;

namespace {

struct Walk {
    sim::GameState state;
    std::int64_t reward = 0;
    sim::StepResult last{};

    void go(int action)
    {
        last = sim::step(state, action);
        reward += last.reward;
    }
};

constexpr int kLeft = 1;
constexpr int kRight = 2;
constexpr int kDown = 3;
constexpr int kUp = 4;
constexpr int kDo = 5;

} // namespace

TEST(EscapeRoom, ChopWoodOnceRewardsOnce)
{
    Walk w{support::reset_level(support::escape_room(), 0)};
    w.go(kDown);  // (2,3)
    w.go(kRight); // bump the tree at (3,3), now facing it
    EXPECT_EQ(w.state.avatar()->x, 2);
    EXPECT_EQ(w.state.avatar()->orientation, sim::Direction::right);
    w.go(kDo);
    EXPECT_EQ(w.last.reward, 1);
    EXPECT_EQ(w.state.player_variable("inv_wood"), 1);
    EXPECT_EQ(w.state.player_variable("ach_collect_wood"), 1);
    EXPECT_EQ(obs::ascii_obs(w.state).substr(13 * 3, 12), "SgAggggggggS");

    // second tree at (6,2)
    w.go(kRight);
    w.go(kUp);
    w.go(kRight);
    w.go(kRight);
    w.go(kRight);
    EXPECT_EQ(w.state.avatar()->x, 5);
    w.go(kDo);
    EXPECT_EQ(w.last.reward, 0);
    EXPECT_EQ(w.state.player_variable("inv_wood"), 2);
}

TEST(EscapeRoom, EatingTheCherryWins)
{
    Walk w{support::reset_level(support::escape_room(), 0)};
    for (int i = 0; i < 3; ++i) {
        w.go(kRight); // to (5,2)
    }
    w.go(kUp); // (5,1)
    for (int i = 0; i < 4; ++i) {
        w.go(kRight); // to (9,1)
    }
    w.go(kDown);  // (9,2)
    w.go(kRight); // bump the cherry tree at (10,2)
    ASSERT_EQ(w.state.avatar()->x, 9);
    ASSERT_EQ(w.state.status(), sim::Status::running);
    w.go(kDo);
    EXPECT_EQ(w.last.reward, 10);
    EXPECT_TRUE(w.last.terminated);
    EXPECT_EQ(w.state.status(), sim::Status::win);
    EXPECT_EQ(w.reward, 10);
}

TEST(EscapeRoom, TruncatesAt500WithoutPenalty)
{
    Walk w{support::reset_level(support::escape_room(), 0)};
    for (int i = 0; i < 499; ++i) {
        w.go(0);
        ASSERT_FALSE(w.last.truncated);
    }
    w.go(0);
    EXPECT_TRUE(w.last.truncated);
    EXPECT_FALSE(w.last.terminated);
    EXPECT_EQ(w.last.reward, 0);
    EXPECT_EQ(w.state.step_count(), 500);
    EXPECT_EQ(w.state.status(), sim::Status::truncated);
}

TEST(EscapeRoom, LavaKills)
{
    Walk w{support::reset_string(support::escape_room(), "SSSS\nSAlS\nSCgS\nSSSS")};
    w.go(kRight);
    EXPECT_TRUE(w.last.terminated);
    EXPECT_EQ(w.state.status(), sim::Status::lose);
}

TEST(EscapeRoom, CraftingChain)
{
    const auto& game = *support::escape_room();
    Walk w{support::reset_string(support::escape_room(), "SSSSSS\nSAttgS\nSggSCS\nSSSSSS")};
    w.go(kDown);  // (1,2)
    w.go(kRight); // (2,2)
    w.go(kRight); // bump stone (3,2)
    EXPECT_FALSE(sim::valid_action_mask(w.state)[kDo]); // no pickaxe yet
    w.go(kDo);
    EXPECT_EQ(w.last.reward, 0);
    EXPECT_EQ(w.state.player_variable("inv_stone"), 0);

    w.go(kUp); // bump tree (2,1)
    w.go(kDo);
    w.go(kUp);    // (2,1)
    w.go(kRight); // bump tree (3,1)
    w.go(kDo);
    EXPECT_EQ(w.state.player_variable("inv_wood"), 2);
    EXPECT_EQ(w.reward, 1);

    w.go(action_id(game, "Place Table"));
    EXPECT_EQ(w.last.reward, 1);
    EXPECT_EQ(w.state.player_variable("inv_wood"), 1);
    w.go(action_id(game, "Make Wood Pickaxe"));
    EXPECT_EQ(w.last.reward, 1);
    EXPECT_EQ(w.state.player_variable("inv_wood_pickaxe"), 1);
    EXPECT_EQ(w.state.player_variable("inv_wood"), 0);

    w.go(kDown);  // (2,2)
    w.go(kRight); // bump stone (3,2)
    ASSERT_TRUE(sim::valid_action_mask(w.state)[kDo]);
    w.go(kDo);
    EXPECT_EQ(w.last.reward, 1);
    EXPECT_EQ(w.state.player_variable("inv_stone"), 1);
    w.go(action_id(game, "Place Stone"));
    EXPECT_EQ(w.last.reward, 1);
    EXPECT_EQ(w.state.player_variable("inv_stone"), 0);
    EXPECT_EQ(w.state.player_variable("ach_place_stone"), 1);
    EXPECT_EQ(obs::ascii_obs(w.state), "SSSSSS\nS.gTgS\nSgASCS\nSSSSSS");
}
