#include "fixtures.hpp"

#include "gridforge/observers/observers.hpp"
#include "gridforge/util/splitmix.hpp"

#include <gtest/gtest.h>

using namespace gridforge;

namespace {

obs::VectorObservation rotated(obs::VectorObservation v, int times)
{
    for (int i = 0; i < times; ++i) {
        v = obs::rotate_window(v);
    }
    return v;
}

sim::GameState random_state(const std::shared_ptr<const sim::Game>& game, SplitMix64& rng, int level)
{
    auto s = support::reset_level(game, level, rng.next());
    const int steps = static_cast<int>(rng.below(60));
    const auto n = game->action_space().size();
    for (int t = 0; t < steps && s.status() == sim::Status::running; ++t) {
        (void)sim::step(s, static_cast<int>(rng.below(n)));
    }
    return s;
}

} // namespace

TEST(Observers, AsciiOfResetLevelIsTheSource)
{
    const auto& game = support::sokoban();
    for (int level = 0; level < 2; ++level) {
        EXPECT_EQ(obs::ascii_obs(support::reset_level(game, level)),
                  gdy::normalize_level_string(game->document().environment.levels[static_cast<std::size_t>(level)]));
    }
}

TEST(Observers, SokobanVectorIsOneHot)
{
    const auto& game = support::sokoban();
    const auto s = support::reset_level(game, 0);
    const auto v = obs::vector_obs(s, game->document().environment.observer);
    ASSERT_EQ(v.width, 7);
    ASSERT_EQ(v.height, 7);
    ASSERT_EQ(v.channels, 4);
    ASSERT_EQ(v.data.size(), 7u * 7u * 4u);
    const auto rows = gdy::normalize_level_string(game->document().environment.levels[0]);
    const std::string chars = "bwhA"; // declaration order: box, wall, hole, avatar
    for (int y = 0; y < 7; ++y) {
        for (int x = 0; x < 7; ++x) {
            const char c = rows[static_cast<std::size_t>(y * 8 + x)];
            for (int ch = 0; ch < 4; ++ch) {
                EXPECT_EQ(v.at(x, y, ch), c == chars[static_cast<std::size_t>(ch)] ? 1 : 0) << x << "," << y;
            }
        }
    }
    EXPECT_EQ(v.layout[0], (obs::Channel{"object", "box"}));
}

TEST(Observers, EscapeRoomChannelLayout)
{
    const auto& game = support::escape_room();
    const auto& doc = game->document();
    const auto layout = obs::channel_layout(doc, doc.environment.observer);
    ASSERT_EQ(layout.size(), 14u + 4u + 20u);
    EXPECT_EQ(layout[14], (obs::Channel{"orientation", "left"}));
    EXPECT_EQ(layout[18], (obs::Channel{"variable", "ach_collect_coal"}));
    EXPECT_EQ(obs::observation_shape(doc, doc.environment.observer, 30, 30), (obs::Shape{7, 9, 38}));
}

TEST(Observers, WindowCentresOnAvatar)
{
    const auto& game = support::escape_room();
    auto s = support::reset_level(game, 0);
    const auto& config = game->document().environment.observer;
    const auto v = obs::vector_obs(s, config);
    ASSERT_EQ(v.width, 7);
    ASSERT_EQ(v.height, 9);
    const int player = 0;
    EXPECT_EQ(v.at(3, 4, player), 1);
    EXPECT_EQ(v.at(3, 4, 14 + static_cast<int>(sim::Direction::down)), 1);
    // the avatar sits at (2,2): window cell (0,0) is world (-1,-2), outside the grid
    for (int c = 0; c < v.channels; ++c) {
        EXPECT_EQ(v.at(0, 0, c), 0);
    }
    // variable channels are broadcast to every in-grid cell
    EXPECT_EQ(v.at(3, 4, 18), 0);
}

TEST(Observers, RotateWindowFourCycle)
{
    const auto& game = support::escape_room();
    const auto& config = game->document().environment.observer;
    SplitMix64 rng(99);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_state(game, rng, i % 3);
        const auto v = obs::vector_obs(s, config);
        const auto once = obs::rotate_window(v);
        EXPECT_EQ(once.width, v.height);
        EXPECT_EQ(once.height, v.width);
        EXPECT_NE(once, v);
        EXPECT_EQ(rotated(v, 4), v);
    }
}

TEST(Observers, RotateWindowIsClockwise)
{
    obs::VectorObservation v{2, 1, 1, {1, 2}, {{"object", "x"}}};
    const auto r = obs::rotate_window(v);
    ASSERT_EQ(r.width, 1);
    ASSERT_EQ(r.height, 2);
    EXPECT_EQ(r.at(0, 0, 0), 1);
    EXPECT_EQ(r.at(0, 1, 0), 2);
}

TEST(Observers, RotateWithAvatarTurnsTheView)
{
    const auto& game = support::escape_room();
    gdy::ObserverConfig fixed = game->document().environment.observer;
    fixed.window_width = 7;
    fixed.window_height = 7;
    gdy::ObserverConfig turning = fixed;
    turning.rotate_with_avatar = true;
    SplitMix64 rng(5);
    // the facing direction ends up at the top of the view
    const std::map<sim::Direction, int> clockwise_turns = {
        {sim::Direction::up, 0}, {sim::Direction::left, 1}, {sim::Direction::down, 2}, {sim::Direction::right, 3}};
    int seen = 0;
    for (int i = 0; i < 200; ++i) {
        const auto s = random_state(game, rng, i % 3);
        if (s.avatar() == nullptr) {
            continue;
        }
        const auto expected = rotated(obs::vector_obs(s, fixed), clockwise_turns.at(s.avatar()->orientation));
        EXPECT_EQ(obs::vector_obs(s, turning), expected);
        seen |= 1 << static_cast<int>(s.avatar()->orientation);
    }
    EXPECT_EQ(seen, 0xF);
}

TEST(Observers, EntityObservation)
{
    const auto& game = support::sokoban();
    const auto s = support::reset_string(game, "hbA");
    const auto e = obs::entity_obs(s, game->document().environment.observer);
    ASSERT_EQ(e.entities.size(), 3u);
    EXPECT_EQ(e.entities[0].object, "hole");
    EXPECT_EQ(e.entities[2].object, "avatar");
    EXPECT_EQ(e.entities[2].x, 2);
    EXPECT_TRUE(e.global_entity.empty());
}

TEST(Observers, RenderMapAutotiles)
{
    const auto& game = support::sokoban();
    const auto s = support::reset_string(game, "www\nwA.\nw..");
    const auto m = obs::render_map(s);
    ASSERT_EQ(m.width, 3);
    ASSERT_EQ(m.at(0, 0).size(), 1u);
    EXPECT_EQ(m.at(0, 0)[0].autotile_index, 2 + 4); // east and south neighbours
    EXPECT_EQ(m.at(1, 0)[0].autotile_index, 2 + 8);
    EXPECT_EQ(m.at(0, 2)[0].autotile_index, 1);
    EXPECT_TRUE(m.at(2, 2).empty());
    EXPECT_EQ(m.at(1, 1)[0].object, "avatar");
    EXPECT_FALSE(m.at(1, 1)[0].autotile_index.has_value());
}

TEST(Observers, EmptyStateObservesNothing)
{
    const auto& game = support::sokoban();
    const auto s = sim::materialize(game, gdy::parse_level(game->document(), "..\n.."), 0);
    EXPECT_EQ(obs::ascii_obs(s), "..\n..");
    const auto v = obs::vector_obs(s, game->document().environment.observer);
    for (auto x : v.data) {
        EXPECT_EQ(x, 0);
    }
}
