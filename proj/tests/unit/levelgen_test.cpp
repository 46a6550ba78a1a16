#include "fixtures.hpp"

#include "gridforge/levelgen/levelgen.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace gridforge;

namespace {

int count_char(const std::string& s, char c)
{
    return static_cast<int>(std::count(s.begin(), s.end(), c));
}

ErrorCode code_of(const levelgen::GenParams& p)
{
    try {
        (void)levelgen::generate(p);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::io; // sentinel: no error
}

} // namespace

TEST(Levelgen, ShapeAndUniqueGoal)
{
    levelgen::GenParams p;
    p.seed = 11;
    const std::string level = levelgen::generate(p);
    const auto layout = gdy::parse_level(support::escape_room()->document(), level);
    EXPECT_EQ(layout.width, 24);
    EXPECT_EQ(layout.height, 24);
    EXPECT_EQ(count_char(level, 'A'), 1);
    EXPECT_EQ(count_char(level, 'C'), 1);
    // stone border
    const auto rows = level.substr(0, 24);
    EXPECT_EQ(rows, std::string(24, 'S'));
    for (const auto& pl : layout.placements) {
        if (pl.x == 0 || pl.y == 0 || pl.x == 23 || pl.y == 23) {
            EXPECT_EQ(pl.object, "stone");
        }
    }
}

TEST(Levelgen, DeterministicPerSeed)
{
    levelgen::GenParams a;
    a.seed = 5;
    levelgen::GenParams b = a;
    EXPECT_EQ(levelgen::generate(a), levelgen::generate(b));
    b.seed = 6;
    EXPECT_NE(levelgen::generate(a), levelgen::generate(b));
}

TEST(Levelgen, ResetsAndRuns)
{
    const auto& game = support::escape_room();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        levelgen::GenParams p;
        p.seed = seed;
        p.width = 10 + static_cast<int>(seed);
        p.height = 8 + static_cast<int>(seed % 5);
        auto s = support::reset_string(game, levelgen::generate(p));
        EXPECT_EQ(s.count(13), 1); // cherry_tree
        EXPECT_NE(s.avatar(), nullptr);
    }
}

TEST(Levelgen, OreCountsScaleWithArea)
{
    levelgen::GenParams p;
    const auto ores = levelgen::resolved_ores(p);
    EXPECT_EQ(ores.coal, 576 / 72);
    EXPECT_EQ(ores.iron, 576 / 144);
    EXPECT_EQ(ores.diamond, 576 / 288);
    p.coal = 0;
    EXPECT_EQ(levelgen::resolved_ores(p).coal, 0);
}

TEST(Levelgen, ParameterErrors)
{
    levelgen::GenParams p;
    p.width = 7;
    EXPECT_EQ(code_of(p), ErrorCode::unsatisfiable);
    p = {};
    p.water_threshold = 1.5;
    EXPECT_EQ(code_of(p), ErrorCode::invalid_params);
    p = {};
    p.stone_threshold = 0.9;
    p.lava_threshold = 0.8;
    EXPECT_EQ(code_of(p), ErrorCode::invalid_params);
    p = {};
    p.iron = -1;
    EXPECT_EQ(code_of(p), ErrorCode::invalid_params);
    p = {};
    p.width = 8;
    p.height = 8;
    p.coal = 40;
    EXPECT_EQ(code_of(p), ErrorCode::unsatisfiable);
}

TEST(Levelgen, ReachabilityHint)
{
    const auto& doc = support::escape_room()->document();
    EXPECT_EQ(levelgen::reachability_hint("SSSSS\nSAggS\nSggCS\nSSSSS", doc), levelgen::Reachability::land_reachable);
    EXPECT_EQ(levelgen::reachability_hint("SSSSS\nSAtCS\nSSSSS", doc), levelgen::Reachability::tools_required);
    EXPECT_EQ(levelgen::reachability_hint("SSSSS\nSAgSS\nSSSSS", doc), levelgen::Reachability::unknown);
    EXPECT_EQ(levelgen::to_string(levelgen::Reachability::tools_required), "tools_required");
}
