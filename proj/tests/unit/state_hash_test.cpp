#include "fixtures.hpp"

#include "gridforge/util/hash.hpp"

#include <gtest/gtest.h>

using namespace gridforge;

// Golden values come from tests/oracles/state_hash_oracle.py, which rebuilds
// the canonical text from the YAML with no engine code involved.
TEST(StateHash, GoldenValues)
{
    EXPECT_EQ(to_hex64(sim::state_hash(support::reset_level(support::sokoban(), 0))), "372d64848153cb79");
    EXPECT_EQ(to_hex64(sim::state_hash(support::reset_level(support::sokoban(), 1))), "83eddcf1dbffa737");
    EXPECT_EQ(to_hex64(sim::state_hash(support::reset_level(support::escape_room(), 0))), "397344ad16aef4ee");
}

TEST(StateHash, CanonicalText)
{
    auto s = support::reset_string(support::sokoban(), "hbA");
    EXPECT_EQ(sim::canonical_state_text(s),
              "hole,0,0,1,down,{}\n"
              "box,1,0,2,down,{}\n"
              "avatar,2,0,2,down,{}\n"
              "player:{}\n"
              "step:0\n"
              "status:running\n");
    EXPECT_EQ(sim::state_hash(s), fnv1a64(sim::canonical_state_text(s)));
}

TEST(StateHash, SeedDoesNotChangeTheBoard)
{
    EXPECT_EQ(sim::state_hash(support::reset_level(support::sokoban(), 0, 1)),
              sim::state_hash(support::reset_level(support::sokoban(), 0, 99)));
}

TEST(StateHash, ConfigurationIgnoresStepCounter)
{
    auto s = support::reset_level(support::sokoban(), 0);
    const auto config = sim::configuration_hash(s);
    const auto full = sim::state_hash(s);
    (void)sim::step(s, 0);
    EXPECT_EQ(sim::configuration_hash(s), config);
    EXPECT_NE(sim::state_hash(s), full);
}

TEST(Hex64, RoundTrip)
{
    std::uint64_t v = 0;
    EXPECT_TRUE(parse_hex64("00000000000000ff", v));
    EXPECT_EQ(v, 255u);
    EXPECT_TRUE(parse_hex64("ABCDEF0123456789", v));
    EXPECT_EQ(to_hex64(v), "abcdef0123456789");
    EXPECT_FALSE(parse_hex64("abc", v));
    EXPECT_FALSE(parse_hex64("zz00000000000000", v));
    EXPECT_EQ(fnv1a64(""), Fnv1a64::kOffsetBasis);
    EXPECT_EQ(to_hex64(fnv1a64("a")), "af63dc4c8601ec8c");
}
