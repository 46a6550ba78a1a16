#include "fixtures.hpp"

#include "gridforge/trajectory/trajectory.hpp"
#include "gridforge/util/hash.hpp"
#include "gridforge/util/splitmix.hpp"

#include <gtest/gtest.h>

using namespace gridforge;

namespace {

std::vector<int> random_actions(std::size_t n, std::size_t space, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<int> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(static_cast<int>(rng.below(space)));
    }
    return out;
}

std::string load_error_code(const std::string& text)
{
    try {
        (void)traj::load(text);
    } catch (const gdy::SchemaError& e) {
        return e.diagnostics().empty() ? "" : e.diagnostics().front().code;
    }
    return "OK";
}

} // namespace

TEST(Trajectory, RecordReplayRoundTrip)
{
    const auto& game = support::sokoban();
    auto rec = traj::record(game, 0, 7, {1, 1, 3, 2, 4, 1});
    EXPECT_EQ(rec.version, traj::kVersion);
    EXPECT_EQ(rec.gdy_hash, game->document().source_hash);
    ASSERT_TRUE(rec.final_hash.has_value());
    const auto loaded = traj::load(traj::save(rec));
    EXPECT_EQ(loaded, rec);
    const auto report = traj::replay(game, loaded);
    EXPECT_TRUE(report.verified);
    EXPECT_EQ(report.final_hash, *rec.final_hash);
    EXPECT_EQ(report.rewards.size(), 6u);
}

TEST(Trajectory, RecordStopsAtEpisodeEnd)
{
    const auto& game = support::sokoban();
    EXPECT_THROW((void)traj::record(game, std::string("hbA"), 0, {1, 1}), Error);
    auto rec = traj::record(game, std::string("hbA"), 0, {1});
    EXPECT_EQ(rec.total_reward, 1);
}

TEST(Trajectory, SaveIsCanonical)
{
    traj::TrajectoryRecord r;
    r.gdy_hash = 0xabc;
    r.level = std::string("hbA");
    r.seed = 3;
    r.actions = {1};
    r.final_hash = 1;
    r.total_reward = 1;
    EXPECT_EQ(traj::save(r), "{\"actions\":[1],\"final_hash\":\"0000000000000001\",\"gdy_hash\":\"0000000000000abc\","
                             "\"level\":{\"string\":\"hbA\"},\"seed\":3,\"total_reward\":1,\"version\":1}");
}

TEST(Trajectory, GeneratorLevelsReplay)
{
    const auto& game = support::escape_room();
    const traj::LevelRef level = traj::GeneratorRef{42, 16, 12};
    const auto rec = traj::record(game, level, 1, random_actions(100, 12, 3));
    const auto report = traj::replay(game, traj::load(traj::save(rec)));
    EXPECT_TRUE(report.verified);
}

TEST(Trajectory, TamperedRecordIsNotVerified)
{
    const auto& game = support::sokoban();
    auto rec = traj::record(game, 1, 0, random_actions(50, 5, 9));
    rec.actions.back() = rec.actions.back() == 1 ? 2 : 1;
    const auto report = traj::replay(game, rec);
    // a different last move can leave the same board; the reward check still holds
    if (report.final_hash == *rec.final_hash) {
        EXPECT_TRUE(report.verified);
    } else {
        EXPECT_FALSE(report.verified);
    }
    rec.total_reward = 99;
    EXPECT_FALSE(traj::replay(game, rec).verified);
}

TEST(Trajectory, WrongDocumentIsHashMismatch)
{
    auto rec = traj::record(support::sokoban(), 0, 0, {1});
    try {
        (void)traj::replay(support::escape_room(), rec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::hash_mismatch);
    }
}

TEST(Trajectory, MissingLevel)
{
    traj::TrajectoryRecord r;
    r.gdy_hash = support::sokoban()->document().source_hash;
    r.level = 5;
    try {
        (void)traj::replay(support::sokoban(), r);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::level_unavailable);
    }
}

TEST(Trajectory, LoadRejectsMalformedRecords)
{
    const std::string ok = traj::save(traj::record(support::sokoban(), 0, 0, {}));
    EXPECT_EQ(load_error_code(ok), "OK");
    EXPECT_EQ(load_error_code("{"), "INVALID_JSON");
    EXPECT_EQ(load_error_code("[]"), "INVALID_TYPE");
    EXPECT_EQ(load_error_code(R"({"version":1})"), "MISSING_FIELD");
    std::string extra = ok;
    extra.insert(1, "\"colour\":1,");
    EXPECT_EQ(load_error_code(extra), "UNKNOWN_FIELD");
    std::string bad_hash = ok;
    bad_hash.replace(bad_hash.find("\"gdy_hash\":\"") + 12, 4, "zzzz");
    EXPECT_EQ(load_error_code(bad_hash), "INVALID_HASH");
    std::string v2 = ok;
    v2.replace(v2.find("\"version\":1"), 11, "\"version\":2");
    EXPECT_EQ(load_error_code(v2), "UNSUPPORTED_VERSION");
    std::string bad_level = ok;
    bad_level.replace(bad_level.find("\"level\":{\"index\":0}"), 19, "\"level\":{\"index\":0,\"string\":\"x\"}");
    EXPECT_EQ(load_error_code(bad_level), "INVALID_LEVEL");
}

TEST(Trajectory, RecorderRejectsBadActions)
{
    traj::Recorder rec(support::sokoban(), 0, 0);
    EXPECT_THROW((void)rec.step(17), Error);
    (void)rec.step(1);
    EXPECT_EQ(rec.record().actions, (std::vector<int>{1}));
}
