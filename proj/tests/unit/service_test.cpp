#include "fixtures.hpp"

#include "gridforge/app/service.hpp"

#include <httplib.h>

#include <gtest/gtest.h>

#include <thread>

using namespace gridforge;
using app::json;

namespace {

class ServiceTest : public ::testing::Test {
protected:
    app::Response post(const std::string& path, const json& body = json::object())
    {
        return service.handle("POST", path, body.dump());
    }

    std::string open(std::string_view gdy)
    {
        const auto r = post("/api/v1/session", {{"gdy_text", std::string(gdy)}});
        EXPECT_EQ(r.status, 200) << r.body.dump();
        return r.body.at("session_id").get<std::string>();
    }

    std::chrono::steady_clock::time_point now{};
    app::Service service{[this] { return now; }};
};

} // namespace

TEST_F(ServiceTest, Validate)
{
    auto r = post("/api/v1/validate", {{"gdy_text", std::string(assets::sokoban_gdy())}});
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(r.body["valid"], true);
    EXPECT_TRUE(r.body["diagnostics"].empty());
    r = post("/api/v1/validate", {{"gdy_text", "Environment: [\n"}});
    EXPECT_EQ(r.body["valid"], false);
    EXPECT_EQ(r.body["diagnostics"][0]["code"], "SYNTAX_ERROR");
    r = post("/api/v1/validate", json::object());
    EXPECT_EQ(r.status, 400);
    EXPECT_TRUE(r.body.contains("error"));
}

TEST_F(ServiceTest, SessionLifecycle)
{
    const auto r = post("/api/v1/session", {{"gdy_text", std::string(assets::sokoban_gdy())}});
    ASSERT_EQ(r.status, 200);
    const std::string id = r.body["session_id"];
    EXPECT_EQ(r.body["env_name"], "sokoban");
    EXPECT_EQ(r.body["objects"].size(), 4u);
    EXPECT_EQ(r.body["action_space"].size(), 5u);
    EXPECT_EQ(r.body["action_space"][1]["key"], "A");
    EXPECT_EQ(r.body["levels"].size(), 2u);

    const std::string base = "/api/v1/session/" + id;
    auto reset = post(base + "/reset", {{"level", {{"string", "hbA"}}}, {"seed", 4}});
    ASSERT_EQ(reset.status, 200) << reset.body.dump();
    EXPECT_EQ(reset.body["step"], 0);
    EXPECT_EQ(reset.body["mask"], json::parse("[true,true,false,false,false]"));
    EXPECT_EQ(reset.body["render"]["width"], 3);

    auto step = post(base + "/step", {{"action_id", 1}});
    ASSERT_EQ(step.status, 200);
    EXPECT_EQ(step.body["reward"], 1);
    EXPECT_EQ(step.body["terminated"], true);
    EXPECT_EQ(step.body["variables"]["box:count"], 0);
    EXPECT_EQ(step.body["events"][0]["kind"], "cascade");
    EXPECT_EQ(step.body["render"]["cells"][1][0]["object"], "avatar");

    step = post(base + "/step", {{"action_id", 0}});
    EXPECT_EQ(step.status, 409);
    EXPECT_EQ(step.body["error"]["code"], "EpisodeOver");

    EXPECT_EQ(service.handle("DELETE", base, "").status, 200);
    EXPECT_EQ(post(base + "/reset").status, 404);
    EXPECT_EQ(service.session_count(), 0u);
}

TEST_F(ServiceTest, BadRequests)
{
    const std::string id = open(assets::sokoban_gdy());
    const std::string base = "/api/v1/session/" + id;
    EXPECT_EQ(post(base + "/step", {{"action_id", 1}}).status, 409); // not reset yet
    ASSERT_EQ(post(base + "/reset").status, 200);
    auto r = post(base + "/step", {{"action_id", 12}});
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(r.body["error"]["code"], "BadAction");
    EXPECT_EQ(post(base + "/step", {{"action_id", "left"}}).status, 400);
    EXPECT_EQ(post(base + "/reset", {{"level", {{"index", 9}}}}).status, 400);
    EXPECT_EQ(service.handle("POST", base + "/step", "{not json").status, 400);
    EXPECT_EQ(post("/api/v1/nowhere").status, 404);
    EXPECT_EQ(post(base + "/fly").status, 404);
    EXPECT_EQ(post("/api/v1/session", {{"gdy_text", "Objects: 3"}}).status, 400);
}

TEST_F(ServiceTest, LevelEditing)
{
    const std::string base = "/api/v1/session/" + open(assets::sokoban_gdy());
    auto r = post(base + "/parse_level", {{"level_string", "wA\nhb"}});
    ASSERT_EQ(r.status, 200) << r.body.dump();
    EXPECT_EQ(r.body["layout"]["width"], 2);
    EXPECT_EQ(r.body["layout"]["placements"].size(), 4u);
    auto back = post(base + "/serialize_level", {{"layout", r.body["layout"]}});
    ASSERT_EQ(back.status, 200);
    EXPECT_EQ(back.body["level_string"], "wA\nhb");
    r = post(base + "/parse_level", {{"level_string", "wZ"}});
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(r.body["error"]["code"], "UnknownCharacter");
    json layout = {{"width", 1}, {"height", 1}, {"placements", {{{"x", 0}, {"y", 0}, {"object", "dragon"}}}}};
    EXPECT_EQ(post(base + "/serialize_level", {{"layout", layout}}).status, 400);
}

TEST_F(ServiceTest, RecordAndReplay)
{
    const std::string base = "/api/v1/session/" + open(assets::sokoban_gdy());
    ASSERT_EQ(post(base + "/reset", {{"level", {{"index", 0}}}, {"seed", 2}}).status, 200);
    ASSERT_EQ(post(base + "/record/start").status, 200);
    for (int a : {1, 2, 2, 3}) {
        ASSERT_EQ(post(base + "/step", {{"action_id", a}}).status, 200);
    }
    const auto stop = post(base + "/record/stop");
    ASSERT_EQ(stop.status, 200);
    EXPECT_EQ(stop.body["actions"], json::parse("[1,2,2,3]"));
    EXPECT_EQ(stop.body["seed"], 2);
    EXPECT_EQ(post(base + "/record/stop").status, 409);
    EXPECT_EQ(post(base + "/record/start").status, 409); // mid-episode

    const auto replay = post(base + "/replay", {{"trajectory", stop.body}});
    ASSERT_EQ(replay.status, 200) << replay.body.dump();
    EXPECT_EQ(replay.body["verified"], true);
    EXPECT_EQ(replay.body["status"], "running");

    const std::string other = "/api/v1/session/" + open(assets::escape_room_gdy());
    const auto mismatch = post(other + "/replay", {{"trajectory", stop.body.dump()}});
    EXPECT_EQ(mismatch.status, 400);
    EXPECT_EQ(mismatch.body["error"]["code"], "HashMismatch");
}

TEST_F(ServiceTest, IdleSessionsExpire)
{
    open(assets::sokoban_gdy());
    const std::string keep = open(assets::sokoban_gdy());
    EXPECT_EQ(service.session_count(), 2u);
    now += std::chrono::minutes(20);
    ASSERT_EQ(post("/api/v1/session/" + keep + "/reset").status, 200);
    now += std::chrono::minutes(15);
    (void)post("/api/v1/validate", {{"gdy_text", "x: 1"}});
    EXPECT_EQ(service.session_count(), 1u);
    EXPECT_EQ(post("/api/v1/session/" + keep + "/reset").status, 200);
}

TEST(ServiceHttp, RoundTripOverLoopback)
{
    app::Service service;
    httplib::Server server;
    server.Post(R"(/api/v1/.*)", [&](const httplib::Request& req, httplib::Response& res) {
        auto r = service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port, 0);
    std::thread t([&] { server.listen_after_bind(); });
    httplib::Client client("127.0.0.1", port);
    const auto res = client.Post("/api/v1/validate", json{{"gdy_text", std::string(assets::sokoban_gdy())}}.dump(),
                                 "application/json");
    server.stop();
    t.join();
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)["valid"], true);
}
