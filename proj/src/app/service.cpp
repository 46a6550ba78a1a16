#include "gridforge/app/service.hpp"

#include "gridforge/trajectory/trajectory.hpp"

#include <httplib.h>

#include <sstream>

namespace gridforge::app {

struct Service::Session {
    std::mutex mutex;
    std::chrono::steady_clock::time_point last_used;
    env::Env env;
    std::optional<env::ResetOptions> reset_options;
    std::vector<int> actions; // since the last reset
    bool recording = false;

    explicit Session(std::shared_ptr<const sim::Game> game) : env(std::move(game), env::ObservationMode::none) {}
};

namespace {

Response error(int status, std::string_view code, const std::string& message, json diagnostics = json())
{
    json e = {{"code", std::string(code)}, {"message", message}};
    if (!diagnostics.is_null()) {
        e["diagnostics"] = std::move(diagnostics);
    }
    return {status, {{"error", std::move(e)}}};
}

int status_for(ErrorCode code)
{
    return code == ErrorCode::episode_over ? 409 : 400;
}

std::vector<std::string> split(const std::string& path)
{
    std::vector<std::string> out;
    std::istringstream in(path);
    std::string part;
    while (std::getline(in, part, '/')) {
        if (!part.empty()) {
            out.push_back(part);
        }
    }
    return out;
}

const json& field(const json& req, const char* key)
{
    auto it = req.find(key);
    if (it == req.end()) {
        throw gdy::SchemaError({{gdy::Severity::error, "MISSING_FIELD", key, std::string("missing field `") + key + "`"}});
    }
    return *it;
}

std::string string_field(const json& req, const char* key)
{
    const json& v = field(req, key);
    if (!v.is_string()) {
        throw gdy::SchemaError({{gdy::Severity::error, "INVALID_TYPE", key, std::string("`") + key + "` must be a string"}});
    }
    return v.get<std::string>();
}

json state_view(const env::Env& env, const env::Info& info)
{
    return {{"render", to_json(obs::render_map(env.state()))},
            {"variables", info.variables},
            {"mask", mask_json(info.mask)},
            {"step", env.state().step_count()}};
}

std::optional<traj::LevelRef> level_ref(const env::ResetOptions& options)
{
    if (const int* index = std::get_if<int>(&options.level)) {
        return traj::LevelRef{*index};
    }
    if (const auto* text = std::get_if<std::string>(&options.level)) {
        return traj::LevelRef{*text};
    }
    const auto& p = std::get<levelgen::GenParams>(options.level);
    levelgen::GenParams plain;
    plain.seed = p.seed;
    plain.width = p.width;
    plain.height = p.height;
    if (!(plain == p)) {
        return std::nullopt; // custom knobs cannot be written into a trajectory
    }
    return traj::LevelRef{traj::GeneratorRef{p.seed, p.width, p.height}};
}

} // namespace

Service::Service(Clock clock) : clock_(std::move(clock)) {}

std::size_t Service::session_count() const
{
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

void Service::expire()
{
    const auto now = clock_();
    std::lock_guard lock(mutex_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
        if (session_lock.owns_lock() && now - it->second->last_used >= kSessionIdleLimit) {
            session_lock.unlock();
            it = sessions_.erase(it);
        } else {
            ++it;
        }
    }
}

std::shared_ptr<Service::Session> Service::find(const std::string& id)
{
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body)
{
    expire();
    const auto parts = split(path);
    if (parts.size() < 3 || parts[0] != "api" || parts[1] != "v1") {
        return error(404, "NotFound", "no route " + method + " " + path);
    }
    json req = json::object();
    if (method == "POST" && !body.empty()) {
        req = json::parse(body, nullptr, false);
        if (req.is_discarded() || !req.is_object()) {
            return error(400, "SchemaError", "request body must be a JSON object",
                         to_json({{gdy::Severity::error, "INVALID_JSON", "", "request body must be a JSON object"}}));
        }
    }
    try {
        if (parts.size() == 3 && method == "POST" && parts[2] == "validate") {
            return validate(req);
        }
        if (parts[2] != "session") {
            return error(404, "NotFound", "no route " + method + " " + path);
        }
        if (parts.size() == 3 && method == "POST") {
            return create(req);
        }
        if (parts.size() < 4) {
            return error(404, "NotFound", "no route " + method + " " + path);
        }
        if (parts.size() == 4 && method == "DELETE") {
            std::lock_guard lock(mutex_);
            if (sessions_.erase(parts[3]) == 0) {
                return error(404, "NotFound", "unknown session `" + parts[3] + "`");
            }
            return {200, {{"deleted", true}, {"session_id", parts[3]}}};
        }
        if (method != "POST" || parts.size() < 5 || parts.size() > 6) {
            return error(404, "NotFound", "no route " + method + " " + path);
        }
        std::string op = parts[4];
        if (parts.size() == 6) {
            if (op != "record" || (parts[5] != "start" && parts[5] != "stop")) {
                return error(404, "NotFound", "no route " + method + " " + path);
            }
            op += "/" + parts[5];
        }
        auto session = find(parts[3]);
        if (!session) {
            return error(404, "NotFound", "unknown session `" + parts[3] + "`");
        }
        std::lock_guard lock(session->mutex);
        session->last_used = clock_();
        return dispatch(*session, op, req);
    } catch (const gdy::SchemaError& e) {
        return error(400, to_string(e.code()), e.what(), to_json(e.diagnostics()));
    } catch (const gdy::SyntaxError& e) {
        return error(400, to_string(e.code()), e.what(), to_json({syntax_diagnostic(e)}));
    } catch (const Error& e) {
        return error(status_for(e.code()), to_string(e.code()), e.what());
    }
}

Response Service::validate(const json& req)
{
    const std::string text = string_field(req, "gdy_text");
    std::vector<gdy::Diagnostic> diagnostics;
    try {
        (void)gdy::parse_gdy(text);
    } catch (const gdy::SyntaxError& e) {
        diagnostics.push_back(syntax_diagnostic(e));
    } catch (const gdy::SchemaError& e) {
        diagnostics = e.diagnostics();
    }
    return {200, {{"valid", diagnostics.empty()}, {"diagnostics", to_json(diagnostics)}}};
}

Response Service::create(const json& req)
{
    auto game = sim::Game::compile(gdy::parse_gdy(string_field(req, "gdy_text")));
    const auto& doc = game->document();
    json objects = json::array();
    for (const auto& obj : doc.objects) {
        objects.push_back(
            {{"name", obj.name}, {"map_char", std::string(1, obj.map_character)}, {"tile", obj.tile.key}, {"z", obj.z}});
    }
    json levels = json::array();
    for (std::size_t i = 0; i < doc.environment.levels.size(); ++i) {
        levels.push_back({{"index", i}, {"level_string", gdy::normalize_level_string(doc.environment.levels[i])}});
    }
    auto session = std::make_shared<Session>(game);
    session->last_used = clock_();
    std::string id;
    {
        std::lock_guard lock(mutex_);
        id = "s" + std::to_string(next_id_++);
        sessions_.emplace(id, session);
    }
    return {200,
            {{"session_id", id},
             {"env_name", doc.environment.name},
             {"objects", std::move(objects)},
             {"action_space", to_json(game->action_space())},
             {"levels", std::move(levels)}}};
}

Response Service::dispatch(Session& s, const std::string& op, const json& req)
{
    const sim::Game& game = s.env.game();
    if (op == "reset") {
        env::ResetOptions options;
        options.level = level_from_json(req.contains("level") ? req["level"] : json());
        if (req.contains("seed")) {
            const json& seed = req["seed"];
            if (seed.is_number_unsigned()) {
                options.seed = seed.get<std::uint64_t>();
            } else if (seed.is_number_integer() && seed.get<std::int64_t>() >= 0) {
                options.seed = static_cast<std::uint64_t>(seed.get<std::int64_t>());
            } else {
                throw gdy::SchemaError(
                    {{gdy::Severity::error, "INVALID_TYPE", "seed", "seed must be a non-negative integer"}});
            }
        }
        auto [observation, info] = s.env.reset(options);
        (void)observation;
        s.reset_options = options;
        s.actions.clear();
        s.recording = false;
        return {200, state_view(s.env, info)};
    }
    if (op == "step") {
        const json& id = field(req, "action_id");
        if (!id.is_number_integer()) {
            throw gdy::SchemaError({{gdy::Severity::error, "INVALID_TYPE", "action_id", "action_id must be an integer"}});
        }
        if (!s.env.has_state()) {
            return error(409, "EpisodeOver", "session has not been reset");
        }
        const auto action = id.get<std::int64_t>();
        if (action < 0 || static_cast<std::uint64_t>(action) >= game.action_space().size()) {
            throw Error(ErrorCode::bad_action, "action id " + std::to_string(action) + " outside [0, " +
                                                   std::to_string(game.action_space().size()) + ")");
        }
        env::StepOutput out = s.env.step(static_cast<int>(action));
        s.actions.push_back(static_cast<int>(action));
        return {200,
                {{"render", to_json(obs::render_map(s.env.state()))},
                 {"reward", out.reward},
                 {"terminated", out.terminated},
                 {"truncated", out.truncated},
                 {"variables", out.info.variables},
                 {"mask", mask_json(out.info.mask)},
                 {"events", to_json(out.events, game)}}};
    }
    if (op == "parse_level") {
        // built outside the braces: a throw mid initializer-list leaks on older GCC
        json layout = to_json(gdy::parse_level(game.document(), string_field(req, "level_string")));
        return {200, {{"layout", std::move(layout)}}};
    }
    if (op == "serialize_level") {
        gdy::LevelLayout layout = layout_from_json(field(req, "layout"));
        for (const auto& p : layout.placements) {
            if (game.document().find_object(p.object) == nullptr) {
                throw gdy::SchemaError({{gdy::Severity::error, "UNDECLARED_OBJECT", "layout.placements",
                                         "object `" + p.object + "` is not declared"}});
            }
        }
        std::string level = gdy::serialize_level(layout, game.document());
        return {200, {{"level_string", std::move(level)}}};
    }
    if (op == "record/start" || op == "record/stop") {
        const bool start = op == "record/start";
        if (start) {
            if (!s.env.has_state() || s.env.state().step_count() != 0) {
                return error(409, "RecordingConflict", "recording starts right after a reset");
            }
        } else if (!s.recording) {
            return error(409, "RecordingConflict", "not recording");
        }
        auto ref = level_ref(*s.reset_options);
        if (!ref) {
            return error(409, "RecordingConflict", "levels generated with custom knobs cannot be recorded");
        }
        traj::TrajectoryRecord rec;
        rec.gdy_hash = game.document().source_hash;
        rec.level = *ref;
        rec.seed = s.reset_options->seed;
        rec.actions = s.actions;
        rec.final_hash = sim::state_hash(s.env.state());
        rec.total_reward = s.env.state().accumulated_return();
        s.recording = start;
        return {200, json::parse(traj::save(rec))};
    }
    if (op == "replay") {
        const json& t = field(req, "trajectory");
        const auto record = traj::load(t.is_string() ? t.get<std::string>() : t.dump());
        return {200, to_json(traj::replay(s.env.game_ptr(), record))};
    }
    return error(404, "NotFound", "unknown session operation `" + op + "`");
}

bool serve_http(Service& service, const std::string& host, int port)
{
    httplib::Server server;
    auto handler = [&](const httplib::Request& req, httplib::Response& res) {
        Response r = service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    server.Post(R"(/api/v1/.*)", handler);
    server.Delete(R"(/api/v1/.*)", handler);
    return server.listen(host, port);
}

} // namespace gridforge::app
