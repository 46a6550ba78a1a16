#include "gridforge/app/cli.hpp"

#include "gridforge/app/codec.hpp"
#include "gridforge/app/play.hpp"
#include "gridforge/app/rollout.hpp"
#include "gridforge/app/service.hpp"
#include "gridforge/assets.hpp"
#include "gridforge/levelgen/levelgen.hpp"
#include "gridforge/util/hash.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gridforge::app {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io, "cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCode::io, "error reading " + path);
    }
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error(ErrorCode::io, "cannot write " + path.string());
    }
}

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::io: return kExitIo;
    case ErrorCode::hash_mismatch: return kExitHashMismatch;
    default: return kExitDomain;
    }
}

std::shared_ptr<const sim::Game> load_game(const std::string& path)
{
    return sim::Game::compile(gdy::parse_gdy(read_file(path)));
}

struct LevelFlags {
    int index = 0;
    std::string text;
    bool generate = false;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--level", index, "Level index in the GDY file")->capture_default_str();
        cmd->add_option("--level-string", text, "Literal level string (rows separated by \\n)");
    }
};

std::string unescape_rows(std::string s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == 'n') {
            out.push_back('\n');
            ++i;
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Grid-world engine driven by GDY files", "gridforge"};
    app.require_subcommand(1);

    // validate
    std::string gdy_path;
    auto* validate = app.add_subcommand("validate", "Check a GDY file; prints diagnostics JSON");
    validate->add_option("gdy", gdy_path, "GDY file")->required();

    // replay
    std::string trajectory_path;
    bool verify = false;
    auto* replay = app.add_subcommand("replay", "Replay a trajectory; prints a report JSON");
    replay->add_option("gdy", gdy_path, "GDY file")->required();
    replay->add_option("trajectory", trajectory_path, "Trajectory JSON file")->required();
    replay->add_flag("--verify", verify, "Exit 3 unless the stored hash and reward match");

    // play
    LevelFlags play_level;
    std::uint64_t seed = 0;
    std::string record_path = "trajectory.json";
    auto* play_cmd = app.add_subcommand("play", "Play in the terminal");
    play_cmd->add_option("gdy", gdy_path, "GDY file")->required();
    play_level.add(play_cmd);
    play_cmd->add_option("--seed", seed, "Reset seed");
    play_cmd->add_option("--record", record_path, "Where R saves the trajectory")->capture_default_str();

    // generate
    levelgen::GenParams gen;
    int count = 1;
    std::string out_dir;
    int coal = -1;
    int iron = -1;
    int diamond = -1;
    auto* generate = app.add_subcommand("generate", "Write generated escape-room levels and a manifest");
    generate->add_option("--seed", gen.seed, "Seed of the first level; level i uses seed + i");
    generate->add_option("--width", gen.width, "Level width")->capture_default_str();
    generate->add_option("--height", gen.height, "Level height")->capture_default_str();
    generate->add_option("--count", count, "Number of levels")->capture_default_str()->check(CLI::NonNegativeNumber);
    generate->add_option("--out", out_dir, "Output directory")->required();
    generate->add_option("--water", gen.water_threshold, "Water threshold")->capture_default_str();
    generate->add_option("--stone", gen.stone_threshold, "Stone threshold")->capture_default_str();
    generate->add_option("--lava", gen.lava_threshold, "Lava threshold")->capture_default_str();
    generate->add_option("--tree", gen.tree_threshold, "Tree threshold")->capture_default_str();
    generate->add_option("--coal", coal, "Coal count (default scales with area)");
    generate->add_option("--iron", iron, "Iron count (default scales with area)");
    generate->add_option("--diamond", diamond, "Diamond count (default scales with area)");

    // rollout
    RolloutOptions ro;
    LevelFlags ro_level;
    std::string policy = "random";
    bool bench_mode = false;
    std::uint64_t bench_steps = 200000;
    auto* rollout_cmd = app.add_subcommand("rollout", "Run episodes with a fixed policy; prints stats JSON");
    rollout_cmd->add_option("gdy", gdy_path, "GDY file")->required();
    rollout_cmd->add_option("--episodes", ro.episodes, "Episodes")->capture_default_str();
    rollout_cmd->add_option("--policy", policy, "random or noop")
        ->check(CLI::IsMember({"random", "noop"}))
        ->capture_default_str();
    rollout_cmd->add_option("--seed", ro.seed, "Seed of episode 0; episode i uses seed + i");
    ro_level.add(rollout_cmd);
    rollout_cmd->add_flag("--generate", ro_level.generate, "Generate each episode's level (escape-room alphabet)");
    rollout_cmd->add_option("--width", gen.width, "Generated level width")->capture_default_str();
    rollout_cmd->add_option("--height", gen.height, "Generated level height")->capture_default_str();
    rollout_cmd->add_option("--max-steps", ro.max_steps, "Episode cap when the GDY declares no MaxSteps")
        ->capture_default_str();
    rollout_cmd->add_flag("--bench", bench_mode, "Measure raw single-thread steps per second instead");
    rollout_cmd->add_option("--steps", bench_steps, "Steps to time in --bench mode")->capture_default_str();

    // serve
    int port = kDefaultPort;
    if (const char* env_port = std::getenv("GRIDFORGE_PORT")) {
        port = std::atoi(env_port);
    }
    std::string host = "127.0.0.1";
    auto* serve = app.add_subcommand("serve", "Serve the JSON protocol over HTTP");
    serve->add_option("--port", port, "Port (GRIDFORGE_PORT, default 8877)")->capture_default_str();
    serve->add_option("--host", host, "Bind address")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitDomain;
    }

    auto fail = [&](std::string_view code, const std::string& message, int exit_code, json diagnostics = json()) {
        json e = {{"code", std::string(code)}, {"message", message}};
        if (!diagnostics.is_null()) {
            e["diagnostics"] = std::move(diagnostics);
        }
        err << json{{"error", e}}.dump() << "\n";
        return exit_code;
    };

    try {
        if (validate->parsed()) {
            const std::string text = read_file(gdy_path);
            std::vector<gdy::Diagnostic> diagnostics;
            try {
                (void)gdy::parse_gdy(text);
            } catch (const gdy::SyntaxError& e) {
                diagnostics.push_back(syntax_diagnostic(e));
            } catch (const gdy::SchemaError& e) {
                diagnostics = e.diagnostics();
            }
            out << to_json(diagnostics).dump() << "\n";
            return diagnostics.empty() ? kExitOk : kExitDomain;
        }
        if (replay->parsed()) {
            auto game = load_game(gdy_path);
            const auto record = traj::load(read_file(trajectory_path));
            const auto report = traj::replay(game, record);
            json j = to_json(report);
            j.erase("rewards");
            out << j.dump() << "\n";
            return verify && !report.verified ? kExitVerifyFailed : kExitOk;
        }
        if (play_cmd->parsed()) {
            auto game = load_game(gdy_path);
            PlayOptions options;
            options.seed = seed;
            options.record_path = record_path;
            if (!play_level.text.empty()) {
                options.level = unescape_rows(play_level.text);
            } else {
                options.level = play_level.index;
            }
            RawTerminal raw;
            return play(game, options, in, out);
        }
        if (generate->parsed()) {
            if (coal >= 0) {
                gen.coal = coal;
            }
            if (iron >= 0) {
                gen.iron = iron;
            }
            if (diamond >= 0) {
                gen.diamond = diamond;
            }
            const auto doc = gdy::parse_gdy(assets::escape_room_gdy());
            std::vector<std::pair<std::string, std::string>> files;
            json levels = json::array();
            for (int i = 0; i < count; ++i) {
                levelgen::GenParams p = gen;
                p.seed = gen.seed + static_cast<std::uint64_t>(i);
                std::string level = levelgen::generate(p);
                char name[32];
                std::snprintf(name, sizeof name, "level_%04d.txt", i);
                levels.push_back({{"file", name},
                                  {"seed", p.seed},
                                  {"hint", std::string(levelgen::to_string(levelgen::reachability_hint(level, doc)))}});
                files.emplace_back(name, level + "\n");
            }
            std::error_code ec;
            fs::create_directories(out_dir, ec);
            if (ec) {
                throw Error(ErrorCode::io, "cannot create " + out_dir + ": " + ec.message());
            }
            for (const auto& [name, text] : files) {
                write_file(fs::path(out_dir) / name, text);
            }
            const auto ores = levelgen::resolved_ores(gen);
            json manifest = {{"count", count},
                             {"seed", gen.seed},
                             {"width", gen.width},
                             {"height", gen.height},
                             {"water_threshold", gen.water_threshold},
                             {"stone_threshold", gen.stone_threshold},
                             {"lava_threshold", gen.lava_threshold},
                             {"tree_threshold", gen.tree_threshold},
                             {"ores", {{"coal", ores.coal}, {"iron", ores.iron}, {"diamond", ores.diamond}}},
                             {"levels", std::move(levels)}};
            write_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
            out << json{{"count", count}, {"out", out_dir}}.dump() << "\n";
            return kExitOk;
        }
        if (rollout_cmd->parsed()) {
            auto game = load_game(gdy_path);
            ro.policy = policy == "noop" ? Policy::noop : Policy::random;
            if (ro_level.generate) {
                levelgen::GenParams p;
                p.seed = ro.seed;
                p.width = gen.width;
                p.height = gen.height;
                ro.level = p;
            } else if (!ro_level.text.empty()) {
                ro.level = unescape_rows(ro_level.text);
            } else {
                ro.level = ro_level.index;
            }
            if (bench_mode) {
                const auto layout = env::resolve_level(game->document(), ro.level);
                out << to_json(bench(game, layout, bench_steps, ro.seed)).dump() << "\n";
                return kExitOk;
            }
            out << to_json(rollout(game, ro)).dump() << "\n";
            return kExitOk;
        }
        if (serve->parsed()) {
            Service service;
            err << "serving on http://" << host << ":" << port << "/api/v1\n";
            if (!serve_http(service, host, port)) {
                return fail("IoError", "cannot listen on " + host + ":" + std::to_string(port), kExitIo);
            }
            return kExitOk;
        }
    } catch (const gdy::SchemaError& e) {
        return fail(to_string(e.code()), e.what(), kExitDomain, to_json(e.diagnostics()));
    } catch (const gdy::SyntaxError& e) {
        return fail(to_string(e.code()), e.what(), kExitDomain, to_json({syntax_diagnostic(e)}));
    } catch (const Error& e) {
        return fail(to_string(e.code()), e.what(), exit_code_for(e.code()));
    }
    return kExitDomain;
}

} // namespace gridforge::app
