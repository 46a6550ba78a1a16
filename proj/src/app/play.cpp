#include "gridforge/app/play.hpp"

#include "gridforge/env/env.hpp"
#include "gridforge/observers/observers.hpp"

#include <termios.h>
#include <unistd.h>

#include <cctype>
#include <fstream>
#include <iostream>

namespace gridforge::app {

struct RawTerminal::Saved {
    termios attrs{};
};

RawTerminal::RawTerminal()
{
    if (!isatty(STDIN_FILENO)) {
        return;
    }
    auto saved = std::make_unique<Saved>();
    if (tcgetattr(STDIN_FILENO, &saved->attrs) != 0) {
        return;
    }
    termios raw = saved->attrs;
    raw.c_lflag &= static_cast<tcflag_t>(~(ICANON | ECHO));
    raw.c_cc[VMIN] = 1;
    raw.c_cc[VTIME] = 0;
    if (tcsetattr(STDIN_FILENO, TCSANOW, &raw) == 0) {
        saved_ = std::move(saved);
    }
}

RawTerminal::~RawTerminal()
{
    if (saved_) {
        tcsetattr(STDIN_FILENO, TCSANOW, &saved_->attrs);
    }
}

namespace {

void print_help(const sim::Game& game, std::ostream& out)
{
    out << "keys:\n";
    for (const auto& e : game.action_space().entries) {
        out << "  " << (e.key.empty() ? "-" : e.key) << "  " << e.label << "\n";
    }
    out << "  P  help\n  I  variables\n  R  toggle recording (uppercase)\n  q  quit\n";
}

void print_variables(const sim::GameState& state, std::ostream& out)
{
    out << "variables:\n";
    for (const auto& [name, value] : env::observed_variables(state)) {
        out << "  " << name << " = " << value << "\n";
    }
}

bool write_record(const traj::Recorder& rec, const std::string& path, std::ostream& out)
{
    std::ofstream file(path);
    file << traj::save(rec.record()) << "\n";
    if (!file) {
        out << "could not write " << path << "\n";
        return false;
    }
    out << "trajectory saved to " << path << "\n";
    return true;
}

} // namespace

int play(const std::shared_ptr<const sim::Game>& game, const PlayOptions& options, std::istream& in,
         std::ostream& out)
{
    traj::Recorder rec(game, options.level, options.seed);
    bool recording = false;
    bool write_failed = false;
    out << obs::ascii_obs(rec.state()) << "\n";
    out << "press P for help\n";
    char c = 0;
    while (in.get(c)) {
        if (c == 'q') {
            break;
        }
        if (c == '\n' || c == '\r' || c == ' ') {
            continue;
        }
        if (c == 'P' || c == 'p') {
            print_help(*game, out);
            continue;
        }
        if (c == 'I' || c == 'i') {
            print_variables(rec.state(), out);
            continue;
        }
        if (c == 'R' && !options.record_path.empty()) {
            recording = !recording;
            out << (recording ? "recording on\n" : "recording off\n");
            if (!recording) {
                write_failed |= !write_record(rec, options.record_path, out);
            }
            continue;
        }
        const sim::ActionEntry* entry = game->action_space().find_by_key(c);
        if (entry == nullptr) {
            out << "unbound key '" << c << "' (P for help)\n";
            continue;
        }
        const sim::StepResult r = rec.step(entry->id);
        out << obs::ascii_obs(rec.state()) << "\n";
        out << entry->label << ": reward " << r.reward << ", total " << rec.state().accumulated_return() << "\n";
        if (r.terminated || r.truncated) {
            out << "episode over: " << sim::to_string(rec.state().status()) << ", total reward "
                << rec.state().accumulated_return() << "\n";
            break;
        }
    }
    if (recording) {
        write_failed |= !write_record(rec, options.record_path, out);
    }
    return write_failed ? 2 : 0;
}

} // namespace gridforge::app
