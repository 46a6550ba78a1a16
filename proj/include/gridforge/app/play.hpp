#pragma once

#include "gridforge/sim/game.hpp"
#include "gridforge/trajectory/trajectory.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

namespace gridforge::app {

struct PlayOptions {
    traj::LevelRef level = 0;
    std::uint64_t seed = 0;
    // Where `R` writes the trajectory; empty disables recording.
    std::string record_path = "trajectory.json";
};

// Terminal session. Reads one character per key: action keys are
// case-insensitive, except that lowercase `q` quits and uppercase `R`
// toggles recording; `P`/`p` prints the key help and `I`/`i` the variables.
// Returns the process exit code.
int play(const std::shared_ptr<const sim::Game>& game, const PlayOptions& options, std::istream& in,
         std::ostream& out);

// Puts a terminal stdin into unbuffered no-echo mode for its lifetime; does
// nothing when stdin is not a terminal.
class RawTerminal {
public:
    RawTerminal();
    ~RawTerminal();
    RawTerminal(const RawTerminal&) = delete;
    RawTerminal& operator=(const RawTerminal&) = delete;

private:
    struct Saved;
    std::unique_ptr<Saved> saved_;
};

} // namespace gridforge::app
