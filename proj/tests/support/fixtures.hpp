#pragma once

#include "gridforge/assets.hpp"
#include "gridforge/gdy/parser.hpp"
#include "gridforge/sim/engine.hpp"

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gridforge::support {

inline std::shared_ptr<const sim::Game> compile(std::string_view text)
{
    return sim::Game::compile(gdy::parse_gdy(text));
}

inline const std::shared_ptr<const sim::Game>& sokoban()
{
    static const auto game = compile(assets::sokoban_gdy());
    return game;
}

inline const std::shared_ptr<const sim::Game>& escape_room()
{
    static const auto game = compile(assets::escape_room_gdy());
    return game;
}

inline sim::GameState reset_level(const std::shared_ptr<const sim::Game>& game, int index, std::uint64_t seed = 0)
{
    const auto& doc = game->document();
    return sim::reset(game, gdy::parse_level(doc, doc.environment.levels.at(static_cast<std::size_t>(index))), seed);
}

inline sim::GameState reset_string(const std::shared_ptr<const sim::Game>& game, std::string_view level,
                                   std::uint64_t seed = 0)
{
    return sim::reset(game, gdy::parse_level(game->document(), level), seed);
}

inline int action_id(const sim::Game& game, std::string_view label)
{
    for (const auto& e : game.action_space().entries) {
        if (e.label == label) {
            return e.id;
        }
    }
    throw std::out_of_range("no action labelled " + std::string(label));
}

struct SearchResult {
    std::optional<std::vector<int>> plan;
    std::size_t expanded = 0;
};

// Breadth-first search over engine states, deduplicated by state hash. Finds a
// shortest action sequence that ends in a win.
inline SearchResult bfs_solve(const sim::GameState& start, std::size_t node_limit = 2'000'000)
{
    SearchResult out;
    const auto actions = static_cast<int>(start.game().action_space().size());
    struct Node {
        sim::GameState state;
        std::size_t parent;
        int action;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::uint64_t, char> seen;
    nodes.push_back({start, 0, -1});
    seen.emplace(sim::configuration_hash(start), 1);
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty() && nodes.size() < node_limit) {
        const std::size_t at = frontier.front();
        frontier.pop_front();
        ++out.expanded;
        for (int a = 1; a < actions; ++a) {
            sim::GameState next = nodes[at].state;
            (void)sim::step(next, a);
            if (next.status() == sim::Status::lose || next.status() == sim::Status::truncated) {
                continue;
            }
            if (!seen.emplace(sim::configuration_hash(next), 1).second) {
                continue;
            }
            nodes.push_back({std::move(next), at, a});
            const std::size_t id = nodes.size() - 1;
            if (nodes[id].state.status() == sim::Status::win) {
                std::vector<int> plan;
                for (std::size_t i = id; i != 0; i = nodes[i].parent) {
                    plan.push_back(nodes[i].action);
                }
                out.plan = std::vector<int>(plan.rbegin(), plan.rend());
                return out;
            }
            frontier.push_back(id);
        }
    }
    return out;
}

// Plain Sokoban written straight from the rules, sharing no code with the
// engine: walls block, the avatar walks on floor and holes, pushes one box
// into floor, and a box pushed into a hole disappears for a reward of 1.
class SokobanModel {
public:
    explicit SokobanModel(const std::string& level)
    {
        std::string row;
        for (char c : level + "\n") {
            if (c == '\n') {
                if (!row.empty()) {
                    rows_.push_back(row);
                }
                row.clear();
            } else {
                row.push_back(c);
            }
        }
        for (int y = 0; y < static_cast<int>(rows_.size()); ++y) {
            for (int x = 0; x < static_cast<int>(rows_[y].size()); ++x) {
                if (rows_[y][x] == 'A') {
                    ax_ = x;
                    ay_ = y;
                    rows_[y][x] = '.';
                }
            }
        }
    }

    // 0 no-op, 1 left, 2 right, 3 down, 4 up. Returns the reward.
    int step(int action)
    {
        static constexpr int dx[] = {0, -1, 1, 0, 0};
        static constexpr int dy[] = {0, 0, 0, 1, -1};
        if (action == 0) {
            return 0;
        }
        const int tx = ax_ + dx[action];
        const int ty = ay_ + dy[action];
        char& target = at(tx, ty);
        if (target == '.' || target == 'h') {
            ax_ = tx;
            ay_ = ty;
            return 0;
        }
        if (target != 'b' && target != 'B') {
            return 0;
        }
        char& beyond = at(tx + dx[action], ty + dy[action]);
        if (beyond == '.') {
            beyond = 'b';
        } else if (beyond == 'h') {
            // box falls in; the hole stays
        } else {
            return 0;
        }
        const bool on_hole = target == 'B';
        target = on_hole ? 'h' : '.';
        ax_ = tx;
        ay_ = ty;
        return beyond == 'h' ? 1 : 0;
    }

    [[nodiscard]] std::string ascii() const
    {
        std::string out;
        for (int y = 0; y < static_cast<int>(rows_.size()); ++y) {
            std::string r = rows_[y];
            if (y == ay_) {
                r[ax_] = 'A';
            }
            for (char& c : r) {
                if (c == 'B') {
                    c = 'b';
                }
            }
            out += r;
            if (y + 1 < static_cast<int>(rows_.size())) {
                out += '\n';
            }
        }
        return out;
    }

    [[nodiscard]] int boxes() const
    {
        int n = 0;
        for (const auto& r : rows_) {
            for (char c : r) {
                n += c == 'b' || c == 'B';
            }
        }
        return n;
    }

private:
    char& at(int x, int y)
    {
        static char wall = 'w';
        if (y < 0 || y >= static_cast<int>(rows_.size()) || x < 0 || x >= static_cast<int>(rows_[y].size())) {
            wall = 'w';
            return wall;
        }
        return rows_[y][x];
    }

    std::vector<std::string> rows_;
    int ax_ = 0;
    int ay_ = 0;
};

} // namespace gridforge::support
