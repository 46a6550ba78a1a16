#include "gridforge/observers/observers.hpp"

#include <algorithm>
#include <tuple>

namespace gridforge::obs {

namespace {

constexpr sim::Direction kDirections[] = {sim::Direction::left, sim::Direction::right, sim::Direction::down,
                                          sim::Direction::up};

// Maps window cells to world cells.
struct Window {
    int width = 0;
    int height = 0;
    int origin_x = 0; // world position of the window centre
    int origin_y = 0;
    int centre_x = 0; // window position of the centre
    int centre_y = 0;
    sim::Direction facing = sim::Direction::up;
    bool global = false;

    std::pair<int, int> world(int i, int j) const
    {
        if (global) {
            return {i, j};
        }
        const int dx = i - centre_x;
        const int dy = j - centre_y;
        switch (facing) {
        case sim::Direction::up: return {origin_x + dx, origin_y + dy};
        case sim::Direction::down: return {origin_x - dx, origin_y - dy};
        case sim::Direction::left: return {origin_x + dy, origin_y - dx};
        case sim::Direction::right: return {origin_x - dy, origin_y + dx};
        }
        return {origin_x + dx, origin_y + dy};
    }
};

Window make_window(const sim::GameState& state, const gdy::ObserverConfig& config)
{
    Window w;
    if (!config.has_window()) {
        w.global = true;
        w.width = state.width();
        w.height = state.height();
        return w;
    }
    w.width = *config.window_width;
    w.height = *config.window_height;
    w.centre_x = w.width / 2;
    w.centre_y = w.height / 2;
    if (const sim::Instance* a = state.avatar()) {
        w.origin_x = a->x;
        w.origin_y = a->y;
        if (config.rotate_with_avatar) {
            w.facing = a->orientation;
        }
    } else {
        w.origin_x = state.width() / 2;
        w.origin_y = state.height() / 2;
    }
    return w;
}

gdy::VariableMap named_vars(const std::vector<std::string>& names, const std::vector<std::int64_t>& values)
{
    gdy::VariableMap out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        out.emplace(names[i], values[i]);
    }
    return out;
}

} // namespace

std::vector<Channel> channel_layout(const gdy::GdyDocument& document, const gdy::ObserverConfig& config)
{
    std::vector<Channel> out;
    for (const auto& obj : document.objects) {
        out.push_back({"object", obj.name});
    }
    if (config.include_orientation_channels) {
        for (auto d : kDirections) {
            out.push_back({"orientation", std::string(sim::to_string(d))});
        }
    }
    if (config.include_player_variable_channels) {
        for (const auto& [name, value] : document.environment.player_variables) {
            (void)value;
            out.push_back({"variable", name});
        }
    }
    return out;
}

Shape observation_shape(const gdy::GdyDocument& document, const gdy::ObserverConfig& config, int grid_width,
                        int grid_height)
{
    Shape s;
    s.width = config.has_window() ? *config.window_width : grid_width;
    s.height = config.has_window() ? *config.window_height : grid_height;
    s.channels = static_cast<int>(channel_layout(document, config).size());
    return s;
}

VectorObservation vector_obs(const sim::GameState& state, const gdy::ObserverConfig& config)
{
    const Window w = make_window(state, config);
    VectorObservation o;
    o.layout = channel_layout(state.game().document(), config);
    o.width = w.width;
    o.height = w.height;
    o.channels = static_cast<int>(o.layout.size());
    o.data.assign(static_cast<std::size_t>(o.width) * static_cast<std::size_t>(o.height) *
                      static_cast<std::size_t>(o.channels),
                  0);
    const int objects = static_cast<int>(state.game().object_count());
    const int orientation_base = objects;
    const int variable_base = objects + (config.include_orientation_channels ? 4 : 0);
    const auto& player = state.player_values();
    for (int j = 0; j < o.height; ++j) {
        for (int i = 0; i < o.width; ++i) {
            std::int64_t* cell = &o.data[(static_cast<std::size_t>(j) * static_cast<std::size_t>(o.width) +
                                          static_cast<std::size_t>(i)) *
                                         static_cast<std::size_t>(o.channels)];
            if (config.include_player_variable_channels) {
                std::copy(player.begin(), player.end(), cell + variable_base);
            }
            const auto [x, y] = w.world(i, j);
            const sim::Instance* top = state.top(x, y);
            if (top == nullptr) {
                continue;
            }
            cell[top->object] = 1;
            if (config.include_orientation_channels) {
                cell[orientation_base + static_cast<int>(top->orientation)] = 1;
            }
        }
    }
    return o;
}

VectorObservation rotate_window(const VectorObservation& in)
{
    VectorObservation out;
    out.width = in.height;
    out.height = in.width;
    out.channels = in.channels;
    out.layout = in.layout;
    out.data.assign(in.data.size(), 0);
    const auto c = static_cast<std::size_t>(in.channels);
    // Clockwise: source (x, y) lands at (H - 1 - y, x).
    for (int y = 0; y < in.height; ++y) {
        for (int x = 0; x < in.width; ++x) {
            const int nx = in.height - 1 - y;
            const int ny = x;
            const auto src = (static_cast<std::size_t>(y) * static_cast<std::size_t>(in.width) +
                              static_cast<std::size_t>(x)) * c;
            const auto dst = (static_cast<std::size_t>(ny) * static_cast<std::size_t>(out.width) +
                              static_cast<std::size_t>(nx)) * c;
            std::copy_n(in.data.begin() + static_cast<std::ptrdiff_t>(src), c,
                        out.data.begin() + static_cast<std::ptrdiff_t>(dst));
        }
    }
    return out;
}

std::string ascii_obs(const sim::GameState& state)
{
    const auto& objects = state.game().document().objects;
    std::string out;
    out.reserve(static_cast<std::size_t>((state.width() + 1) * state.height()));
    for (int y = 0; y < state.height(); ++y) {
        if (y > 0) {
            out.push_back('\n');
        }
        for (int x = 0; x < state.width(); ++x) {
            const sim::Instance* top = state.top(x, y);
            out.push_back(top ? objects[static_cast<std::size_t>(top->object)].map_character : gdy::kEmptyCell);
        }
    }
    return out;
}

EntityObservation entity_obs(const sim::GameState& state, const gdy::ObserverConfig& config)
{
    const sim::Game& game = state.game();
    EntityObservation out;
    out.global_entity = state.player_variables();
    const Window w = make_window(state, config);
    std::vector<const sim::Instance*> seen;
    for (int j = 0; j < w.height; ++j) {
        for (int i = 0; i < w.width; ++i) {
            const auto [x, y] = w.world(i, j);
            for (int id : state.cell(x, y)) {
                seen.push_back(&state.instances()[static_cast<std::size_t>(id)]);
            }
        }
    }
    std::sort(seen.begin(), seen.end(), [](const sim::Instance* a, const sim::Instance* b) {
        return std::tie(a->y, a->x, a->z) < std::tie(b->y, b->x, b->z);
    });
    for (const sim::Instance* inst : seen) {
        out.entities.push_back({game.object_name(inst->object), inst->x, inst->y, inst->z, inst->orientation,
                                named_vars(game.object_variable_names(inst->object), inst->variables)});
    }
    return out;
}

RenderMap render_map(const sim::GameState& state)
{
    const auto& objects = state.game().document().objects;
    RenderMap map;
    map.width = state.width();
    map.height = state.height();
    map.cells.resize(static_cast<std::size_t>(map.width) * static_cast<std::size_t>(map.height));
    auto has = [&](int x, int y, int object) {
        for (int id : state.cell(x, y)) {
            if (state.instances()[static_cast<std::size_t>(id)].object == object) {
                return true;
            }
        }
        return false;
    };
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            auto& tiles = map.cells[static_cast<std::size_t>(y) * static_cast<std::size_t>(map.width) +
                                    static_cast<std::size_t>(x)];
            for (int id : state.cell(x, y)) {
                const sim::Instance& inst = state.instances()[static_cast<std::size_t>(id)];
                const auto& def = objects[static_cast<std::size_t>(inst.object)];
                RenderTile t{def.name, def.tile.key, inst.z, inst.orientation, std::nullopt};
                if (def.tile.autotile) {
                    t.autotile_index = (has(x, y - 1, inst.object) ? 1 : 0) | (has(x + 1, y, inst.object) ? 2 : 0) |
                                       (has(x, y + 1, inst.object) ? 4 : 0) | (has(x - 1, y, inst.object) ? 8 : 0);
                }
                tiles.push_back(std::move(t));
            }
        }
    }
    return map;
}

} // namespace gridforge::obs
