#include "gridforge/sim/engine.hpp"

#include <algorithm>
#include <cassert>

namespace gridforge::sim {

std::string_view to_string(Status s) noexcept
{
    switch (s) {
    case Status::running: return "running";
    case Status::win: return "win";
    case Status::lose: return "lose";
    case Status::truncated: return "truncated";
    }
    return "?";
}

std::string_view to_string(EventKind kind) noexcept
{
    switch (kind) {
    case EventKind::mov: return "mov";
    case EventKind::cascade: return "cascade";
    case EventKind::remove: return "remove";
    case EventKind::spawn: return "spawn";
    case EventKind::add: return "add";
    case EventKind::sub: return "sub";
    case EventKind::set: return "set";
    case EventKind::incr: return "incr";
    case EventKind::decr: return "decr";
    case EventKind::reward: return "reward";
    case EventKind::cascade_overflow: return "cascade_overflow";
    }
    return "?";
}

std::span<const int> GameState::cell(int x, int y) const
{
    if (!in_bounds(x, y)) {
        return {};
    }
    return cells_[static_cast<std::size_t>(y * width_ + x)];
}

const Instance* GameState::top(int x, int y) const
{
    auto ids = cell(x, y);
    return ids.empty() ? nullptr : &instances_[static_cast<std::size_t>(ids.back())];
}

std::size_t GameState::live_instance_count() const noexcept
{
    std::size_t n = 0;
    for (int c : counts_) {
        n += static_cast<std::size_t>(c);
    }
    return n;
}

const Instance* GameState::avatar() const noexcept
{
    if (avatar_id_ < 0) {
        return nullptr;
    }
    const Instance& a = instances_[static_cast<std::size_t>(avatar_id_)];
    return a.alive ? &a : nullptr;
}

std::optional<std::int64_t> GameState::player_variable(std::string_view name) const
{
    const auto& names = game_->player_variable_names();
    auto it = std::lower_bound(names.begin(), names.end(), name);
    if (it == names.end() || *it != name) {
        return std::nullopt;
    }
    return player_values_[static_cast<std::size_t>(it - names.begin())];
}

gdy::VariableMap GameState::player_variables() const
{
    gdy::VariableMap out;
    const auto& names = game_->player_variable_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        out.emplace(names[i], player_values_[i]);
    }
    return out;
}

namespace {

struct Binding {
    int src_id = -1;
    int dst_id = -1;
    int src_x = 0;
    int src_y = 0;
    int dst_x = 0;
    int dst_y = 0;
};

} // namespace

class Engine {
public:
    static GameState materialize(std::shared_ptr<const Game> game, const gdy::LevelLayout& layout, std::uint64_t seed)
    {
        if (!game) {
            throw std::invalid_argument("materialize: null game");
        }
        if (layout.width < 1 || layout.height < 1) {
            throw Error(ErrorCode::empty_level, "level has no cells");
        }
        GameState s;
        s.game_ = std::move(game);
        s.width_ = layout.width;
        s.height_ = layout.height;
        s.cells_.resize(static_cast<std::size_t>(layout.width) * static_cast<std::size_t>(layout.height));
        s.counts_.assign(s.game_->object_count(), 0);
        const auto& doc = s.game_->document();
        for (const auto& name : s.game_->player_variable_names()) {
            s.player_values_.push_back(doc.environment.player_variables.at(name));
        }
        s.rng_ = SplitMix64(seed);
        for (const auto& p : layout.placements) {
            auto idx = doc.object_index(p.object);
            if (!idx) {
                throw Error(ErrorCode::schema, "layout places undeclared object `" + p.object + "`");
            }
            if (!s.in_bounds(p.x, p.y)) {
                throw Error(ErrorCode::schema, "placement of `" + p.object + "` at (" + std::to_string(p.x) + "," +
                                                   std::to_string(p.y) + ") is out of bounds");
            }
            if (place(s, static_cast<int>(*idx), p.x, p.y) < 0) {
                throw Error(ErrorCode::schema, "two instances with equal Z at (" + std::to_string(p.x) + "," +
                                                   std::to_string(p.y) + ")");
            }
        }
        for (const auto& inst : s.instances_) {
            if (inst.object == s.game_->avatar_object()) {
                s.avatar_id_ = s.avatar_id_ < 0 ? inst.id : s.avatar_id_;
            }
        }
        return s;
    }

    static void require_one_avatar(const GameState& s)
    {
        const int n = s.count(s.game_->avatar_object());
        const auto& name = s.game_->object_name(s.game_->avatar_object());
        if (n == 0) {
            throw Error(ErrorCode::missing_avatar, "level has no `" + name + "` instance");
        }
        if (n > 1) {
            throw Error(ErrorCode::multiple_avatars, "level has " + std::to_string(n) + " `" + name + "` instances");
        }
    }

    static StepResult step(GameState& s, int action_id)
    {
        if (s.status_ != Status::running) {
            throw Error(ErrorCode::episode_over, "episode is over (" + std::string(to_string(s.status_)) + ")");
        }
        const auto& space = s.game_->action_space();
        if (action_id < 0 || static_cast<std::size_t>(action_id) >= space.size()) {
            throw Error(ErrorCode::bad_action,
                        "action id " + std::to_string(action_id) + " outside [0, " + std::to_string(space.size()) + ")");
        }
        StepResult result;
        ++s.step_count_;
        const ActionEntry& entry = space.entries[static_cast<std::size_t>(action_id)];
        if (entry.action_index >= 0 && s.avatar() != nullptr) {
            const Instance& actor = *s.avatar();
            const GridDelta delta = entry.direction ? delta_of(*entry.direction) : delta_of(actor.orientation);
            Binding b;
            if (const detail::Rule* rule = select(s, entry.action_index, actor.id, delta, b)) {
                if (entry.direction) {
                    s.instances_[static_cast<std::size_t>(actor.id)].orientation = *entry.direction;
                }
                execute(s, result, entry.action_index, delta, *rule, b, 0);
            }
        }
        s.accumulated_return_ += result.reward;
        if (any_holds(s, s.game_->win_conditions())) {
            s.status_ = Status::win;
            result.terminated = true;
        } else if (any_holds(s, s.game_->lose_conditions())) {
            s.status_ = Status::lose;
            result.terminated = true;
        } else if (auto max = s.game_->document().environment.max_steps;
                   max && s.step_count_ >= static_cast<std::uint64_t>(*max)) {
            s.status_ = Status::truncated;
            result.truncated = true;
        }
        result.info = s.player_variables();
        return result;
    }

    static std::vector<bool> mask(const GameState& s)
    {
        if (s.status_ != Status::running) {
            throw Error(ErrorCode::episode_over, "episode is over (" + std::string(to_string(s.status_)) + ")");
        }
        const auto& space = s.game_->action_space();
        std::vector<bool> out(space.size(), false);
        out[0] = true;
        const Instance* actor = s.avatar();
        if (actor == nullptr) {
            return out;
        }
        for (std::size_t i = 1; i < space.size(); ++i) {
            const ActionEntry& entry = space.entries[i];
            const GridDelta delta = entry.direction ? delta_of(*entry.direction) : delta_of(actor->orientation);
            Binding b;
            out[i] = select(s, entry.action_index, actor->id, delta, b) != nullptr;
        }
        return out;
    }

private:
    // Inserts a new instance; returns its id, or -1 on an equal-Z conflict.
    static int place(GameState& s, int object, int x, int y)
    {
        const auto& def = s.game_->document().objects[static_cast<std::size_t>(object)];
        auto& ids = s.cells_[static_cast<std::size_t>(y * s.width_ + x)];
        for (int id : ids) {
            if (s.instances_[static_cast<std::size_t>(id)].z == def.z) {
                return -1;
            }
        }
        Instance inst;
        inst.id = static_cast<int>(s.instances_.size());
        inst.object = object;
        inst.x = x;
        inst.y = y;
        inst.z = def.z;
        for (const auto& [name, value] : def.initial_variables) {
            (void)name;
            inst.variables.push_back(value);
        }
        s.instances_.push_back(std::move(inst));
        insert_sorted(s, ids, s.instances_.back().id);
        ++s.counts_[static_cast<std::size_t>(object)];
        return s.instances_.back().id;
    }

    static void insert_sorted(GameState& s, std::vector<int>& ids, int id)
    {
        const int z = s.instances_[static_cast<std::size_t>(id)].z;
        auto it = std::find_if(ids.begin(), ids.end(),
                               [&](int other) { return s.instances_[static_cast<std::size_t>(other)].z > z; });
        ids.insert(it, id);
    }

    static void unlink(GameState& s, const Instance& inst)
    {
        auto& ids = s.cells_[static_cast<std::size_t>(inst.y * s.width_ + inst.x)];
        ids.erase(std::find(ids.begin(), ids.end(), inst.id));
    }

    static std::int64_t value(const GameState& s, const detail::Operand& o, const Binding& b)
    {
        using Kind = detail::Operand::Kind;
        switch (o.kind) {
        case Kind::literal: return o.value;
        case Kind::src_var: return s.instances_[static_cast<std::size_t>(b.src_id)].variables[static_cast<std::size_t>(o.slot)];
        case Kind::dst_var:
            return b.dst_id < 0 ? 0 : s.instances_[static_cast<std::size_t>(b.dst_id)].variables[static_cast<std::size_t>(o.slot)];
        case Kind::player_var: return s.player_values_[static_cast<std::size_t>(o.slot)];
        case Kind::count: return s.counts_[static_cast<std::size_t>(o.slot)];
        }
        return 0;
    }

    static std::int64_t* slot(GameState& s, const detail::Operand& o, const Binding& b)
    {
        using Kind = detail::Operand::Kind;
        switch (o.kind) {
        case Kind::src_var:
            return &s.instances_[static_cast<std::size_t>(b.src_id)].variables[static_cast<std::size_t>(o.slot)];
        case Kind::dst_var:
            if (b.dst_id < 0) {
                return nullptr;
            }
            return &s.instances_[static_cast<std::size_t>(b.dst_id)].variables[static_cast<std::size_t>(o.slot)];
        case Kind::player_var: return &s.player_values_[static_cast<std::size_t>(o.slot)];
        default: return nullptr;
        }
    }

    static bool holds(const GameState& s, const detail::Condition& c, const Binding& b)
    {
        using gdy::ConditionOp;
        switch (c.op) {
        case ConditionOp::all_of:
            return std::all_of(c.children.begin(), c.children.end(), [&](const auto& ch) { return holds(s, ch, b); });
        case ConditionOp::any_of:
            return std::any_of(c.children.begin(), c.children.end(), [&](const auto& ch) { return holds(s, ch, b); });
        default: break;
        }
        const std::int64_t l = value(s, c.lhs, b);
        const std::int64_t r = value(s, c.rhs, b);
        switch (c.op) {
        case ConditionOp::eq: return l == r;
        case ConditionOp::neq: return l != r;
        case ConditionOp::lt: return l < r;
        case ConditionOp::lte: return l <= r;
        case ConditionOp::gt: return l > r;
        case ConditionOp::gte: return l >= r;
        default: return false;
        }
    }

    static bool all_hold(const GameState& s, const std::vector<detail::Condition>& cs, const Binding& b)
    {
        for (const auto& c : cs) {
            if (!holds(s, c, b)) {
                return false;
            }
        }
        return true;
    }

    static bool any_holds(const GameState& s, const std::vector<detail::Condition>& cs)
    {
        const Binding none;
        for (const auto& c : cs) {
            if (holds(s, c, none)) {
                return true;
            }
        }
        return false;
    }

    static const detail::Rule* select(const GameState& s, int action_index, int actor_id, GridDelta delta, Binding& b)
    {
        const Instance& actor = s.instances_[static_cast<std::size_t>(actor_id)];
        const int x = actor.x + delta.dx;
        const int y = actor.y + delta.dy;
        if (!s.in_bounds(x, y)) {
            return nullptr;
        }
        const Instance* dst = s.top(x, y);
        const int dst_object = dst ? dst->object : kEmptyObjectIndex;
        b = Binding{actor_id, dst ? dst->id : -1, actor.x, actor.y, x, y};
        for (const auto& rule : s.game_->rules(action_index, actor.object)) {
            if (rule.dst_object == dst_object && all_hold(s, rule.preconditions, b)) {
                return &rule;
            }
        }
        return nullptr;
    }

    static void execute(GameState& s, StepResult& r, int action_index, GridDelta delta, const detail::Rule& rule,
                        const Binding& b, int depth)
    {
        run(s, r, action_index, delta, rule.dst_commands, detail::Side::dst, b, depth);
        run(s, r, action_index, delta, rule.src_commands, detail::Side::src, b, depth);
    }

    static void run(GameState& s, StepResult& r, int action_index, GridDelta delta,
                    const std::vector<detail::Command>& commands, detail::Side side, const Binding& b, int depth)
    {
        for (const auto& cmd : commands) {
            run_one(s, r, action_index, delta, cmd, side, b, depth);
        }
    }

    static void run_one(GameState& s, StepResult& r, int action_index, GridDelta delta, const detail::Command& cmd,
                        detail::Side side, const Binding& b, int depth)
    {
        using gdy::CommandKind;
        const int self = side == detail::Side::src ? b.src_id : b.dst_id;
        auto self_alive = [&] { return self >= 0 && s.instances_[static_cast<std::size_t>(self)].alive; };
        auto here = [&]() -> std::pair<int, int> {
            if (self >= 0) {
                const Instance& i = s.instances_[static_cast<std::size_t>(self)];
                return {i.x, i.y};
            }
            return side == detail::Side::src ? std::pair{b.src_x, b.src_y} : std::pair{b.dst_x, b.dst_y};
        };
        auto emit = [&](EventKind kind, int object, int x, int y) { r.events.push_back({kind, object, x, y}); };
        const int self_object = self >= 0 ? s.instances_[static_cast<std::size_t>(self)].object : kEmptyObjectIndex;

        switch (cmd.kind) {
        case CommandKind::mov: {
            if (!self_alive()) {
                return;
            }
            const int tx = cmd.to_source_cell ? b.src_x : b.dst_x;
            const int ty = cmd.to_source_cell ? b.src_y : b.dst_y;
            Instance& inst = s.instances_[static_cast<std::size_t>(self)];
            if (inst.x == tx && inst.y == ty) {
                return;
            }
            for (int id : s.cells_[static_cast<std::size_t>(ty * s.width_ + tx)]) {
                if (s.instances_[static_cast<std::size_t>(id)].z == inst.z) {
                    return; // blocked
                }
            }
            unlink(s, inst);
            inst.x = tx;
            inst.y = ty;
            insert_sorted(s, s.cells_[static_cast<std::size_t>(ty * s.width_ + tx)], self);
            emit(EventKind::mov, self_object, tx, ty);
            return;
        }
        case CommandKind::cascade: {
            const int actor = b.dst_id;
            if (actor < 0 || !s.instances_[static_cast<std::size_t>(actor)].alive) {
                return;
            }
            const Instance& inst = s.instances_[static_cast<std::size_t>(actor)];
            if (depth + 1 > kMaxCascadeDepth) {
                emit(EventKind::cascade_overflow, inst.object, inst.x, inst.y);
                return;
            }
            emit(EventKind::cascade, inst.object, inst.x, inst.y);
            Binding nb;
            if (const detail::Rule* rule = select(s, action_index, actor, delta, nb)) {
                execute(s, r, action_index, delta, *rule, nb, depth + 1);
            }
            return;
        }
        case CommandKind::remove: {
            if (!self_alive()) {
                return;
            }
            Instance& inst = s.instances_[static_cast<std::size_t>(self)];
            unlink(s, inst);
            inst.alive = false;
            --s.counts_[static_cast<std::size_t>(inst.object)];
            emit(EventKind::remove, inst.object, inst.x, inst.y);
            return;
        }
        case CommandKind::spawn: {
            const auto [x, y] = here();
            if (place(s, cmd.object, x, y) >= 0) {
                emit(EventKind::spawn, cmd.object, x, y);
            }
            return;
        }
        case CommandKind::add:
        case CommandKind::sub:
        case CommandKind::set:
        case CommandKind::incr:
        case CommandKind::decr: {
            std::int64_t* target = slot(s, cmd.target, b);
            if (target == nullptr) {
                return;
            }
            const std::int64_t v = value(s, cmd.operand, b);
            EventKind kind = EventKind::set;
            switch (cmd.kind) {
            case CommandKind::add: *target += v; kind = EventKind::add; break;
            case CommandKind::sub: *target -= v; kind = EventKind::sub; break;
            case CommandKind::set: *target = v; kind = EventKind::set; break;
            case CommandKind::incr: ++*target; kind = EventKind::incr; break;
            case CommandKind::decr: --*target; kind = EventKind::decr; break;
            default: break;
            }
            const auto [x, y] = here();
            emit(kind, self_object, x, y);
            return;
        }
        case CommandKind::reward: {
            r.reward += value(s, cmd.operand, b);
            const auto [x, y] = here();
            emit(EventKind::reward, self_object, x, y);
            return;
        }
        case CommandKind::if_:
            run(s, r, action_index, delta, all_hold(s, cmd.conditions, b) ? cmd.on_true : cmd.on_false, side, b, depth);
            return;
        }
    }
};

GameState materialize(std::shared_ptr<const Game> game, const gdy::LevelLayout& layout, std::uint64_t seed)
{
    return Engine::materialize(std::move(game), layout, seed);
}

GameState reset(std::shared_ptr<const Game> game, const gdy::LevelLayout& layout, std::uint64_t seed)
{
    GameState s = Engine::materialize(std::move(game), layout, seed);
    Engine::require_one_avatar(s);
    return s;
}

StepResult step(GameState& state, int action_id)
{
    return Engine::step(state, action_id);
}

std::vector<bool> valid_action_mask(const GameState& state)
{
    return Engine::mask(state);
}

} // namespace gridforge::sim
