#include "gridforge/gdy/document.hpp"
#include "gridforge/gdy/parser.hpp"
#include "gridforge/gdy/references.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

namespace gridforge::gdy {

const ObjectDef* GdyDocument::find_object(std::string_view name) const noexcept
{
    for (const auto& obj : objects) {
        if (obj.name == name) {
            return &obj;
        }
    }
    return nullptr;
}

const ObjectDef* GdyDocument::find_object(char map_character) const noexcept
{
    for (const auto& obj : objects) {
        if (obj.map_character == map_character) {
            return &obj;
        }
    }
    return nullptr;
}

std::optional<std::size_t> GdyDocument::object_index(std::string_view name) const noexcept
{
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (objects[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::string_view to_string(CommandKind kind) noexcept
{
    switch (kind) {
    case CommandKind::mov: return "mov";
    case CommandKind::cascade: return "cascade";
    case CommandKind::remove: return "remove";
    case CommandKind::spawn: return "spawn";
    case CommandKind::add: return "add";
    case CommandKind::sub: return "sub";
    case CommandKind::set: return "set";
    case CommandKind::incr: return "incr";
    case CommandKind::decr: return "decr";
    case CommandKind::reward: return "reward";
    case CommandKind::if_: return "if";
    }
    return "?";
}

std::string_view to_string(ConditionOp op) noexcept
{
    switch (op) {
    case ConditionOp::eq: return "eq";
    case ConditionOp::neq: return "neq";
    case ConditionOp::lt: return "lt";
    case ConditionOp::lte: return "lte";
    case ConditionOp::gt: return "gt";
    case ConditionOp::gte: return "gte";
    case ConditionOp::all_of: return "and";
    case ConditionOp::any_of: return "or";
    }
    return "?";
}

std::string_view to_string(Severity severity) noexcept
{
    return severity == Severity::error ? "error" : "warning";
}

namespace {

// What names a condition or command may see.
struct Scope {
    const ObjectDef* src = nullptr;             // null for `_empty`
    std::vector<const ObjectDef*> dst;          // null entries for `_empty`
    bool executing_is_dst = false;
    bool in_behaviour = true;
};

class Validator {
public:
    explicit Validator(const GdyDocument& doc) : doc_(doc) {}

    std::vector<Diagnostic> run()
    {
        check_objects();
        check_environment();
        check_actions();
        return std::move(out_);
    }

private:
    void error(std::string code, std::string path, std::string message)
    {
        out_.push_back({Severity::error, std::move(code), std::move(path), std::move(message)});
    }

    bool object_known(std::string_view name) const
    {
        return name == kEmptyObject || doc_.find_object(name) != nullptr;
    }

    void check_objects()
    {
        std::set<std::string> names;
        std::set<char> chars;
        for (std::size_t i = 0; i < doc_.objects.size(); ++i) {
            const auto& obj = doc_.objects[i];
            const std::string path = "Objects[" + std::to_string(i) + "]";
            if (obj.name == kEmptyObject) {
                error("RESERVED_OBJECT_NAME", path + ".Name", "`_empty` is reserved");
            } else if (!is_identifier(obj.name)) {
                error("INVALID_NAME", path + ".Name", "object name `" + obj.name + "` is not an identifier");
            }
            if (!names.insert(obj.name).second) {
                error("DUPLICATE_OBJECT_NAME", path + ".Name", "object `" + obj.name + "` declared twice");
            }
            const auto ch = static_cast<unsigned char>(obj.map_character);
            if (!std::isgraph(ch) || obj.map_character == kEmptyCell) {
                error("INVALID_MAP_CHARACTER", path + ".MapCharacter",
                      "map character must be a printable non-space character other than `.`");
            } else if (!chars.insert(obj.map_character).second) {
                error("DUPLICATE_MAP_CHARACTER", path + ".MapCharacter",
                      std::string("map character `") + obj.map_character + "` used by more than one object");
            }
            if (obj.z < 0) {
                error("NEGATIVE_Z", path + ".Z", "Z must be >= 0");
            }
            for (const auto& [var, value] : obj.initial_variables) {
                (void)value;
                if (!is_identifier(var)) {
                    error("INVALID_NAME", path + ".Variables", "variable name `" + var + "` is not an identifier");
                }
            }
        }
    }

    void check_environment()
    {
        const auto& env = doc_.environment;
        if (env.avatar_object.empty()) {
            error("MISSING_AVATAR_OBJECT", "Environment.Player.AvatarObject", "no avatar object declared");
        } else if (doc_.find_object(env.avatar_object) == nullptr) {
            error("UNKNOWN_AVATAR_OBJECT", "Environment.Player.AvatarObject",
                  "avatar object `" + env.avatar_object + "` is not declared");
        }
        if (env.max_steps && *env.max_steps < 1) {
            error("INVALID_MAX_STEPS", "Environment.MaxSteps", "MaxSteps must be >= 1");
        }
        const auto& obs = env.observer;
        if (obs.window_width.has_value() != obs.window_height.has_value() ||
            (obs.window_width && (*obs.window_width < 1 || *obs.window_height < 1))) {
            error("INVALID_OBSERVER_WINDOW", "Environment.Player.Observer",
                  "observer window needs both Width and Height, each >= 1");
        }
        for (const auto& [var, value] : env.player_variables) {
            (void)value;
            if (!is_identifier(var)) {
                error("INVALID_NAME", "Environment.Variables", "variable name `" + var + "` is not an identifier");
            }
        }
        Scope global;
        global.in_behaviour = false;
        for (std::size_t i = 0; i < env.termination.win.size(); ++i) {
            check_condition(env.termination.win[i], global, "Environment.Termination.Win[" + std::to_string(i) + "]");
        }
        for (std::size_t i = 0; i < env.termination.lose.size(); ++i) {
            check_condition(env.termination.lose[i], global,
                            "Environment.Termination.Lose[" + std::to_string(i) + "]");
        }
        for (std::size_t i = 0; i < env.levels.size(); ++i) {
            const std::string level = normalize_level_string(env.levels[i]);
            for (char c : level) {
                if (c == '\n' || c == kEmptyCell) {
                    continue;
                }
                if (doc_.find_object(c) == nullptr) {
                    error("UNMAPPED_LEVEL_CHARACTER", "Environment.Levels[" + std::to_string(i) + "]",
                          std::string("character `") + c + "` is not any object's MapCharacter");
                    break;
                }
            }
        }
    }

    void check_actions()
    {
        std::set<std::string> names;
        for (std::size_t a = 0; a < doc_.actions.size(); ++a) {
            const auto& action = doc_.actions[a];
            const std::string path = "Actions[" + std::to_string(a) + "]";
            if (!is_identifier(action.name)) {
                error("INVALID_NAME", path + ".Name", "action name `" + action.name + "` is not an identifier");
            }
            if (!names.insert(action.name).second) {
                error("DUPLICATE_ACTION_NAME", path + ".Name", "action `" + action.name + "` declared twice");
            }
            if (action.behaviours.empty()) {
                error("EMPTY_BEHAVIOURS", path + ".Behaviours", "action has no behaviours");
            }
            for (std::size_t b = 0; b < action.behaviours.size(); ++b) {
                check_behaviour(action.behaviours[b], path + ".Behaviours[" + std::to_string(b) + "]");
            }
        }
    }

    void check_behaviour(const Behaviour& behaviour, const std::string& path)
    {
        Scope scope;
        if (!object_known(behaviour.src_object)) {
            error("UNDECLARED_OBJECT", path + ".Src.Object", "object `" + behaviour.src_object + "` is not declared");
        }
        scope.src = doc_.find_object(behaviour.src_object);
        if (behaviour.dst_objects.empty()) {
            error("EMPTY_DST", path + ".Dst.Object", "behaviour has no destination object");
        }
        bool dst_ok = true;
        for (const auto& name : behaviour.dst_objects) {
            if (!object_known(name)) {
                error("UNDECLARED_OBJECT", path + ".Dst.Object", "object `" + name + "` is not declared");
                dst_ok = false;
            }
            scope.dst.push_back(doc_.find_object(name));
        }
        for (std::size_t i = 0; i < behaviour.preconditions.size(); ++i) {
            check_condition(behaviour.preconditions[i], scope,
                            path + ".Src.Preconditions[" + std::to_string(i) + "]");
        }
        scope.executing_is_dst = false;
        check_commands(behaviour.src_commands, scope, path + ".Src.Commands", 0);
        if (dst_ok) {
            scope.executing_is_dst = true;
            check_commands(behaviour.dst_commands, scope, path + ".Dst.Commands", 0);
        }
    }

    static bool declares(const ObjectDef* obj, const std::string& var)
    {
        return obj != nullptr && obj->initial_variables.contains(var);
    }

    // Returns an empty string when the reference resolves, else a reason.
    std::string resolve(const std::string& text, const Scope& scope, bool writable) const
    {
        const VariableRef ref = parse_reference(text);
        const bool player = doc_.environment.player_variables.contains(ref.name);
        switch (ref.scope) {
        case VariableRef::Scope::count:
            if (writable) {
                return "`" + text + "` is a read-only counter";
            }
            return doc_.find_object(ref.name) != nullptr ? "" : "counter of undeclared object `" + ref.name + "`";
        case VariableRef::Scope::src:
            if (!scope.in_behaviour || !declares(scope.src, ref.name)) {
                return "source object has no variable `" + ref.name + "`";
            }
            return "";
        case VariableRef::Scope::dst:
            if (!scope.in_behaviour || scope.dst.empty()) {
                return "no destination object for `" + text + "`";
            }
            for (const auto* d : scope.dst) {
                if (!declares(d, ref.name)) {
                    return "destination object has no variable `" + ref.name + "`";
                }
            }
            return "";
        case VariableRef::Scope::plain:
            if (player) {
                return "";
            }
            if (!scope.in_behaviour) {
                return "unknown variable `" + ref.name + "`";
            }
            if (!scope.executing_is_dst) {
                return declares(scope.src, ref.name) ? "" : "unknown variable `" + ref.name + "`";
            }
            for (const auto* d : scope.dst) {
                if (!declares(d, ref.name)) {
                    return "unknown variable `" + ref.name + "`";
                }
            }
            return scope.dst.empty() ? "unknown variable `" + ref.name + "`" : "";
        }
        return "unresolvable";
    }

    void check_operand(const Operand& operand, const Scope& scope, const std::string& path)
    {
        if (operand.is_literal()) {
            return;
        }
        if (auto why = resolve(operand.reference(), scope, false); !why.empty()) {
            error(code_for(operand.reference()), path, why);
        }
    }

    std::string code_for(const std::string& ref) const
    {
        const VariableRef r = parse_reference(ref);
        return r.scope == VariableRef::Scope::count && doc_.find_object(r.name) == nullptr ? "UNDECLARED_OBJECT"
                                                                                          : "UNDECLARED_VARIABLE";
    }

    void check_condition(const Condition& cond, const Scope& scope, const std::string& path)
    {
        if (cond.op == ConditionOp::all_of || cond.op == ConditionOp::any_of) {
            if (cond.children.empty() || !cond.operands.empty()) {
                error("BAD_CONDITION", path, std::string(to_string(cond.op)) + " takes a nonempty list of conditions");
            }
            for (std::size_t i = 0; i < cond.children.size(); ++i) {
                check_condition(cond.children[i], scope, path + "." + std::string(to_string(cond.op)) + "[" +
                                                             std::to_string(i) + "]");
            }
            return;
        }
        if (cond.operands.size() != 2 || !cond.children.empty()) {
            error("BAD_CONDITION", path, std::string(to_string(cond.op)) + " takes exactly two operands");
            return;
        }
        for (std::size_t i = 0; i < 2; ++i) {
            check_operand(cond.operands[i], scope, path + "." + std::string(to_string(cond.op)) + "[" +
                                                       std::to_string(i) + "]");
        }
    }

    void check_commands(const std::vector<Command>& commands, const Scope& scope, const std::string& path, int depth)
    {
        for (std::size_t i = 0; i < commands.size(); ++i) {
            check_command(commands[i], scope, path + "[" + std::to_string(i) + "]", depth);
        }
    }

    void check_command(const Command& cmd, const Scope& scope, const std::string& path, int depth)
    {
        const std::string where = path + "." + std::string(to_string(cmd.kind));
        switch (cmd.kind) {
        case CommandKind::mov:
            if (cmd.target != "_dest" && cmd.target != "_src") {
                error("INVALID_TARGET", where, "target must be `_dest` or `_src`");
            }
            break;
        case CommandKind::cascade:
            if (cmd.target != "_dest") {
                error("INVALID_TARGET", where, "cascade target must be `_dest`");
            }
            break;
        case CommandKind::remove:
        case CommandKind::reward:
            break;
        case CommandKind::spawn:
            if (doc_.find_object(cmd.target) == nullptr) {
                error("UNDECLARED_OBJECT", where, "cannot spawn undeclared object `" + cmd.target + "`");
            } else if (cmd.target == doc_.environment.avatar_object) {
                error("SPAWN_AVATAR", where, "the avatar object cannot be spawned");
            }
            break;
        case CommandKind::add:
        case CommandKind::sub:
        case CommandKind::set:
            check_operand(cmd.operand, scope, where + "[1]");
            [[fallthrough]];
        case CommandKind::incr:
        case CommandKind::decr:
            if (auto why = resolve(cmd.target, scope, true); !why.empty()) {
                const VariableRef r = parse_reference(cmd.target);
                error(r.scope == VariableRef::Scope::count ? "READONLY_VARIABLE" : "UNDECLARED_VARIABLE",
                      where + "[0]", why);
            }
            break;
        case CommandKind::if_:
            if (depth + 1 > kMaxIfDepth) {
                error("IF_TOO_DEEP", where, "if nesting deeper than " + std::to_string(kMaxIfDepth));
                return;
            }
            if (cmd.conditions.empty()) {
                error("BAD_CONDITION", where + ".Conditions", "if needs at least one condition");
            }
            for (std::size_t i = 0; i < cmd.conditions.size(); ++i) {
                check_condition(cmd.conditions[i], scope, where + ".Conditions[" + std::to_string(i) + "]");
            }
            check_commands(cmd.on_true, scope, where + ".OnTrue", depth + 1);
            check_commands(cmd.on_false, scope, where + ".OnFalse", depth + 1);
            break;
        }
    }

    const GdyDocument& doc_;
    std::vector<Diagnostic> out_;
};

} // namespace

std::vector<Diagnostic> validate(const GdyDocument& document)
{
    return Validator(document).run();
}

} // namespace gridforge::gdy
