#include "gridforge/gdy/parser.hpp"

#include "gridforge/util/hash.hpp"
#include "yaml_tree.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

namespace gridforge::gdy {

namespace {

std::string describe_location(int line, int column)
{
    if (line <= 0) {
        return "";
    }
    return " at line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string summarize(const std::vector<Diagnostic>& diagnostics)
{
    std::string out = "invalid GDY document";
    if (!diagnostics.empty()) {
        out += ": " + diagnostics.front().path + ": " + diagnostics.front().message;
        if (diagnostics.size() > 1) {
            out += " (and " + std::to_string(diagnostics.size() - 1) + " more)";
        }
    }
    return out;
}

} // namespace

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : Error(ErrorCode::syntax, "YAML syntax error" + describe_location(line, column) + ": " + message),
      line_(line),
      column_(column)
{
}

SchemaError::SchemaError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorCode::schema, summarize(diagnostics)), diagnostics_(std::move(diagnostics))
{
}

UnknownCharacterError::UnknownCharacterError(char character, int x, int y)
    : Error(ErrorCode::unknown_character, std::string("unknown level character `") + character + "` at (" +
                                              std::to_string(x) + ", " + std::to_string(y) + ")"),
      character_(character),
      x_(x),
      y_(y)
{
}

namespace {

using detail::YamlNode;
using Kind = YamlNode::Kind;

std::optional<std::int64_t> parse_int(std::string_view s)
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::optional<bool> parse_bool(std::string_view s)
{
    static constexpr std::string_view truthy[] = {"true", "True", "TRUE", "yes", "Yes", "YES", "on", "On", "ON"};
    static constexpr std::string_view falsy[] = {"false", "False", "FALSE", "no", "No", "NO", "off", "Off", "OFF"};
    if (std::find(std::begin(truthy), std::end(truthy), s) != std::end(truthy)) {
        return true;
    }
    if (std::find(std::begin(falsy), std::end(falsy), s) != std::end(falsy)) {
        return false;
    }
    return std::nullopt;
}

class DocumentReader {
public:
    GdyDocument read(const YamlNode& root)
    {
        GdyDocument doc;
        if (root.kind != Kind::map) {
            fail("INVALID_TYPE", "", "document root must be a mapping", root);
            return doc;
        }
        if (const auto* env = root.find("Environment")) {
            read_environment(*env, doc.environment);
        } else {
            fail("MISSING_FIELD", "Environment", "missing `Environment` section", root);
        }
        if (const auto* actions = root.find("Actions"); actions && actions->kind != Kind::null) {
            if (expect(*actions, Kind::sequence, "Actions")) {
                for (std::size_t i = 0; i < actions->items.size(); ++i) {
                    doc.actions.push_back(read_action(actions->items[i], "Actions[" + std::to_string(i) + "]"));
                }
            }
        }
        if (const auto* objects = root.find("Objects")) {
            if (expect(*objects, Kind::sequence, "Objects")) {
                for (std::size_t i = 0; i < objects->items.size(); ++i) {
                    doc.objects.push_back(read_object(objects->items[i], "Objects[" + std::to_string(i) + "]"));
                }
            }
        } else {
            fail("MISSING_FIELD", "Objects", "missing `Objects` section", root);
        }
        return doc;
    }

    std::vector<Diagnostic> take_diagnostics() { return std::move(diagnostics_); }

private:
    void fail(std::string code, std::string path, const std::string& message, const YamlNode& at)
    {
        diagnostics_.push_back({Severity::error, std::move(code), std::move(path),
                                message + (at.line > 0 ? " (line " + std::to_string(at.line) + ")" : "")});
    }

    bool expect(const YamlNode& node, Kind kind, const std::string& path)
    {
        if (node.kind == kind) {
            return true;
        }
        static constexpr const char* names[] = {"null", "scalar", "sequence", "mapping"};
        fail("INVALID_TYPE", path, std::string("expected a ") + names[static_cast<int>(kind)], node);
        return false;
    }

    std::optional<std::string> scalar(const YamlNode& node, const std::string& path)
    {
        if (!expect(node, Kind::scalar, path)) {
            return std::nullopt;
        }
        return node.scalar;
    }

    std::optional<std::int64_t> integer(const YamlNode& node, const std::string& path)
    {
        if (!expect(node, Kind::scalar, path)) {
            return std::nullopt;
        }
        auto v = parse_int(node.scalar);
        if (!v) {
            fail("INVALID_TYPE", path, "expected an integer, got `" + node.scalar + "`", node);
        }
        return v;
    }

    std::optional<bool> boolean(const YamlNode& node, const std::string& path)
    {
        if (!expect(node, Kind::scalar, path)) {
            return std::nullopt;
        }
        auto v = parse_bool(node.scalar);
        if (!v) {
            fail("INVALID_TYPE", path, "expected a boolean, got `" + node.scalar + "`", node);
        }
        return v;
    }

    VariableMap read_variables(const YamlNode& node, const std::string& path)
    {
        VariableMap vars;
        if (node.kind == Kind::null || !expect(node, Kind::sequence, path)) {
            return vars;
        }
        for (std::size_t i = 0; i < node.items.size(); ++i) {
            const auto& item = node.items[i];
            const std::string p = path + "[" + std::to_string(i) + "]";
            if (!expect(item, Kind::map, p)) {
                continue;
            }
            const auto* name = item.find("Name");
            if (name == nullptr) {
                fail("MISSING_FIELD", p + ".Name", "variable needs a `Name`", item);
                continue;
            }
            auto n = scalar(*name, p + ".Name");
            std::int64_t initial = 0;
            if (const auto* iv = item.find("InitialValue")) {
                initial = integer(*iv, p + ".InitialValue").value_or(0);
            }
            if (n) {
                if (vars.contains(*n)) {
                    fail("DUPLICATE_VARIABLE", p + ".Name", "variable `" + *n + "` declared twice", item);
                }
                vars[*n] = initial;
            }
        }
        return vars;
    }

    void read_environment(const YamlNode& node, EnvironmentDef& env)
    {
        if (!expect(node, Kind::map, "Environment")) {
            return;
        }
        if (const auto* name = node.find("Name")) {
            env.name = scalar(*name, "Environment.Name").value_or("");
        }
        if (const auto* player = node.find("Player"); player && player->kind != Kind::null) {
            if (expect(*player, Kind::map, "Environment.Player")) {
                if (const auto* avatar = player->find("AvatarObject")) {
                    env.avatar_object = scalar(*avatar, "Environment.Player.AvatarObject").value_or("");
                }
                if (const auto* obs = player->find("Observer"); obs && obs->kind != Kind::null) {
                    read_window(*obs, env.observer);
                }
            }
        }
        if (const auto* observers = node.find("Observers"); observers && observers->kind != Kind::null) {
            if (expect(*observers, Kind::map, "Environment.Observers")) {
                if (const auto* vec = observers->find("Vector"); vec && vec->kind != Kind::null) {
                    if (expect(*vec, Kind::map, "Environment.Observers.Vector")) {
                        if (const auto* v = vec->find("IncludeRotation")) {
                            env.observer.include_orientation_channels =
                                boolean(*v, "Environment.Observers.Vector.IncludeRotation").value_or(false);
                        }
                        if (const auto* v = vec->find("IncludeVariables")) {
                            env.observer.include_player_variable_channels =
                                boolean(*v, "Environment.Observers.Vector.IncludeVariables").value_or(false);
                        }
                    }
                }
            }
        }
        if (const auto* max_steps = node.find("MaxSteps")) {
            env.max_steps = integer(*max_steps, "Environment.MaxSteps");
        }
        if (const auto* vars = node.find("Variables")) {
            env.player_variables = read_variables(*vars, "Environment.Variables");
        }
        if (const auto* term = node.find("Termination"); term && term->kind != Kind::null) {
            if (expect(*term, Kind::map, "Environment.Termination")) {
                if (const auto* win = term->find("Win")) {
                    env.termination.win = read_condition_list(*win, "Environment.Termination.Win");
                }
                if (const auto* lose = term->find("Lose")) {
                    env.termination.lose = read_condition_list(*lose, "Environment.Termination.Lose");
                }
            }
        }
        if (const auto* levels = node.find("Levels"); levels && levels->kind != Kind::null) {
            if (expect(*levels, Kind::sequence, "Environment.Levels")) {
                for (std::size_t i = 0; i < levels->items.size(); ++i) {
                    if (auto s = scalar(levels->items[i], "Environment.Levels[" + std::to_string(i) + "]")) {
                        env.levels.push_back(normalize_level_string(*s));
                    }
                }
            }
        }
    }

    void read_window(const YamlNode& node, ObserverConfig& config)
    {
        const std::string path = "Environment.Player.Observer";
        if (!expect(node, Kind::map, path)) {
            return;
        }
        if (const auto* w = node.find("Width")) {
            if (auto v = integer(*w, path + ".Width")) {
                config.window_width = static_cast<int>(std::clamp<std::int64_t>(*v, -1, 1 << 16));
            }
        }
        if (const auto* h = node.find("Height")) {
            if (auto v = integer(*h, path + ".Height")) {
                config.window_height = static_cast<int>(std::clamp<std::int64_t>(*v, -1, 1 << 16));
            }
        }
        if (const auto* r = node.find("RotateWithAvatar")) {
            config.rotate_with_avatar = boolean(*r, path + ".RotateWithAvatar").value_or(false);
        }
    }

    TileSpec read_tile(const YamlNode& sprite, const std::string& path)
    {
        TileSpec tile;
        if (!expect(sprite, Kind::map, path)) {
            return tile;
        }
        if (const auto* image = sprite.find("Image")) {
            if (image->kind == Kind::sequence && !image->items.empty()) {
                tile.key = scalar(image->items.front(), path + ".Image[0]").value_or("");
            } else {
                tile.key = scalar(*image, path + ".Image").value_or("");
            }
        }
        if (const auto* mode = sprite.find("TilingMode")) {
            tile.autotile = scalar(*mode, path + ".TilingMode").value_or("") == "WALL_16";
        }
        return tile;
    }

    ObjectDef read_object(const YamlNode& node, const std::string& path)
    {
        ObjectDef obj;
        if (!expect(node, Kind::map, path)) {
            return obj;
        }
        if (const auto* name = node.find("Name")) {
            obj.name = scalar(*name, path + ".Name").value_or("");
        } else {
            fail("MISSING_FIELD", path + ".Name", "object needs a `Name`", node);
        }
        if (const auto* mc = node.find("MapCharacter")) {
            if (auto s = scalar(*mc, path + ".MapCharacter")) {
                if (s->size() != 1) {
                    fail("INVALID_MAP_CHARACTER", path + ".MapCharacter", "map character must be one character",
                         *mc);
                } else {
                    obj.map_character = s->front();
                }
            }
        } else {
            fail("MISSING_FIELD", path + ".MapCharacter", "object needs a `MapCharacter`", node);
        }
        if (const auto* z = node.find("Z")) {
            if (auto v = integer(*z, path + ".Z")) {
                obj.z = static_cast<int>(std::clamp<std::int64_t>(*v, -1, 1 << 16));
            }
        }
        if (const auto* vars = node.find("Variables")) {
            obj.initial_variables = read_variables(*vars, path + ".Variables");
        }
        // Sprite2D normally sits under Observers; a Sprite2D next to an empty
        // Observers key is accepted too.
        const YamlNode* sprite = nullptr;
        std::string sprite_path;
        if (const auto* observers = node.find("Observers"); observers && observers->kind == Kind::map) {
            sprite = observers->find("Sprite2D");
            sprite_path = path + ".Observers.Sprite2D";
        }
        if (sprite == nullptr) {
            sprite = node.find("Sprite2D");
            sprite_path = path + ".Sprite2D";
        }
        if (sprite != nullptr && sprite->kind != Kind::null) {
            obj.tile = read_tile(*sprite, sprite_path);
        }
        if (obj.tile.key.empty()) {
            obj.tile.key = obj.name;
        }
        return obj;
    }

    std::vector<std::string> read_object_list(const YamlNode& node, const std::string& path)
    {
        std::vector<std::string> out;
        if (node.kind == Kind::sequence) {
            for (std::size_t i = 0; i < node.items.size(); ++i) {
                if (auto s = scalar(node.items[i], path + "[" + std::to_string(i) + "]")) {
                    out.push_back(*s);
                }
            }
        } else if (auto s = scalar(node, path)) {
            out.push_back(*s);
        }
        return out;
    }

    ActionDef read_action(const YamlNode& node, const std::string& path)
    {
        ActionDef action;
        if (!expect(node, Kind::map, path)) {
            return action;
        }
        if (const auto* name = node.find("Name")) {
            action.name = scalar(*name, path + ".Name").value_or("");
        } else {
            fail("MISSING_FIELD", path + ".Name", "action needs a `Name`", node);
        }
        if (const auto* desc = node.find("Description")) {
            action.description = scalar(*desc, path + ".Description").value_or("");
        }
        if (const auto* mapping = node.find("InputMapping")) {
            if (auto s = scalar(*mapping, path + ".InputMapping")) {
                if (*s == "Directional") {
                    action.input_mapping = InputMapping::directional;
                } else if (*s == "Unary") {
                    action.input_mapping = InputMapping::unary;
                } else {
                    fail("INVALID_INPUT_MAPPING", path + ".InputMapping",
                         "InputMapping must be `Directional` or `Unary`", *mapping);
                }
            }
        }
        if (const auto* behaviours = node.find("Behaviours"); behaviours && behaviours->kind != Kind::null) {
            if (expect(*behaviours, Kind::sequence, path + ".Behaviours")) {
                for (std::size_t i = 0; i < behaviours->items.size(); ++i) {
                    action.behaviours.push_back(
                        read_behaviour(behaviours->items[i], path + ".Behaviours[" + std::to_string(i) + "]"));
                }
            }
        }
        return action;
    }

    Behaviour read_behaviour(const YamlNode& node, const std::string& path)
    {
        Behaviour b;
        if (!expect(node, Kind::map, path)) {
            return b;
        }
        if (const auto* src = node.find("Src"); src && expect(*src, Kind::map, path + ".Src")) {
            if (const auto* obj = src->find("Object")) {
                b.src_object = scalar(*obj, path + ".Src.Object").value_or("");
            } else {
                fail("MISSING_FIELD", path + ".Src.Object", "behaviour source needs an `Object`", *src);
            }
            if (const auto* pre = src->find("Preconditions")) {
                b.preconditions = read_condition_list(*pre, path + ".Src.Preconditions");
            }
            if (const auto* cmds = src->find("Commands")) {
                b.src_commands = read_commands(*cmds, path + ".Src.Commands", 0);
            }
        } else if (src == nullptr) {
            fail("MISSING_FIELD", path + ".Src", "behaviour needs a `Src` block", node);
        }
        if (const auto* dst = node.find("Dst"); dst && expect(*dst, Kind::map, path + ".Dst")) {
            if (const auto* obj = dst->find("Object")) {
                b.dst_objects = read_object_list(*obj, path + ".Dst.Object");
            }
            if (const auto* cmds = dst->find("Commands")) {
                b.dst_commands = read_commands(*cmds, path + ".Dst.Commands", 0);
            }
        }
        return b;
    }

    Operand read_operand(const YamlNode& node, const std::string& path)
    {
        if (auto s = scalar(node, path)) {
            if (auto v = parse_int(*s)) {
                return Operand{*v};
            }
            return Operand{*s};
        }
        return Operand{std::int64_t{0}};
    }

    static std::optional<ConditionOp> condition_op(std::string_view key)
    {
        if (key == "eq") return ConditionOp::eq;
        if (key == "neq") return ConditionOp::neq;
        if (key == "lt") return ConditionOp::lt;
        if (key == "lte") return ConditionOp::lte;
        if (key == "gt") return ConditionOp::gt;
        if (key == "gte") return ConditionOp::gte;
        if (key == "and") return ConditionOp::all_of;
        if (key == "or") return ConditionOp::any_of;
        return std::nullopt;
    }

    // One mapping, each key an operator. Several keys all have to hold.
    std::vector<Condition> read_condition_map(const YamlNode& node, const std::string& path, int depth)
    {
        std::vector<Condition> out;
        if (!expect(node, Kind::map, path)) {
            return out;
        }
        for (const auto& [key, value] : node.entries) {
            const std::string p = path + "." + key;
            auto op = condition_op(key);
            if (!op) {
                fail("UNKNOWN_CONDITION", p, "unknown condition operator `" + key + "`", value);
                continue;
            }
            Condition cond;
            cond.op = *op;
            if (!expect(value, Kind::sequence, p)) {
                continue;
            }
            if (*op == ConditionOp::all_of || *op == ConditionOp::any_of) {
                if (depth > 32) {
                    fail("CONDITION_TOO_DEEP", p, "conditions nested too deeply", value);
                    continue;
                }
                for (std::size_t i = 0; i < value.items.size(); ++i) {
                    cond.children.push_back(
                        read_condition_item(value.items[i], p + "[" + std::to_string(i) + "]", depth + 1));
                }
            } else {
                for (std::size_t i = 0; i < value.items.size(); ++i) {
                    cond.operands.push_back(read_operand(value.items[i], p + "[" + std::to_string(i) + "]"));
                }
            }
            out.push_back(std::move(cond));
        }
        return out;
    }

    Condition read_condition_item(const YamlNode& node, const std::string& path, int depth)
    {
        auto conds = read_condition_map(node, path, depth);
        if (conds.size() == 1) {
            return std::move(conds.front());
        }
        Condition all;
        all.op = ConditionOp::all_of;
        all.children = std::move(conds);
        return all;
    }

    std::vector<Condition> read_condition_list(const YamlNode& node, const std::string& path, int depth = 0)
    {
        std::vector<Condition> out;
        if (node.kind == Kind::null) {
            return out;
        }
        if (node.kind == Kind::map) {
            out.push_back(read_condition_item(node, path, depth));
            return out;
        }
        if (!expect(node, Kind::sequence, path)) {
            return out;
        }
        for (std::size_t i = 0; i < node.items.size(); ++i) {
            out.push_back(read_condition_item(node.items[i], path + "[" + std::to_string(i) + "]", depth));
        }
        return out;
    }

    static std::optional<CommandKind> command_kind(std::string_view key)
    {
        if (key == "mov") return CommandKind::mov;
        if (key == "cascade") return CommandKind::cascade;
        if (key == "remove") return CommandKind::remove;
        if (key == "spawn") return CommandKind::spawn;
        if (key == "add") return CommandKind::add;
        if (key == "sub") return CommandKind::sub;
        if (key == "set") return CommandKind::set;
        if (key == "incr") return CommandKind::incr;
        if (key == "decr") return CommandKind::decr;
        if (key == "reward") return CommandKind::reward;
        if (key == "if") return CommandKind::if_;
        return std::nullopt;
    }

    std::vector<Command> read_commands(const YamlNode& node, const std::string& path, int depth)
    {
        std::vector<Command> out;
        if (node.kind == Kind::null || !expect(node, Kind::sequence, path)) {
            return out;
        }
        for (std::size_t i = 0; i < node.items.size(); ++i) {
            const auto& item = node.items[i];
            const std::string p = path + "[" + std::to_string(i) + "]";
            if (!expect(item, Kind::map, p)) {
                continue;
            }
            if (item.entries.size() != 1) {
                fail("INVALID_COMMAND", p, "a command is a mapping with exactly one key", item);
                continue;
            }
            if (auto cmd = read_command(item.entries.front().first, item.entries.front().second, p, depth)) {
                out.push_back(std::move(*cmd));
            }
        }
        return out;
    }

    std::optional<Command> read_command(const std::string& key, const YamlNode& value, const std::string& path,
                                        int depth)
    {
        const std::string p = path + "." + key;
        auto kind = command_kind(key);
        if (!kind) {
            fail("UNKNOWN_COMMAND", p, "unknown command `" + key + "`", value);
            return std::nullopt;
        }
        Command cmd;
        cmd.kind = *kind;
        switch (*kind) {
        case CommandKind::mov:
        case CommandKind::cascade:
        case CommandKind::spawn: {
            auto s = scalar(value, p);
            if (!s) {
                return std::nullopt;
            }
            cmd.target = *s;
            break;
        }
        case CommandKind::remove: {
            auto b = boolean(value, p);
            if (!b) {
                return std::nullopt;
            }
            if (!*b) {
                fail("INVALID_COMMAND", p, "`remove` only accepts `true`", value);
                return std::nullopt;
            }
            break;
        }
        case CommandKind::reward: {
            auto v = integer(value, p);
            if (!v) {
                return std::nullopt;
            }
            cmd.operand = Operand{*v};
            break;
        }
        case CommandKind::incr:
        case CommandKind::decr: {
            const YamlNode* target = &value;
            if (value.kind == Kind::sequence && value.items.size() == 1) {
                target = &value.items.front();
            }
            auto s = scalar(*target, p);
            if (!s) {
                return std::nullopt;
            }
            cmd.target = *s;
            break;
        }
        case CommandKind::add:
        case CommandKind::sub:
        case CommandKind::set: {
            if (!expect(value, Kind::sequence, p)) {
                return std::nullopt;
            }
            if (value.items.size() != 2) {
                fail("INVALID_COMMAND", p, "`" + key + "` takes [variable, value]", value);
                return std::nullopt;
            }
            auto s = scalar(value.items[0], p + "[0]");
            if (!s) {
                return std::nullopt;
            }
            cmd.target = *s;
            cmd.operand = read_operand(value.items[1], p + "[1]");
            break;
        }
        case CommandKind::if_: {
            if (!expect(value, Kind::map, p)) {
                return std::nullopt;
            }
            if (depth >= kMaxIfDepth) {
                fail("IF_TOO_DEEP", p, "if nesting deeper than " + std::to_string(kMaxIfDepth), value);
                return std::nullopt;
            }
            if (const auto* conds = value.find("Conditions")) {
                if (conds->kind == Kind::map) {
                    cmd.conditions = read_condition_map(*conds, p + ".Conditions", 0);
                } else {
                    cmd.conditions = read_condition_list(*conds, p + ".Conditions");
                }
            } else {
                fail("MISSING_FIELD", p + ".Conditions", "`if` needs `Conditions`", value);
            }
            if (const auto* t = value.find("OnTrue")) {
                cmd.on_true = read_commands(*t, p + ".OnTrue", depth + 1);
            }
            if (const auto* f = value.find("OnFalse")) {
                cmd.on_false = read_commands(*f, p + ".OnFalse", depth + 1);
            }
            break;
        }
        }
        return cmd;
    }

    std::vector<Diagnostic> diagnostics_;
};

} // namespace

std::string normalize_level_string(std::string_view level_string)
{
    std::vector<std::string> rows;
    std::string row;
    auto flush = [&] {
        while (!row.empty() && (row.back() == ' ' || row.back() == '\t' || row.back() == '\r')) {
            row.pop_back();
        }
        rows.push_back(std::move(row));
        row.clear();
    };
    for (char c : level_string) {
        if (c == '\n') {
            flush();
        } else if (c != '\r') {
            row.push_back(c);
        }
    }
    flush();
    while (!rows.empty() && rows.back().empty()) {
        rows.pop_back();
    }
    std::string out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) {
            out.push_back('\n');
        }
        out += rows[i];
    }
    return out;
}

GdyDocument parse_gdy(std::string_view text)
{
    const YamlNode root = detail::read_yaml(text);
    DocumentReader reader;
    GdyDocument doc = reader.read(root);
    auto diagnostics = reader.take_diagnostics();
    if (!diagnostics.empty()) {
        throw SchemaError(std::move(diagnostics));
    }
    diagnostics = validate(doc);
    if (!diagnostics.empty()) {
        throw SchemaError(std::move(diagnostics));
    }
    doc.source_hash = fnv1a64(serialize_gdy(doc));
    return doc;
}

LevelLayout parse_level(const GdyDocument& document, std::string_view level_string)
{
    const std::string normalized = normalize_level_string(level_string);
    if (normalized.empty()) {
        throw Error(ErrorCode::empty_level, "level string has no rows");
    }
    LevelLayout layout;
    int x = 0;
    int y = 0;
    for (char c : normalized) {
        if (c == '\n') {
            layout.width = std::max(layout.width, x);
            x = 0;
            ++y;
            continue;
        }
        if (c != kEmptyCell) {
            const ObjectDef* obj = document.find_object(c);
            if (obj == nullptr) {
                throw UnknownCharacterError(c, x, y);
            }
            layout.placements.push_back({x, y, obj->name});
        }
        ++x;
    }
    layout.width = std::max(layout.width, x);
    layout.height = y + 1;
    if (layout.width == 0) {
        throw Error(ErrorCode::empty_level, "level string has no cells");
    }
    return layout;
}

std::string serialize_level(const LevelLayout& layout, const GdyDocument& document)
{
    const auto w = static_cast<std::size_t>(std::max(layout.width, 0));
    const auto h = static_cast<std::size_t>(std::max(layout.height, 0));
    std::vector<std::string> rows(h, std::string(w, kEmptyCell));
    for (const auto& p : layout.placements) {
        if (p.x < 0 || p.y < 0 || static_cast<std::size_t>(p.x) >= w || static_cast<std::size_t>(p.y) >= h) {
            continue;
        }
        const ObjectDef* obj = document.find_object(p.object);
        rows[static_cast<std::size_t>(p.y)][static_cast<std::size_t>(p.x)] =
            obj != nullptr ? obj->map_character : kEmptyCell;
    }
    std::string out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) {
            out.push_back('\n');
        }
        out += rows[i];
    }
    return out;
}

} // namespace gridforge::gdy
