#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gridforge::gdy {

// Name that matches a cell holding no object instance at all.
inline constexpr std::string_view kEmptyObject = "_empty";
inline constexpr char kEmptyCell = '.';
inline constexpr int kMaxIfDepth = 8;

using VariableMap = std::map<std::string, std::int64_t>;

struct TileSpec {
    std::string key;
    // Pick one of 16 variants from the N/E/S/W same-object neighbours.
    bool autotile = false;

    friend bool operator==(const TileSpec&, const TileSpec&) = default;
};

struct ObjectDef {
    std::string name;
    char map_character = '?';
    int z = 0;
    VariableMap initial_variables;
    TileSpec tile;

    friend bool operator==(const ObjectDef&, const ObjectDef&) = default;
};

// A literal, a variable name (optionally `src.` / `dst.` qualified) or `<object>:count`.
struct Operand {
    std::variant<std::int64_t, std::string> value;

    [[nodiscard]] bool is_literal() const noexcept { return value.index() == 0; }
    [[nodiscard]] std::int64_t literal() const { return std::get<0>(value); }
    [[nodiscard]] const std::string& reference() const { return std::get<1>(value); }

    friend bool operator==(const Operand&, const Operand&) = default;
};

enum class ConditionOp { eq, neq, lt, lte, gt, gte, all_of, any_of };

struct Condition {
    ConditionOp op = ConditionOp::eq;
    std::vector<Operand> operands;    // comparisons: exactly two
    std::vector<Condition> children;  // all_of / any_of

    friend bool operator==(const Condition&, const Condition&) = default;
};

enum class CommandKind { mov, cascade, remove, spawn, add, sub, set, incr, decr, reward, if_ };

struct Command {
    CommandKind kind = CommandKind::reward;
    // mov/cascade: `_dest` or `_src`; spawn: object name; arithmetic: variable reference.
    std::string target;
    // add/sub/set operand; reward amount.
    Operand operand{std::int64_t{0}};
    // if: conditions that must all hold, and the two branches.
    std::vector<Condition> conditions;
    std::vector<Command> on_true;
    std::vector<Command> on_false;

    friend bool operator==(const Command&, const Command&) = default;
};

struct Behaviour {
    std::string src_object;
    std::vector<std::string> dst_objects;
    std::vector<Condition> preconditions; // all must hold
    std::vector<Command> src_commands;
    std::vector<Command> dst_commands;

    friend bool operator==(const Behaviour&, const Behaviour&) = default;
};

enum class InputMapping { directional, unary };

struct ActionDef {
    std::string name;
    InputMapping input_mapping = InputMapping::directional;
    // Human label; empty means derived from the name.
    std::string description;
    std::vector<Behaviour> behaviours;

    friend bool operator==(const ActionDef&, const ActionDef&) = default;
};

struct ObserverConfig {
    // Egocentric crop around the avatar; absent means the whole grid.
    std::optional<int> window_width;
    std::optional<int> window_height;
    bool rotate_with_avatar = false;
    bool include_orientation_channels = false;
    bool include_player_variable_channels = false;

    [[nodiscard]] bool has_window() const noexcept { return window_width.has_value(); }

    friend bool operator==(const ObserverConfig&, const ObserverConfig&) = default;
};

struct Termination {
    // Each list is satisfied when any one of its conditions holds.
    std::vector<Condition> win;
    std::vector<Condition> lose;

    friend bool operator==(const Termination&, const Termination&) = default;
};

struct EnvironmentDef {
    std::string name;
    std::string avatar_object;
    Termination termination;
    std::optional<std::int64_t> max_steps;
    VariableMap player_variables;
    ObserverConfig observer;
    std::vector<std::string> levels;

    friend bool operator==(const EnvironmentDef&, const EnvironmentDef&) = default;
};

struct GdyDocument {
    EnvironmentDef environment;
    std::vector<ActionDef> actions;
    std::vector<ObjectDef> objects;
    // FNV-1a 64 of the canonical serialization.
    std::uint64_t source_hash = 0;

    [[nodiscard]] const ObjectDef* find_object(std::string_view name) const noexcept;
    [[nodiscard]] const ObjectDef* find_object(char map_character) const noexcept;
    [[nodiscard]] std::optional<std::size_t> object_index(std::string_view name) const noexcept;

    friend bool operator==(const GdyDocument&, const GdyDocument&) = default;
};

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string code;
    std::string path;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Checks every consistency rule of the model. Empty result means the document
// can be compiled and run. Pure.
[[nodiscard]] std::vector<Diagnostic> validate(const GdyDocument& document);

[[nodiscard]] std::string_view to_string(CommandKind kind) noexcept;
[[nodiscard]] std::string_view to_string(ConditionOp op) noexcept;
[[nodiscard]] std::string_view to_string(Severity severity) noexcept;

} // namespace gridforge::gdy
