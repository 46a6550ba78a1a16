#pragma once

#include "gridforge/gdy/document.hpp"
#include "gridforge/sim/action_space.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gridforge::sim {

inline constexpr int kEmptyObjectIndex = -1;
inline constexpr int kMaxCascadeDepth = 32;

namespace detail {

struct Operand {
    enum class Kind : std::uint8_t { literal, src_var, dst_var, player_var, count };
    Kind kind = Kind::literal;
    int slot = 0;
    std::int64_t value = 0;
};

struct Condition {
    gdy::ConditionOp op = gdy::ConditionOp::eq;
    Operand lhs;
    Operand rhs;
    std::vector<Condition> children;
};

// Which instance a command acts on.
enum class Side : std::uint8_t { src, dst };

struct Command {
    gdy::CommandKind kind = gdy::CommandKind::reward;
    bool to_source_cell = false; // mov: `_src` instead of `_dest`
    int object = -1;             // spawn
    Operand target;              // arithmetic destination (never literal/count)
    Operand operand;             // add/sub/set operand, reward amount
    std::vector<Condition> conditions;
    std::vector<Command> on_true;
    std::vector<Command> on_false;
};

// One behaviour specialised for a single destination object.
struct Rule {
    int behaviour_index = 0;
    int dst_object = kEmptyObjectIndex;
    std::vector<Condition> preconditions;
    std::vector<Command> src_commands;
    std::vector<Command> dst_commands;
};

} // namespace detail

// A validated document compiled into index-based rule tables. Immutable and
// safe to share between any number of concurrently stepped states.
class Game {
public:
    // Throws gdy::SchemaError if the document does not validate.
    [[nodiscard]] static std::shared_ptr<const Game> compile(gdy::GdyDocument document);

    [[nodiscard]] const gdy::GdyDocument& document() const noexcept { return document_; }
    [[nodiscard]] const ActionSpace& action_space() const noexcept { return action_space_; }
    [[nodiscard]] int avatar_object() const noexcept { return avatar_object_; }
    [[nodiscard]] std::size_t object_count() const noexcept { return document_.objects.size(); }
    [[nodiscard]] const std::string& object_name(int index) const;
    // Sorted by name; slot order of GameState player variables.
    [[nodiscard]] const std::vector<std::string>& player_variable_names() const noexcept
    {
        return player_variable_names_;
    }
    // Sorted by name; slot order of each instance's variables.
    [[nodiscard]] const std::vector<std::string>& object_variable_names(int object) const;

    // Rules for (action, src object), in declaration order.
    [[nodiscard]] const std::vector<detail::Rule>& rules(int action, int src_object) const;
    [[nodiscard]] const std::vector<detail::Condition>& win_conditions() const noexcept { return win_; }
    [[nodiscard]] const std::vector<detail::Condition>& lose_conditions() const noexcept { return lose_; }

private:
    Game() = default;

    gdy::GdyDocument document_;
    ActionSpace action_space_;
    int avatar_object_ = kEmptyObjectIndex;
    std::vector<std::string> player_variable_names_;
    std::vector<std::vector<std::string>> object_variable_names_;
    std::vector<std::vector<detail::Rule>> rules_; // [action * objects + src]
    std::vector<detail::Condition> win_;
    std::vector<detail::Condition> lose_;

    friend class GameCompiler;
};

} // namespace gridforge::sim
