#include "gridforge/gdy/parser.hpp"

#include <yaml-cpp/emitter.h>
#include <yaml-cpp/emittermanip.h>

namespace gridforge::gdy {

namespace {

// Every mapping is written with its keys in lexicographic order so that two
// documents that differ only in key order or formatting serialize identically.
class CanonicalWriter {
public:
    std::string write(const GdyDocument& doc)
    {
        out_.SetIndent(2);
        out_ << YAML::BeginMap;
        out_ << YAML::Key << "Actions" << YAML::Value << YAML::BeginSeq;
        for (const auto& action : doc.actions) {
            write_action(action);
        }
        out_ << YAML::EndSeq;
        out_ << YAML::Key << "Environment" << YAML::Value;
        write_environment(doc.environment);
        out_ << YAML::Key << "Objects" << YAML::Value << YAML::BeginSeq;
        for (const auto& obj : doc.objects) {
            write_object(obj);
        }
        out_ << YAML::EndSeq;
        out_ << YAML::EndMap;
        std::string text = out_.c_str();
        text.push_back('\n');
        return text;
    }

private:
    void write_operand(const Operand& operand)
    {
        if (operand.is_literal()) {
            out_ << operand.literal();
        } else {
            out_ << operand.reference();
        }
    }

    void write_condition(const Condition& cond)
    {
        out_ << YAML::BeginMap << YAML::Key << std::string(to_string(cond.op)) << YAML::Value;
        if (cond.op == ConditionOp::all_of || cond.op == ConditionOp::any_of) {
            write_conditions(cond.children);
        } else {
            out_ << YAML::Flow << YAML::BeginSeq;
            for (const auto& o : cond.operands) {
                write_operand(o);
            }
            out_ << YAML::EndSeq;
        }
        out_ << YAML::EndMap;
    }

    void write_conditions(const std::vector<Condition>& conds)
    {
        out_ << YAML::BeginSeq;
        for (const auto& c : conds) {
            write_condition(c);
        }
        out_ << YAML::EndSeq;
    }

    void write_commands(const std::vector<Command>& cmds)
    {
        out_ << YAML::BeginSeq;
        for (const auto& c : cmds) {
            write_command(c);
        }
        out_ << YAML::EndSeq;
    }

    void write_command(const Command& cmd)
    {
        out_ << YAML::BeginMap << YAML::Key << std::string(to_string(cmd.kind)) << YAML::Value;
        switch (cmd.kind) {
        case CommandKind::mov:
        case CommandKind::cascade:
        case CommandKind::spawn:
        case CommandKind::incr:
        case CommandKind::decr:
            out_ << cmd.target;
            break;
        case CommandKind::remove:
            out_ << true;
            break;
        case CommandKind::reward:
            write_operand(cmd.operand);
            break;
        case CommandKind::add:
        case CommandKind::sub:
        case CommandKind::set:
            out_ << YAML::Flow << YAML::BeginSeq << cmd.target;
            write_operand(cmd.operand);
            out_ << YAML::EndSeq;
            break;
        case CommandKind::if_:
            out_ << YAML::BeginMap;
            out_ << YAML::Key << "Conditions" << YAML::Value;
            write_conditions(cmd.conditions);
            if (!cmd.on_false.empty()) {
                out_ << YAML::Key << "OnFalse" << YAML::Value;
                write_commands(cmd.on_false);
            }
            if (!cmd.on_true.empty()) {
                out_ << YAML::Key << "OnTrue" << YAML::Value;
                write_commands(cmd.on_true);
            }
            out_ << YAML::EndMap;
            break;
        }
        out_ << YAML::EndMap;
    }

    void write_variables(const VariableMap& vars)
    {
        out_ << YAML::BeginSeq;
        for (const auto& [name, value] : vars) {
            out_ << YAML::BeginMap;
            out_ << YAML::Key << "InitialValue" << YAML::Value << value;
            out_ << YAML::Key << "Name" << YAML::Value << name;
            out_ << YAML::EndMap;
        }
        out_ << YAML::EndSeq;
    }

    void write_action(const ActionDef& action)
    {
        out_ << YAML::BeginMap;
        out_ << YAML::Key << "Behaviours" << YAML::Value << YAML::BeginSeq;
        for (const auto& b : action.behaviours) {
            out_ << YAML::BeginMap;
            out_ << YAML::Key << "Dst" << YAML::Value << YAML::BeginMap;
            if (!b.dst_commands.empty()) {
                out_ << YAML::Key << "Commands" << YAML::Value;
                write_commands(b.dst_commands);
            }
            out_ << YAML::Key << "Object" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (const auto& d : b.dst_objects) {
                out_ << d;
            }
            out_ << YAML::EndSeq;
            out_ << YAML::EndMap;
            out_ << YAML::Key << "Src" << YAML::Value << YAML::BeginMap;
            if (!b.src_commands.empty()) {
                out_ << YAML::Key << "Commands" << YAML::Value;
                write_commands(b.src_commands);
            }
            out_ << YAML::Key << "Object" << YAML::Value << b.src_object;
            if (!b.preconditions.empty()) {
                out_ << YAML::Key << "Preconditions" << YAML::Value;
                write_conditions(b.preconditions);
            }
            out_ << YAML::EndMap;
            out_ << YAML::EndMap;
        }
        out_ << YAML::EndSeq;
        if (!action.description.empty()) {
            out_ << YAML::Key << "Description" << YAML::Value << action.description;
        }
        out_ << YAML::Key << "InputMapping" << YAML::Value
             << (action.input_mapping == InputMapping::unary ? "Unary" : "Directional");
        out_ << YAML::Key << "Name" << YAML::Value << action.name;
        out_ << YAML::EndMap;
    }

    void write_environment(const EnvironmentDef& env)
    {
        out_ << YAML::BeginMap;
        if (!env.levels.empty()) {
            out_ << YAML::Key << "Levels" << YAML::Value << YAML::BeginSeq;
            for (const auto& level : env.levels) {
                out_ << YAML::Literal << level;
            }
            out_ << YAML::EndSeq;
        }
        if (env.max_steps) {
            out_ << YAML::Key << "MaxSteps" << YAML::Value << *env.max_steps;
        }
        out_ << YAML::Key << "Name" << YAML::Value << env.name;
        out_ << YAML::Key << "Observers" << YAML::Value << YAML::BeginMap;
        out_ << YAML::Key << "Vector" << YAML::Value << YAML::BeginMap;
        out_ << YAML::Key << "IncludeRotation" << YAML::Value << env.observer.include_orientation_channels;
        out_ << YAML::Key << "IncludeVariables" << YAML::Value << env.observer.include_player_variable_channels;
        out_ << YAML::EndMap << YAML::EndMap;
        out_ << YAML::Key << "Player" << YAML::Value << YAML::BeginMap;
        out_ << YAML::Key << "AvatarObject" << YAML::Value << env.avatar_object;
        const auto& obs = env.observer;
        if (obs.window_width || obs.window_height || obs.rotate_with_avatar) {
            out_ << YAML::Key << "Observer" << YAML::Value << YAML::BeginMap;
            if (obs.window_height) {
                out_ << YAML::Key << "Height" << YAML::Value << *obs.window_height;
            }
            out_ << YAML::Key << "RotateWithAvatar" << YAML::Value << obs.rotate_with_avatar;
            if (obs.window_width) {
                out_ << YAML::Key << "Width" << YAML::Value << *obs.window_width;
            }
            out_ << YAML::EndMap;
        }
        out_ << YAML::EndMap;
        const auto& term = env.termination;
        if (!term.win.empty() || !term.lose.empty()) {
            out_ << YAML::Key << "Termination" << YAML::Value << YAML::BeginMap;
            if (!term.lose.empty()) {
                out_ << YAML::Key << "Lose" << YAML::Value;
                write_conditions(term.lose);
            }
            if (!term.win.empty()) {
                out_ << YAML::Key << "Win" << YAML::Value;
                write_conditions(term.win);
            }
            out_ << YAML::EndMap;
        }
        if (!env.player_variables.empty()) {
            out_ << YAML::Key << "Variables" << YAML::Value;
            write_variables(env.player_variables);
        }
        out_ << YAML::EndMap;
    }

    void write_object(const ObjectDef& obj)
    {
        out_ << YAML::BeginMap;
        out_ << YAML::Key << "MapCharacter" << YAML::Value << std::string(1, obj.map_character);
        out_ << YAML::Key << "Name" << YAML::Value << obj.name;
        out_ << YAML::Key << "Observers" << YAML::Value << YAML::BeginMap;
        out_ << YAML::Key << "Sprite2D" << YAML::Value << YAML::BeginMap;
        out_ << YAML::Key << "Image" << YAML::Value << obj.tile.key;
        if (obj.tile.autotile) {
            out_ << YAML::Key << "TilingMode" << YAML::Value << "WALL_16";
        }
        out_ << YAML::EndMap << YAML::EndMap;
        if (!obj.initial_variables.empty()) {
            out_ << YAML::Key << "Variables" << YAML::Value;
            write_variables(obj.initial_variables);
        }
        out_ << YAML::Key << "Z" << YAML::Value << obj.z;
        out_ << YAML::EndMap;
    }

    YAML::Emitter out_;
};

} // namespace

std::string serialize_gdy(const GdyDocument& document)
{
    return CanonicalWriter().write(document);
}

} // namespace gridforge::gdy
