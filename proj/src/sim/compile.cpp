#include "gridforge/gdy/parser.hpp"
#include "gridforge/gdy/references.hpp"
#include "gridforge/sim/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridforge::sim {

class GameCompiler {
public:
    explicit GameCompiler(Game& game) : game_(game), doc_(game.document_) {}

    void run()
    {
        game_.action_space_ = build_action_space(doc_);
        game_.avatar_object_ = index_of(doc_.environment.avatar_object);
        for (const auto& [name, value] : doc_.environment.player_variables) {
            (void)value;
            game_.player_variable_names_.push_back(name);
        }
        for (const auto& obj : doc_.objects) {
            std::vector<std::string> names;
            for (const auto& [name, value] : obj.initial_variables) {
                (void)value;
                names.push_back(name);
            }
            game_.object_variable_names_.push_back(std::move(names));
        }

        const std::size_t objects = doc_.objects.size();
        game_.rules_.resize(doc_.actions.size() * objects);
        for (std::size_t a = 0; a < doc_.actions.size(); ++a) {
            const auto& action = doc_.actions[a];
            for (std::size_t b = 0; b < action.behaviours.size(); ++b) {
                const auto& behaviour = action.behaviours[b];
                const int src = index_of(behaviour.src_object);
                if (src == kEmptyObjectIndex) {
                    continue; // nothing ever acts from an empty cell
                }
                for (const auto& dst_name : behaviour.dst_objects) {
                    const int dst = index_of(dst_name);
                    detail::Rule rule;
                    rule.behaviour_index = static_cast<int>(b);
                    rule.dst_object = dst;
                    for (const auto& c : behaviour.preconditions) {
                        rule.preconditions.push_back(condition(c, src, dst, detail::Side::src));
                    }
                    for (const auto& c : behaviour.src_commands) {
                        rule.src_commands.push_back(command(c, src, dst, detail::Side::src));
                    }
                    for (const auto& c : behaviour.dst_commands) {
                        rule.dst_commands.push_back(command(c, src, dst, detail::Side::dst));
                    }
                    game_.rules_[a * objects + static_cast<std::size_t>(src)].push_back(std::move(rule));
                }
            }
        }
        for (const auto& c : doc_.environment.termination.win) {
            game_.win_.push_back(condition(c, kEmptyObjectIndex, kEmptyObjectIndex, detail::Side::src));
        }
        for (const auto& c : doc_.environment.termination.lose) {
            game_.lose_.push_back(condition(c, kEmptyObjectIndex, kEmptyObjectIndex, detail::Side::src));
        }
    }

private:
    int index_of(std::string_view name) const
    {
        if (name == gdy::kEmptyObject) {
            return kEmptyObjectIndex;
        }
        auto idx = doc_.object_index(name);
        if (!idx) {
            throw std::logic_error("unresolved object `" + std::string(name) + "` in a validated document");
        }
        return static_cast<int>(*idx);
    }

    int object_slot(int object, const std::string& var) const
    {
        if (object == kEmptyObjectIndex) {
            return -1;
        }
        const auto& names = game_.object_variable_names_[static_cast<std::size_t>(object)];
        auto it = std::lower_bound(names.begin(), names.end(), var);
        return it != names.end() && *it == var ? static_cast<int>(it - names.begin()) : -1;
    }

    int player_slot(const std::string& var) const
    {
        const auto& names = game_.player_variable_names_;
        auto it = std::lower_bound(names.begin(), names.end(), var);
        return it != names.end() && *it == var ? static_cast<int>(it - names.begin()) : -1;
    }

    detail::Operand reference(const std::string& text, int src, int dst, detail::Side side) const
    {
        using Kind = detail::Operand::Kind;
        const gdy::VariableRef ref = gdy::parse_reference(text);
        detail::Operand out;
        switch (ref.scope) {
        case gdy::VariableRef::Scope::count:
            out.kind = Kind::count;
            out.slot = index_of(ref.name);
            return out;
        case gdy::VariableRef::Scope::src:
            out.kind = Kind::src_var;
            out.slot = object_slot(src, ref.name);
            break;
        case gdy::VariableRef::Scope::dst:
            out.kind = Kind::dst_var;
            out.slot = object_slot(dst, ref.name);
            break;
        case gdy::VariableRef::Scope::plain: {
            const int own = object_slot(side == detail::Side::src ? src : dst, ref.name);
            if (own >= 0) {
                out.kind = side == detail::Side::src ? Kind::src_var : Kind::dst_var;
                out.slot = own;
            } else {
                out.kind = Kind::player_var;
                out.slot = player_slot(ref.name);
            }
            break;
        }
        }
        if (out.slot < 0) {
            throw std::logic_error("unresolved variable `" + text + "` in a validated document");
        }
        return out;
    }

    detail::Operand operand(const gdy::Operand& o, int src, int dst, detail::Side side) const
    {
        if (o.is_literal()) {
            return {detail::Operand::Kind::literal, 0, o.literal()};
        }
        return reference(o.reference(), src, dst, side);
    }

    detail::Condition condition(const gdy::Condition& c, int src, int dst, detail::Side side) const
    {
        detail::Condition out;
        out.op = c.op;
        if (c.op == gdy::ConditionOp::all_of || c.op == gdy::ConditionOp::any_of) {
            for (const auto& child : c.children) {
                out.children.push_back(condition(child, src, dst, side));
            }
        } else {
            out.lhs = operand(c.operands.at(0), src, dst, side);
            out.rhs = operand(c.operands.at(1), src, dst, side);
        }
        return out;
    }

    detail::Command command(const gdy::Command& c, int src, int dst, detail::Side side) const
    {
        detail::Command out;
        out.kind = c.kind;
        switch (c.kind) {
        case gdy::CommandKind::mov:
            out.to_source_cell = c.target == "_src";
            break;
        case gdy::CommandKind::cascade:
        case gdy::CommandKind::remove:
            break;
        case gdy::CommandKind::spawn:
            out.object = index_of(c.target);
            break;
        case gdy::CommandKind::add:
        case gdy::CommandKind::sub:
        case gdy::CommandKind::set:
            out.operand = operand(c.operand, src, dst, side);
            out.target = reference(c.target, src, dst, side);
            break;
        case gdy::CommandKind::incr:
        case gdy::CommandKind::decr:
            out.target = reference(c.target, src, dst, side);
            break;
        case gdy::CommandKind::reward:
            out.operand = operand(c.operand, src, dst, side);
            break;
        case gdy::CommandKind::if_:
            for (const auto& cond : c.conditions) {
                out.conditions.push_back(condition(cond, src, dst, side));
            }
            for (const auto& t : c.on_true) {
                out.on_true.push_back(command(t, src, dst, side));
            }
            for (const auto& f : c.on_false) {
                out.on_false.push_back(command(f, src, dst, side));
            }
            break;
        }
        return out;
    }

    Game& game_;
    const gdy::GdyDocument& doc_;
};

std::shared_ptr<const Game> Game::compile(gdy::GdyDocument document)
{
    auto diagnostics = gdy::validate(document);
    if (!diagnostics.empty()) {
        throw gdy::SchemaError(std::move(diagnostics));
    }
    std::shared_ptr<Game> game(new Game());
    game->document_ = std::move(document);
    GameCompiler(*game).run();
    return game;
}

const std::string& Game::object_name(int index) const
{
    static const std::string empty(gdy::kEmptyObject);
    if (index < 0) {
        return empty;
    }
    return document_.objects.at(static_cast<std::size_t>(index)).name;
}

const std::vector<std::string>& Game::object_variable_names(int object) const
{
    return object_variable_names_.at(static_cast<std::size_t>(object));
}

const std::vector<detail::Rule>& Game::rules(int action, int src_object) const
{
    return rules_[static_cast<std::size_t>(action) * document_.objects.size() + static_cast<std::size_t>(src_object)];
}

} // namespace gridforge::sim
