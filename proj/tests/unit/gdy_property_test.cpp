#include "fixtures.hpp"

#include "gridforge/util/splitmix.hpp"

#include <gtest/gtest.h>

using namespace gridforge;

namespace {

gdy::Operand literal(std::int64_t v)
{
    return gdy::Operand{v};
}

gdy::Operand ref(std::string name)
{
    return gdy::Operand{std::move(name)};
}

gdy::Condition compare(SplitMix64& rng, const std::vector<std::string>& vars)
{
    static constexpr gdy::ConditionOp ops[] = {gdy::ConditionOp::eq, gdy::ConditionOp::neq, gdy::ConditionOp::lt,
                                               gdy::ConditionOp::lte, gdy::ConditionOp::gt, gdy::ConditionOp::gte};
    gdy::Condition c;
    c.op = ops[rng.below(6)];
    c.operands = {ref(vars[rng.below(vars.size())]), literal(static_cast<std::int64_t>(rng.below(7)) - 3)};
    return c;
}

// A random document that validates by construction.
gdy::GdyDocument random_document(SplitMix64& rng)
{
    gdy::GdyDocument doc;
    const int n_objects = 2 + static_cast<int>(rng.below(5));
    const char* chars = "abcdefghij";
    for (int i = 0; i < n_objects; ++i) {
        gdy::ObjectDef o;
        o.name = "obj" + std::to_string(i);
        o.map_character = chars[i];
        o.z = static_cast<int>(rng.below(3));
        if (rng.below(2) == 0) {
            o.initial_variables["hp"] = static_cast<std::int64_t>(rng.below(10));
        }
        o.tile.key = "tiles/" + o.name + ".png";
        o.tile.autotile = rng.below(4) == 0;
        doc.objects.push_back(o);
    }
    auto& env = doc.environment;
    env.name = "random" + std::to_string(rng.below(1000));
    env.avatar_object = "obj0";
    std::vector<std::string> vars;
    const int n_vars = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < n_vars; ++i) {
        vars.push_back("v" + std::to_string(i));
        env.player_variables[vars.back()] = static_cast<std::int64_t>(rng.below(5));
    }
    if (rng.below(2) == 0) {
        env.max_steps = 1 + static_cast<std::int64_t>(rng.below(200));
    }
    env.termination.win.push_back(compare(rng, vars));
    if (rng.below(2) == 0) {
        gdy::Condition any;
        any.op = gdy::ConditionOp::any_of;
        any.children = {compare(rng, vars), compare(rng, vars)};
        env.termination.lose.push_back(any);
    }
    if (rng.below(2) == 0) {
        env.observer.window_width = 3 + 2 * static_cast<int>(rng.below(3));
        env.observer.window_height = 3 + 2 * static_cast<int>(rng.below(3));
        env.observer.rotate_with_avatar = rng.below(2) == 0;
    }
    env.observer.include_orientation_channels = rng.below(2) == 0;
    env.observer.include_player_variable_channels = rng.below(2) == 0;
    std::string level;
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 4; ++x) {
            level += (y == 1 && x == 1) ? 'a' : (rng.below(3) == 0 ? chars[1 + rng.below(n_objects - 1)] : '.');
        }
        if (y < 2) {
            level += '\n';
        }
    }
    env.levels.push_back(level);

    const int n_actions = 1 + static_cast<int>(rng.below(3));
    for (int a = 0; a < n_actions; ++a) {
        gdy::ActionDef act;
        act.name = "act" + std::to_string(a);
        act.input_mapping = rng.below(2) == 0 ? gdy::InputMapping::directional : gdy::InputMapping::unary;
        if (rng.below(2) == 0) {
            act.description = "Action " + std::to_string(a);
        }
        const int n_behaviours = 1 + static_cast<int>(rng.below(3));
        for (int b = 0; b < n_behaviours; ++b) {
            gdy::Behaviour beh;
            beh.src_object = "obj" + std::to_string(rng.below(n_objects));
            beh.dst_objects.push_back(rng.below(3) == 0 ? "_empty" : "obj" + std::to_string(rng.below(n_objects)));
            if (rng.below(2) == 0) {
                beh.preconditions.push_back(compare(rng, vars));
            }
            gdy::Command reward;
            reward.kind = gdy::CommandKind::reward;
            reward.operand = literal(static_cast<std::int64_t>(rng.below(5)));
            gdy::Command incr;
            incr.kind = gdy::CommandKind::incr;
            incr.target = vars[rng.below(vars.size())];
            gdy::Command mov;
            mov.kind = gdy::CommandKind::mov;
            mov.target = "_dest";
            beh.src_commands = {mov, reward};
            if (rng.below(2) == 0) {
                gdy::Command branch;
                branch.kind = gdy::CommandKind::if_;
                branch.conditions.push_back(compare(rng, vars));
                branch.on_true = {incr};
                if (rng.below(2) == 0) {
                    branch.on_false = {reward};
                }
                beh.src_commands.push_back(branch);
            }
            if (beh.dst_objects[0] != "_empty" && rng.below(2) == 0) {
                gdy::Command rm;
                rm.kind = gdy::CommandKind::remove;
                beh.dst_commands.push_back(rm);
            }
            act.behaviours.push_back(beh);
        }
        doc.actions.push_back(act);
    }
    return doc;
}

} // namespace

TEST(GdyProperty, RandomDocumentsRoundTrip)
{
    SplitMix64 rng(20240607);
    for (int i = 0; i < 300; ++i) {
        gdy::GdyDocument doc = random_document(rng);
        ASSERT_TRUE(gdy::validate(doc).empty()) << "generator produced an invalid document, case " << i;
        const std::string text = gdy::serialize_gdy(doc);
        gdy::GdyDocument parsed = gdy::parse_gdy(text);
        doc.source_hash = parsed.source_hash;
        ASSERT_EQ(parsed, doc) << text << "\n--- reparsed ---\n" << gdy::serialize_gdy(parsed);
        ASSERT_EQ(gdy::serialize_gdy(parsed), text);
        // every compiled game can reset on its own level
        auto game = sim::Game::compile(parsed);
        auto state = support::reset_level(game, 0);
        EXPECT_EQ(state.status(), sim::Status::running);
    }
}

TEST(GdyProperty, SmallFuzzNeverCrashes)
{
    constexpr std::string_view kPunctuation = "-:[]{}|>#&*!%@`'\"\t\n ";
    SplitMix64 rng(7);
    const std::string seed_text(assets::sokoban_gdy());
    int syntax = 0;
    int schema = 0;
    for (int i = 0; i < 2000; ++i) {
        std::string text = seed_text;
        const int edits = 1 + static_cast<int>(rng.below(8));
        for (int e = 0; e < edits; ++e) {
            const auto at = rng.below(text.size());
            switch (rng.below(3)) {
            case 0: text[at] = static_cast<char>(rng.below(256)); break;
            case 1: text.erase(at, 1 + rng.below(12)); break;
            default: text.insert(at, 1, kPunctuation[rng.below(kPunctuation.size())]); break;
            }
        }
        try {
            (void)gdy::parse_gdy(text);
        } catch (const gdy::SyntaxError&) {
            ++syntax;
        } catch (const gdy::SchemaError&) {
            ++schema;
        }
    }
    EXPECT_GT(syntax, 0);
    EXPECT_GT(schema, 0);
}
