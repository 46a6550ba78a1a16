#include "yaml_tree.hpp"

#include "gridforge/gdy/parser.hpp"

#include <yaml-cpp/eventhandler.h>
#include <yaml-cpp/exceptions.h>
#include <yaml-cpp/mark.h>
#include <yaml-cpp/parser.h>

#include <sstream>

namespace gridforge::gdy::detail {

namespace {

class TreeBuilder final : public YAML::EventHandler {
public:
    void OnDocumentStart(const YAML::Mark&) override {}
    void OnDocumentEnd() override {}

    void OnNull(const YAML::Mark& mark, YAML::anchor_t anchor) override
    {
        reject_anchor(mark, anchor);
        YamlNode node;
        place(mark, std::move(node));
    }

    void OnAlias(const YAML::Mark& mark, YAML::anchor_t) override
    {
        throw SyntaxError("aliases are not supported", mark.line + 1, mark.column + 1);
    }

    void OnAnchor(const YAML::Mark& mark, const std::string&) override
    {
        throw SyntaxError("anchors are not supported", mark.line + 1, mark.column + 1);
    }

    void OnScalar(const YAML::Mark& mark, const std::string&, YAML::anchor_t anchor,
                  const std::string& value) override
    {
        reject_anchor(mark, anchor);
        YamlNode node;
        node.kind = YamlNode::Kind::scalar;
        node.scalar = value;
        place(mark, std::move(node));
    }

    void OnSequenceStart(const YAML::Mark& mark, const std::string&, YAML::anchor_t anchor,
                         YAML::EmitterStyle::value) override
    {
        reject_anchor(mark, anchor);
        open(mark, YamlNode::Kind::sequence);
    }

    void OnSequenceEnd() override { close(); }

    void OnMapStart(const YAML::Mark& mark, const std::string&, YAML::anchor_t anchor,
                    YAML::EmitterStyle::value) override
    {
        reject_anchor(mark, anchor);
        open(mark, YamlNode::Kind::map);
    }

    void OnMapEnd() override
    {
        if (!stack_.empty() && stack_.back().pending_key) {
            throw SyntaxError("mapping ended without a value", stack_.back().node.line, stack_.back().node.column);
        }
        close();
    }

    YamlNode take_root() { return std::move(root_); }
    [[nodiscard]] bool has_root() const noexcept { return has_root_; }

private:
    struct Frame {
        YamlNode node;
        bool pending_key = false;
        std::string key;
    };

    static void reject_anchor(const YAML::Mark& mark, YAML::anchor_t anchor)
    {
        if (anchor != YAML::NullAnchor) {
            throw SyntaxError("anchors are not supported", mark.line + 1, mark.column + 1);
        }
    }

    void open(const YAML::Mark& mark, YamlNode::Kind kind)
    {
        if (!stack_.empty()) {
            auto& top = stack_.back();
            if (top.node.kind == YamlNode::Kind::map && !top.pending_key) {
                throw SyntaxError("mapping keys must be scalars", mark.line + 1, mark.column + 1);
            }
        }
        Frame frame;
        frame.node.kind = kind;
        frame.node.line = mark.line + 1;
        frame.node.column = mark.column + 1;
        stack_.push_back(std::move(frame));
    }

    void close()
    {
        Frame frame = std::move(stack_.back());
        stack_.pop_back();
        attach(std::move(frame.node));
    }

    void place(const YAML::Mark& mark, YamlNode node)
    {
        node.line = mark.line + 1;
        node.column = mark.column + 1;
        if (!stack_.empty()) {
            auto& top = stack_.back();
            if (top.node.kind == YamlNode::Kind::map && !top.pending_key) {
                if (node.kind != YamlNode::Kind::scalar && node.kind != YamlNode::Kind::null) {
                    throw SyntaxError("mapping keys must be scalars", node.line, node.column);
                }
                if (top.node.find(node.scalar) != nullptr) {
                    throw SyntaxError("duplicate key `" + node.scalar + "`", node.line, node.column);
                }
                top.key = node.scalar;
                top.pending_key = true;
                return;
            }
        }
        attach(std::move(node));
    }

    void attach(YamlNode node)
    {
        if (stack_.empty()) {
            root_ = std::move(node);
            has_root_ = true;
            return;
        }
        auto& top = stack_.back();
        if (top.node.kind == YamlNode::Kind::sequence) {
            top.node.items.push_back(std::move(node));
        } else {
            top.node.entries.emplace_back(std::move(top.key), std::move(node));
            top.key.clear();
            top.pending_key = false;
        }
    }

    std::vector<Frame> stack_;
    YamlNode root_;
    bool has_root_ = false;
};

} // namespace

YamlNode read_yaml(std::string_view text)
{
    std::istringstream in{std::string(text)};
    TreeBuilder builder;
    try {
        YAML::Parser parser(in);
        if (!parser.HandleNextDocument(builder)) {
            return {};
        }
        TreeBuilder extra;
        if (parser.HandleNextDocument(extra)) {
            throw SyntaxError("more than one YAML document", 0, 0);
        }
    } catch (const YAML::Exception& e) {
        throw SyntaxError(e.msg, e.mark.line + 1, e.mark.column + 1);
    } catch (const SyntaxError&) {
        throw;
    } catch (const std::exception& e) {
        throw SyntaxError(e.what(), 0, 0);
    }
    return builder.take_root();
}

} // namespace gridforge::gdy::detail
