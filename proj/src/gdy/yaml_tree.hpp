#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gridforge::gdy::detail {

// Plain tree of the YAML subset GDY uses. Built from parser events so anchors,
// aliases, complex keys and duplicate keys can be rejected up front.
struct YamlNode {
    enum class Kind { null, scalar, sequence, map };

    Kind kind = Kind::null;
    std::string scalar;
    std::vector<YamlNode> items;
    std::vector<std::pair<std::string, YamlNode>> entries;
    int line = 0;   // 1-based
    int column = 0; // 1-based

    [[nodiscard]] const YamlNode* find(std::string_view key) const noexcept
    {
        for (const auto& [k, v] : entries) {
            if (k == key) {
                return &v;
            }
        }
        return nullptr;
    }
};

// Throws SyntaxError. An empty stream yields a null node.
[[nodiscard]] YamlNode read_yaml(std::string_view text);

} // namespace gridforge::gdy::detail
