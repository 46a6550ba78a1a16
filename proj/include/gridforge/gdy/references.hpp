#pragma once

#include <string>
#include <string_view>

namespace gridforge::gdy {

// How a variable name inside a condition or command is spelled.
//   `x`          executing object's variable `x`, else the player variable `x`
//   `src.x`      the source instance's variable
//   `dst.x`      the destination instance's variable
//   `obj:count`  live instance count of `obj` (read-only)
struct VariableRef {
    enum class Scope { plain, src, dst, count };
    Scope scope = Scope::plain;
    std::string name;
};

[[nodiscard]] VariableRef parse_reference(std::string_view text);

[[nodiscard]] bool is_identifier(std::string_view text) noexcept;

} // namespace gridforge::gdy
