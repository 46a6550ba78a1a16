#include "gridforge/gdy/references.hpp"

namespace gridforge::gdy {

bool is_identifier(std::string_view text) noexcept
{
    if (text.empty()) {
        return false;
    }
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(text.front())) {
        return false;
    }
    for (char c : text) {
        if (!alpha(c) && !digit(c)) {
            return false;
        }
    }
    return true;
}

VariableRef parse_reference(std::string_view text)
{
    constexpr std::string_view count_suffix = ":count";
    if (text.size() > count_suffix.size() && text.ends_with(count_suffix)) {
        return {VariableRef::Scope::count, std::string(text.substr(0, text.size() - count_suffix.size()))};
    }
    if (text.starts_with("src.")) {
        return {VariableRef::Scope::src, std::string(text.substr(4))};
    }
    if (text.starts_with("dst.")) {
        return {VariableRef::Scope::dst, std::string(text.substr(4))};
    }
    return {VariableRef::Scope::plain, std::string(text)};
}

} // namespace gridforge::gdy
