#pragma once

#include <string_view>

// GDY sources bundled into the library at build time (from assets/).
namespace gridforge::assets {

[[nodiscard]] std::string_view sokoban_gdy() noexcept;
[[nodiscard]] std::string_view escape_room_gdy() noexcept;

} // namespace gridforge::assets
