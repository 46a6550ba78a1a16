#include "gridforge/errors.hpp"
#include "gridforge/util/hash.hpp"

#include <array>

namespace gridforge {

std::string to_hex64(std::uint64_t value)
{
    static constexpr std::array<char, 16> digits{'0', '1', '2', '3', '4', '5', '6', '7',
                                                 '8', '9', 'a', 'b', 'c', 'd', 'e', 'f'};
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

bool parse_hex64(std::string_view text, std::uint64_t& out) noexcept
{
    if (text.size() != 16) {
        return false;
    }
    std::uint64_t v = 0;
    for (char c : text) {
        int d = 0;
        if (c >= '0' && c <= '9') {
            d = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            d = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            d = c - 'A' + 10;
        } else {
            return false;
        }
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    out = v;
    return true;
}

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::syntax: return "SyntaxError";
    case ErrorCode::schema: return "SchemaError";
    case ErrorCode::unknown_character: return "UnknownCharacter";
    case ErrorCode::empty_level: return "EmptyLevel";
    case ErrorCode::missing_avatar: return "MissingAvatar";
    case ErrorCode::multiple_avatars: return "MultipleAvatars";
    case ErrorCode::episode_over: return "EpisodeOver";
    case ErrorCode::bad_action: return "BadAction";
    case ErrorCode::hash_mismatch: return "HashMismatch";
    case ErrorCode::level_unavailable: return "LevelUnavailable";
    case ErrorCode::no_levels: return "NoLevels";
    case ErrorCode::unsatisfiable: return "Unsatisfiable";
    case ErrorCode::invalid_params: return "InvalidParams";
    case ErrorCode::io: return "IoError";
    }
    return "Error";
}

} // namespace gridforge
