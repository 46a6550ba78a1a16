#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridforge {

enum class ErrorCode {
    syntax,
    schema,
    unknown_character,
    empty_level,
    missing_avatar,
    multiple_avatars,
    episode_over,
    bad_action,
    hash_mismatch,
    level_unavailable,
    no_levels,
    unsatisfiable,
    invalid_params,
    io,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

// Base of every error the engine throws. The code is stable and machine-readable;
// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace gridforge
