#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gridforge {

// 64-bit FNV-1a.
class Fnv1a64 {
public:
    static constexpr std::uint64_t kOffsetBasis = 14695981039346656037ULL;
    static constexpr std::uint64_t kPrime = 1099511628211ULL;

    void update(std::string_view bytes) noexcept
    {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= kPrime;
        }
    }

    [[nodiscard]] std::uint64_t digest() const noexcept { return state_; }

private:
    std::uint64_t state_ = kOffsetBasis;
};

[[nodiscard]] inline std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    Fnv1a64 h;
    h.update(bytes);
    return h.digest();
}

// Lowercase, zero-padded, 16 characters.
[[nodiscard]] std::string to_hex64(std::uint64_t value);

// Accepts exactly 16 hex digits (either case). Returns false otherwise.
[[nodiscard]] bool parse_hex64(std::string_view text, std::uint64_t& out) noexcept;

} // namespace gridforge
