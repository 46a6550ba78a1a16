#pragma once

#include <cstdint>

namespace gridforge {

// splitmix64. Small, seedable from any 64-bit value, and bit-identical on every
// platform, which std::uniform_int_distribution is not.
class SplitMix64 {
public:
    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) {
                return r % bound;
            }
        }
    }

    // Uniform in [0, 1).
    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    [[nodiscard]] std::uint64_t state() const noexcept { return state_; }
    void set_state(std::uint64_t s) noexcept { state_ = s; }

    friend bool operator==(const SplitMix64&, const SplitMix64&) = default;

private:
    std::uint64_t state_ = 0;
};

} // namespace gridforge
