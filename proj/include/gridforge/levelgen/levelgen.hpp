#pragma once

#include "gridforge/errors.hpp"
#include "gridforge/gdy/document.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gridforge::levelgen {

inline constexpr int kMinSide = 8;
inline constexpr int kMaxAttempts = 1000;

// Terrain comes from two-octave gradient noise e in [0, 1]:
//   e < water             water
//   e < water + 0.05      sand
//   e > lava              lava   (lava > stone)
//   e > stone             stone
//   otherwise             grass, or tree where a second noise field > tree
// Ores replace interior stone. Unset ore counts scale with the area
// (coal area/72, iron area/144, diamond area/288).
struct GenParams {
    int width = 24;
    int height = 24;
    std::uint64_t seed = 0;
    double water_threshold = 0.30;
    double stone_threshold = 0.65;
    double lava_threshold = 0.85;
    double tree_threshold = 0.62;
    std::optional<int> coal;
    std::optional<int> iron;
    std::optional<int> diamond;

    friend bool operator==(const GenParams&, const GenParams&) = default;
};

struct OreCounts {
    int coal = 0;
    int iron = 0;
    int diamond = 0;
};

[[nodiscard]] OreCounts resolved_ores(const GenParams& params) noexcept;

// An escape-room level string with a stone border, exactly one player and
// exactly one cherry tree. Deterministic in params.
// Throws Error(invalid_params) for malformed knobs and Error(unsatisfiable)
// when the grid is too small, the ores cannot fit, or 1000 attempts fail.
[[nodiscard]] std::string generate(const GenParams& params);

enum class Reachability { land_reachable, tools_required, unknown };

[[nodiscard]] std::string_view to_string(Reachability r) noexcept;

// A heuristic label, not a solvability proof. Flood-fills from the avatar
// over walkable cells; if that touches the cherry tree the goal is
// land_reachable. Otherwise the flood is repeated letting the player cut
// through trees and rock and (when any stone exists to build with) across
// water and lava; touching the goal then means tools_required.
[[nodiscard]] Reachability reachability_hint(std::string_view level_string, const gdy::GdyDocument& document);

} // namespace gridforge::levelgen
