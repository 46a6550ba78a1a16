#include "gridforge/levelgen/levelgen.hpp"

#include "gridforge/gdy/parser.hpp"
#include "gridforge/util/splitmix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

namespace gridforge::levelgen {

namespace {

constexpr char kStone = 'S';
constexpr char kGrass = 'g';
constexpr char kSand = 's';
constexpr char kWater = 'w';
constexpr char kLava = 'l';
constexpr char kTree = 't';
constexpr char kCoal = 'c';
constexpr char kIron = 'i';
constexpr char kDiamond = 'd';
constexpr char kPlayer = 'A';
constexpr char kCherry = 'C';

constexpr double kSandBand = 0.05;
constexpr double kTerrainScale = 1.0 / 9.0;
constexpr double kTreeScale = 1.0 / 3.0;

// Classic gradient noise over a seed-shuffled permutation table.
class GradientNoise {
public:
    explicit GradientNoise(SplitMix64& rng)
    {
        std::array<int, 256> p{};
        for (int i = 0; i < 256; ++i) {
            p[static_cast<std::size_t>(i)] = i;
        }
        for (int i = 255; i > 0; --i) {
            const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
            std::swap(p[static_cast<std::size_t>(i)], p[j]);
        }
        for (std::size_t i = 0; i < 512; ++i) {
            perm_[i] = p[i & 255];
        }
    }

    // Roughly in [-1, 1].
    double at(double x, double y) const
    {
        const int xi = static_cast<int>(std::floor(x)) & 255;
        const int yi = static_cast<int>(std::floor(y)) & 255;
        const double xf = x - std::floor(x);
        const double yf = y - std::floor(y);
        const double u = fade(xf);
        const double v = fade(yf);
        const int aa = perm_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(xi)] + yi)];
        const int ab = perm_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(xi)] + yi + 1)];
        const int ba = perm_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(xi + 1)] + yi)];
        const int bb = perm_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(xi + 1)] + yi + 1)];
        const double x1 = lerp(grad(aa, xf, yf), grad(ba, xf - 1, yf), u);
        const double x2 = lerp(grad(ab, xf, yf - 1), grad(bb, xf - 1, yf - 1), u);
        return lerp(x1, x2, v) * std::sqrt(2.0);
    }

    // Two octaves mapped into [0, 1].
    double octaves(double x, double y) const
    {
        const double n = (at(x, y) + 0.5 * at(2 * x + 17.3, 2 * y + 5.1)) / 1.5;
        return std::clamp(0.5 + 0.5 * n, 0.0, 1.0);
    }

private:
    static double fade(double t) { return t * t * t * (t * (t * 6 - 15) + 10); }
    static double lerp(double a, double b, double t) { return a + t * (b - a); }
    static double grad(int hash, double x, double y)
    {
        switch (hash & 7) {
        case 0: return x + y;
        case 1: return -x + y;
        case 2: return x - y;
        case 3: return -x - y;
        case 4: return x;
        case 5: return -x;
        case 6: return y;
        default: return -y;
        }
    }

    std::array<int, 512> perm_{};
};

bool walkable(char c)
{
    return c == kGrass || c == kSand || c == 'p' || c == gdy::kEmptyCell;
}

// BFS distances from (sx, sy) over cells accepted by `pass`; -1 where unreached.
template <typename Pass>
std::vector<int> flood(const std::vector<std::string>& rows, int sx, int sy, Pass pass)
{
    const int h = static_cast<int>(rows.size());
    const int w = h > 0 ? static_cast<int>(rows[0].size()) : 0;
    std::vector<int> dist(static_cast<std::size_t>(w * h), -1);
    std::deque<std::pair<int, int>> queue;
    dist[static_cast<std::size_t>(sy * w + sx)] = 0;
    queue.emplace_back(sx, sy);
    constexpr int dxs[] = {0, 1, 0, -1};
    constexpr int dys[] = {-1, 0, 1, 0};
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k) {
            const int nx = x + dxs[k];
            const int ny = y + dys[k];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) {
                continue;
            }
            auto& d = dist[static_cast<std::size_t>(ny * w + nx)];
            if (d >= 0 || !pass(rows[static_cast<std::size_t>(ny)][static_cast<std::size_t>(nx)])) {
                continue;
            }
            d = dist[static_cast<std::size_t>(y * w + x)] + 1;
            queue.emplace_back(nx, ny);
        }
    }
    return dist;
}

void check(const GenParams& p)
{
    auto unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
    if (!unit(p.water_threshold) || !unit(p.stone_threshold) || !unit(p.lava_threshold) || !unit(p.tree_threshold)) {
        throw Error(ErrorCode::invalid_params, "thresholds must lie in [0, 1]");
    }
    if (!(p.water_threshold + kSandBand < p.stone_threshold && p.stone_threshold <= p.lava_threshold)) {
        throw Error(ErrorCode::invalid_params, "thresholds must satisfy water + 0.05 < stone <= lava");
    }
    if ((p.coal && *p.coal < 0) || (p.iron && *p.iron < 0) || (p.diamond && *p.diamond < 0)) {
        throw Error(ErrorCode::invalid_params, "ore counts must be non-negative");
    }
    if (p.width < kMinSide || p.height < kMinSide) {
        throw Error(ErrorCode::unsatisfiable, "levels need at least " + std::to_string(kMinSide) + "x" +
                                                  std::to_string(kMinSide) + " cells, got " +
                                                  std::to_string(p.width) + "x" + std::to_string(p.height));
    }
    const OreCounts ores = resolved_ores(p);
    const long long interior = static_cast<long long>(p.width - 2) * (p.height - 2);
    if (static_cast<long long>(ores.coal) + ores.iron + ores.diamond + 2 > interior) {
        throw Error(ErrorCode::unsatisfiable, "ores, player and cherry tree do not fit in " +
                                                  std::to_string(interior) + " interior cells");
    }
}

std::optional<std::string> attempt(const GenParams& p, const OreCounts& ores, std::uint64_t attempt_seed)
{
    SplitMix64 rng(attempt_seed);
    const GradientNoise terrain(rng);
    const GradientNoise foliage(rng);
    const double ox = static_cast<double>(rng.below(1024));
    const double oy = static_cast<double>(rng.below(1024));
    const int w = p.width;
    const int h = p.height;
    std::vector<std::string> rows(static_cast<std::size_t>(h), std::string(static_cast<std::size_t>(w), kStone));
    std::vector<std::pair<int, int>> rock;
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const double e = terrain.octaves(ox + x * kTerrainScale, oy + y * kTerrainScale);
            char c = kGrass;
            if (e < p.water_threshold) {
                c = kWater;
            } else if (e < p.water_threshold + kSandBand) {
                c = kSand;
            } else if (e > p.lava_threshold) {
                c = kLava;
            } else if (e > p.stone_threshold) {
                c = kStone;
                rock.emplace_back(x, y);
            } else if (foliage.octaves(ox + x * kTreeScale, oy + y * kTreeScale) > p.tree_threshold) {
                c = kTree;
            }
            rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = c;
        }
    }
    const int needed = ores.coal + ores.iron + ores.diamond;
    if (static_cast<int>(rock.size()) < needed) {
        return std::nullopt;
    }
    for (std::size_t i = rock.size(); i > 1; --i) {
        std::swap(rock[i - 1], rock[static_cast<std::size_t>(rng.below(i))]);
    }
    std::size_t next = 0;
    auto scatter = [&](int n, char ore) {
        for (int k = 0; k < n; ++k, ++next) {
            rows[static_cast<std::size_t>(rock[next].second)][static_cast<std::size_t>(rock[next].first)] = ore;
        }
    };
    scatter(ores.coal, kCoal);
    scatter(ores.iron, kIron);
    scatter(ores.diamond, kDiamond);

    // Player on the grass cell nearest the centre.
    int px = -1;
    int py = -1;
    long best = std::numeric_limits<long>::max();
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            if (rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] != kGrass) {
                continue;
            }
            const long d = std::labs(2L * x - (w - 1)) + std::labs(2L * y - (h - 1));
            if (d < best) {
                best = d;
                px = x;
                py = y;
            }
        }
    }
    if (px < 0) {
        return std::nullopt;
    }
    rows[static_cast<std::size_t>(py)][static_cast<std::size_t>(px)] = kPlayer;

    // Cherry tree on the grass cell the player can walk farthest to, else the
    // grass cell farthest away as the crow flies.
    const auto dist = flood(rows, px, py, walkable);
    int cx = -1;
    int cy = -1;
    int far = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int d = dist[static_cast<std::size_t>(y * w + x)];
            if (rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == kGrass && d > far) {
                far = d;
                cx = x;
                cy = y;
            }
        }
    }
    if (cx < 0) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const int d = std::abs(x - px) + std::abs(y - py);
                if (rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == kGrass && d > far) {
                    far = d;
                    cx = x;
                    cy = y;
                }
            }
        }
    }
    if (cx < 0) {
        return std::nullopt;
    }
    rows[static_cast<std::size_t>(cy)][static_cast<std::size_t>(cx)] = kCherry;

    std::string out;
    for (int y = 0; y < h; ++y) {
        if (y > 0) {
            out.push_back('\n');
        }
        out += rows[static_cast<std::size_t>(y)];
    }
    return out;
}

} // namespace

OreCounts resolved_ores(const GenParams& params) noexcept
{
    const int area = params.width * params.height;
    return {params.coal.value_or(area / 72), params.iron.value_or(area / 144), params.diamond.value_or(area / 288)};
}

std::string generate(const GenParams& params)
{
    check(params);
    const OreCounts ores = resolved_ores(params);
    SplitMix64 seeds(params.seed);
    for (int i = 0; i < kMaxAttempts; ++i) {
        if (auto level = attempt(params, ores, seeds.next())) {
            return *level;
        }
    }
    throw Error(ErrorCode::unsatisfiable,
                "no level with a player and a cherry tree after " + std::to_string(kMaxAttempts) + " attempts");
}

std::string_view to_string(Reachability r) noexcept
{
    switch (r) {
    case Reachability::land_reachable: return "land_reachable";
    case Reachability::tools_required: return "tools_required";
    case Reachability::unknown: return "unknown";
    }
    return "?";
}

Reachability reachability_hint(std::string_view level_string, const gdy::GdyDocument& document)
{
    const auto layout = gdy::parse_level(document, level_string);
    std::vector<std::string> rows(static_cast<std::size_t>(layout.height),
                                  std::string(static_cast<std::size_t>(layout.width), gdy::kEmptyCell));
    int ax = -1;
    int ay = -1;
    bool any_stone = false;
    std::vector<std::pair<int, int>> goals;
    for (const auto& pl : layout.placements) {
        const auto* obj = document.find_object(pl.object);
        rows[static_cast<std::size_t>(pl.y)][static_cast<std::size_t>(pl.x)] = obj->map_character;
        if (pl.object == document.environment.avatar_object) {
            ax = pl.x;
            ay = pl.y;
        } else if (pl.object == "cherry_tree") {
            goals.emplace_back(pl.x, pl.y);
        } else if (pl.object == "stone") {
            any_stone = true;
        }
    }
    if (ax < 0 || goals.empty()) {
        return Reachability::unknown;
    }
    // Map characters of the bundled escape room; other documents only get
    // the walkable pass.
    auto char_of = [&](std::string_view name) {
        const auto* obj = document.find_object(name);
        return obj ? obj->map_character : '\0';
    };
    const char grass = char_of("grass");
    const char sand = char_of("sand");
    const char path = char_of("path");
    auto walk = [&](char c) { return c == gdy::kEmptyCell || (c != '\0' && (c == grass || c == sand || c == path)); };
    std::string breakable;
    for (auto name : {"tree", "stone", "coal", "iron", "diamond"}) {
        if (char c = char_of(name)) {
            breakable.push_back(c);
        }
    }
    if (any_stone) {
        for (auto name : {"water", "lava"}) {
            if (char c = char_of(name)) {
                breakable.push_back(c);
            }
        }
    }
    auto touches = [&](const std::vector<int>& dist) {
        for (const auto& [gx, gy] : goals) {
            constexpr int dxs[] = {0, 1, 0, -1};
            constexpr int dys[] = {-1, 0, 1, 0};
            for (int k = 0; k < 4; ++k) {
                const int x = gx + dxs[k];
                const int y = gy + dys[k];
                if (x >= 0 && y >= 0 && x < layout.width && y < layout.height &&
                    dist[static_cast<std::size_t>(y * layout.width + x)] >= 0) {
                    return true;
                }
            }
        }
        return false;
    };
    if (touches(flood(rows, ax, ay, walk))) {
        return Reachability::land_reachable;
    }
    auto dig = [&](char c) { return walk(c) || breakable.find(c) != std::string::npos; };
    if (touches(flood(rows, ax, ay, dig))) {
        return Reachability::tools_required;
    }
    return Reachability::unknown;
}

} // namespace gridforge::levelgen
