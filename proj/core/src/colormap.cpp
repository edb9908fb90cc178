#include <algorithm>
#include <array>
#include <cmath>

#include "lumenbell/export.hpp"

namespace lumenbell {

namespace {

// 11-stop blue-white-red diverging table, evenly spaced over [-1, 1].
constexpr std::array<std::array<double, 3>, 11> kDiverging{{
    {5, 48, 97},
    {33, 102, 172},
    {67, 147, 195},
    {146, 197, 222},
    {209, 229, 240},
    {247, 247, 247},
    {253, 219, 199},
    {244, 165, 130},
    {214, 96, 77},
    {178, 24, 43},
    {103, 0, 31},
}};

Rgb lookup(double u) {
    // u in [0, 1] across the table
    u = std::clamp(u, 0.0, 1.0);
    const double pos = u * (kDiverging.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, kDiverging.size() - 1);
    const double f = pos - static_cast<double>(lo);
    Rgb out{};
    for (int c = 0; c < 3; ++c) {
        const double v = kDiverging[lo][c] + f * (kDiverging[hi][c] - kDiverging[lo][c]);
        out[c] = static_cast<std::uint8_t>(std::lround(v));
    }
    return out;
}

}  // namespace

Rgb diverging_color(double t) {
    if (!std::isfinite(t)) t = 0.0;
    return lookup(0.5 * (t + 1.0));
}

Rgb sequential_color(double t) {
    if (!std::isfinite(t)) t = 0.0;
    return lookup(0.5 + 0.5 * std::clamp(t, 0.0, 1.0));
}

}  // namespace lumenbell
