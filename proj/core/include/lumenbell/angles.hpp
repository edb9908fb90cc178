#pragma once

#include <compare>
#include <numbers>

namespace lumenbell {

/// Angle in degrees. Every public API takes angles in degrees; conversion
/// to radians happens once, at the point of use.
class Degrees {
public:
    constexpr Degrees() = default;
    constexpr explicit Degrees(double value) : value_(value) {}

    constexpr double value() const { return value_; }
    constexpr double radians() const { return value_ * std::numbers::pi / 180.0; }

    /// Representative in [0, 180). Linear-polarization and equatorial-mode
    /// kets are 180-periodic up to sign.
    Degrees reduced_half_turn() const;

    constexpr Degrees operator-() const { return Degrees(-value_); }
    constexpr Degrees operator+(Degrees o) const { return Degrees(value_ + o.value_); }
    constexpr Degrees operator-(Degrees o) const { return Degrees(value_ - o.value_); }
    constexpr Degrees operator*(double k) const { return Degrees(value_ * k); }
    constexpr auto operator<=>(const Degrees&) const = default;

private:
    double value_ = 0.0;
};

constexpr Degrees from_radians(double rad) { return Degrees(rad * 180.0 / std::numbers::pi); }

namespace literals {
constexpr Degrees operator""_deg(long double v) { return Degrees(static_cast<double>(v)); }
constexpr Degrees operator""_deg(unsigned long long v) { return Degrees(static_cast<double>(v)); }
}  // namespace literals

}  // namespace lumenbell
