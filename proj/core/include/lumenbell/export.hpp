#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "lumenbell/fields.hpp"

namespace lumenbell {

using Rgb = std::array<std::uint8_t, 3>;

/// Diverging colormap (blue - white - red) evaluated at t in [-1, 1].
Rgb diverging_color(double t);
/// Sequential colormap (upper half of the diverging table) at t in [0, 1].
Rgb sequential_color(double t);

enum class ColorScale {
    symmetric,  ///< [-max|v|, max|v|] onto the diverging map
    positive,   ///< [0, max v] onto the sequential map
};

/// n x n row-major samples; row 0 is the smallest y and is written last so
/// that +y points up in the image.
void write_ppm(const std::filesystem::path& path, std::span<const double> values, int n,
               ColorScale scale);

/// Plain-text matrix: n lines of n values, %.12g, space separated, row 0 first.
void write_matrix(const std::filesystem::path& path, std::span<const double> values, int n);

/// Serializes a vector field exactly: a header line "# lumenbell-field n
/// half_extent waist" then one line per sample with re/im of e_h and e_v in
/// shortest round-trip form.
std::string serialize_field(const VectorField& field);
void write_field(const std::filesystem::path& path, const VectorField& field);

std::vector<double> intensity(const VectorField& field);

}  // namespace lumenbell
