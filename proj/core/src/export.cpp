#include "lumenbell/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lumenbell {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ofstream os(path, mode);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return os;
}

void check_size(std::span<const double> values, int n) {
    if (n <= 0 || values.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("export: value count does not match n x n");
    }
}

void append_shortest(std::string& out, double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

void write_ppm(const std::filesystem::path& path, std::span<const double> values, int n,
               ColorScale scale) {
    check_size(values, n);
    double peak = 0.0;
    for (double v : values) peak = std::max(peak, std::abs(v));
    const double inv = peak > 0.0 ? 1.0 / peak : 0.0;

    std::string data = "P6\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
    data.reserve(data.size() + values.size() * 3);
    for (int row = n - 1; row >= 0; --row) {
        for (int col = 0; col < n; ++col) {
            const double v = values[static_cast<std::size_t>(row) * n + col] * inv;
            const Rgb c = scale == ColorScale::symmetric ? diverging_color(v) : sequential_color(v);
            data.append(reinterpret_cast<const char*>(c.data()), 3);
        }
    }
    auto os = open_for_write(path, std::ios::binary);
    os.write(data.data(), static_cast<std::streamsize>(data.size()));
}

void write_matrix(const std::filesystem::path& path, std::span<const double> values, int n) {
    check_size(values, n);
    std::string out;
    char buf[32];
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            std::snprintf(buf, sizeof buf, "%.12g", values[static_cast<std::size_t>(row) * n + col]);
            if (col) out += ' ';
            out += buf;
        }
        out += '\n';
    }
    auto os = open_for_write(path, std::ios::binary);
    os << out;
}

std::string serialize_field(const VectorField& field) {
    const GridSpec& g = field.grid();
    std::string out = "# lumenbell-field " + std::to_string(g.n) + " ";
    append_shortest(out, g.half_extent);
    out += ' ';
    append_shortest(out, g.waist);
    out += '\n';
    const auto eh = field.e_h.values();
    const auto ev = field.e_v.values();
    for (std::size_t i = 0; i < eh.size(); ++i) {
        append_shortest(out, eh[i].real());
        out += ' ';
        append_shortest(out, eh[i].imag());
        out += ' ';
        append_shortest(out, ev[i].real());
        out += ' ';
        append_shortest(out, ev[i].imag());
        out += '\n';
    }
    return out;
}

void write_field(const std::filesystem::path& path, const VectorField& field) {
    auto os = open_for_write(path, std::ios::binary);
    os << serialize_field(field);
}

std::vector<double> intensity(const VectorField& field) {
    const auto eh = field.e_h.values();
    const auto ev = field.e_v.values();
    std::vector<double> out(eh.size());
    for (std::size_t i = 0; i < eh.size(); ++i) out[i] = std::norm(eh[i]) + std::norm(ev[i]);
    return out;
}

}  // namespace lumenbell
