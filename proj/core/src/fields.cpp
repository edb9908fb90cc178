#include "lumenbell/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lumenbell {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

void normalize(ScalarField& f) {
    const double n2 = f.norm_squared();
    if (!(n2 > 0.0)) throw std::domain_error("mode has zero norm on this grid");
    f *= Complex(1.0 / std::sqrt(n2));
}

ScalarField sample(const GridSpec& grid, auto&& fn) {
    ScalarField f(grid);
    for (int row = 0; row < grid.n; ++row) {
        const double y = grid.coord(row);
        for (int col = 0; col < grid.n; ++col) {
            f.at(row, col) = fn(grid.coord(col), y);
        }
    }
    return f;
}

}  // namespace

void GridSpec::validate() const {
    if (n < 16 || n % 2 != 0) {
        throw std::invalid_argument("GridSpec: n must be even and at least 16, got " +
                                    std::to_string(n));
    }
    if (!(waist > 0.0) || !std::isfinite(waist)) {
        throw std::invalid_argument("GridSpec: waist must be positive");
    }
    if (!(half_extent >= 3.0 * waist) || !std::isfinite(half_extent)) {
        throw std::invalid_argument("GridSpec: half_extent must be at least 3 waists");
    }
}

ScalarField::ScalarField(const GridSpec& grid) : grid_(grid) {
    grid_.validate();
    values_.assign(grid_.size(), Complex{});
}

ScalarField::ScalarField(const GridSpec& grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("ScalarField: value count does not match grid");
    }
}

double ScalarField::norm_squared() const {
    double acc = 0.0;
    for (const Complex& v : values_) acc += std::norm(v);
    return acc * grid_.cell_area();
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(grid_, other.grid_, "ScalarField::operator+=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(Complex k) {
    for (Complex& v : values_) v *= k;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) {
    a += b;
    return a;
}

ScalarField operator*(Complex k, ScalarField f) {
    f *= k;
    return f;
}

Complex overlap(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "overlap");
    const auto av = a.values();
    const auto bv = b.values();
    Complex acc{};
    for (std::size_t i = 0; i < av.size(); ++i) acc += std::conj(av[i]) * bv[i];
    return acc * a.grid().cell_area();
}

ScalarField eval_mode(ModeLabel label, const GridSpec& grid) {
    grid.validate();
    const double w = grid.waist;
    ScalarField f(grid);
    switch (label) {
        case ModeLabel::gaussian:
            f = sample(grid, [w](double x, double y) {
                return Complex(std::exp(-(x * x + y * y) / (w * w)));
            });
            break;
        case ModeLabel::lg_p1:
        case ModeLabel::lg_m1: {
            const double sign = label == ModeLabel::lg_p1 ? 1.0 : -1.0;
            // (sqrt2 r / w) e^{+-i phi} = sqrt2 (x +- i y) / w
            f = sample(grid, [w, sign](double x, double y) {
                return std::numbers::sqrt2 / w * Complex(x, sign * y) *
                       std::exp(-(x * x + y * y) / (w * w));
            });
            break;
        }
        case ModeLabel::hg10:
            return eval_rotated_mode(Degrees(0.0), grid);
        case ModeLabel::hg01:
            return eval_rotated_mode(Degrees(90.0), grid);
    }
    normalize(f);
    return f;
}

ScalarField eval_rotated_mode(Degrees theta, const GridSpec& grid) {
    const Ket2 k = rotated_mode_ket(theta);
    return k[0] * eval_mode(ModeLabel::lg_p1, grid) + k[1] * eval_mode(ModeLabel::lg_m1, grid);
}

VectorField VectorField::zeros(const GridSpec& grid) {
    return {ScalarField(grid), ScalarField(grid)};
}

VectorField VectorField::polarized(const ScalarField& profile, const Ket2& pol) {
    return {pol[0] * profile, pol[1] * profile};
}

Complex inner(const VectorField& a, const VectorField& b) {
    return overlap(a.e_h, b.e_h) + overlap(a.e_v, b.e_v);
}

double field_fidelity(const VectorField& a, const VectorField& b) {
    const double pa = a.power();
    const double pb = b.power();
    if (!(pa > 0.0) || !(pb > 0.0)) throw std::domain_error("field_fidelity: zero-power field");
    return std::norm(inner(a, b)) / (pa * pb);
}

VectorField synthesize(const PureState& psi, const GridSpec& grid) {
    const ScalarField r = eval_mode(ModeLabel::lg_p1, grid);
    const ScalarField l = eval_mode(ModeLabel::lg_m1, grid);
    return {psi.hR() * r + psi.hL() * l, psi.vR() * r + psi.vL() * l};
}

std::array<Complex, 4> decompose(const VectorField& field, Degrees theta_mode) {
    require_same_grid(field.e_h.grid(), field.e_v.grid(), "decompose");
    const ScalarField m0 = eval_rotated_mode(theta_mode, field.grid());
    const ScalarField m1 = eval_rotated_mode(theta_mode + Degrees(90.0), field.grid());
    return {overlap(m0, field.e_h), overlap(m1, field.e_h), overlap(m0, field.e_v),
            overlap(m1, field.e_v)};
}

PureState project_to_state(const VectorField& field) {
    const ScalarField r = eval_mode(ModeLabel::lg_p1, field.grid());
    const ScalarField l = eval_mode(ModeLabel::lg_m1, field.grid());
    const std::array<Complex, 4> a{overlap(r, field.e_h), overlap(l, field.e_h), overlap(r, field.e_v),
                                   overlap(l, field.e_v)};
    double weight = 0.0;
    for (const Complex& c : a) weight += std::norm(c);
    if (!(weight > 1e-12 * field.power())) {
        throw std::domain_error("project_to_state: field has no first-order mode content");
    }
    return PureState::from_amplitudes(a[0], a[1], a[2], a[3]);
}

std::vector<double> StokesMaps::degree_of_polarization() const {
    std::vector<double> dop(s0.size(), 0.0);
    for (std::size_t i = 0; i < s0.size(); ++i) {
        if (s0[i] > 0.0) {
            dop[i] = std::sqrt(s1[i] * s1[i] + s2[i] * s2[i] + s3[i] * s3[i]) / s0[i];
        }
    }
    return dop;
}

StokesMaps stokes_maps(const VectorField& field) {
    require_same_grid(field.e_h.grid(), field.e_v.grid(), "stokes_maps");
    const std::size_t count = field.grid().size();
    StokesMaps m{field.grid(), std::vector<double>(count), std::vector<double>(count),
                 std::vector<double>(count), std::vector<double>(count)};
    const auto eh = field.e_h.values();
    const auto ev = field.e_v.values();
    for (std::size_t i = 0; i < count; ++i) {
        const double ih = std::norm(eh[i]);
        const double iv = std::norm(ev[i]);
        const Complex cross = std::conj(eh[i]) * ev[i];
        m.s0[i] = ih + iv;
        m.s1[i] = ih - iv;
        m.s2[i] = 2.0 * cross.real();
        m.s3[i] = 2.0 * cross.imag();
    }
    return m;
}

GlobalStokes global_stokes(const VectorField& field) {
    const StokesMaps m = stokes_maps(field);
    GlobalStokes g;
    for (std::size_t i = 0; i < m.s0.size(); ++i) {
        g.s0 += m.s0[i];
        g.s1 += m.s1[i];
        g.s2 += m.s2[i];
        g.s3 += m.s3[i];
    }
    const double da = m.grid.cell_area();
    g.s0 *= da;
    g.s1 *= da;
    g.s2 *= da;
    g.s3 *= da;
    if (!(g.s0 > 0.0)) throw std::domain_error("global_stokes: field has zero power");
    g.degree_of_polarization = std::sqrt(g.s1 * g.s1 + g.s2 * g.s2 + g.s3 * g.s3) / g.s0;
    return g;
}

}  // namespace lumenbell
