#include "lumenbell/elements.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>

namespace lumenbell {

namespace {

JonesMatrix rotation(Degrees angle) {
    const double c = std::cos(angle.radians());
    const double s = std::sin(angle.radians());
    JonesMatrix r;
    r << c, s, -s, c;
    return r;
}

Eigen::Vector3d to_vector(const PoincarePoint& p) { return {p.s1, p.s2, p.s3}; }

}  // namespace

JonesMatrix waveplate(double retardance, Degrees angle) {
    JonesMatrix d = JonesMatrix::Zero();
    d(0, 0) = 1.0;
    d(1, 1) = std::polar(1.0, retardance);
    return rotation(-angle) * d * rotation(angle);
}

JonesMatrix quarter_wave_plate(Degrees angle) { return waveplate(std::numbers::pi / 2.0, angle); }

JonesMatrix half_wave_plate(Degrees angle) { return waveplate(std::numbers::pi, angle); }

Degrees qhq_half_wave_angle(double phase) { return Degrees(-45.0) + from_radians(phase) * 0.5; }

JonesMatrix qhq(double phase) {
    const JonesMatrix q = quarter_wave_plate(Degrees(45.0));
    return q * half_wave_plate(qhq_half_wave_angle(phase)) * q;
}

JonesMatrix linear_projector(Degrees theta) {
    const double c = std::cos(theta.radians());
    const double s = std::sin(theta.radians());
    JonesMatrix p;
    p << c * c, c * s, c * s, s * s;
    return p;
}

PoincarePoint poincare_point(const Ket2& jones) {
    const double ih = std::norm(jones[0]);
    const double iv = std::norm(jones[1]);
    const double s0 = ih + iv;
    if (!(s0 > 0.0)) throw std::invalid_argument("poincare_point: zero Jones vector");
    const Complex cross = std::conj(jones[0]) * jones[1];
    return {(ih - iv) / s0, 2.0 * cross.real() / s0, 2.0 * cross.imag() / s0};
}

double solid_angle_phase(std::span<const PoincarePoint> path) {
    if (path.size() < 3) {
        throw std::invalid_argument("solid_angle_phase: a closed path needs at least 3 entries");
    }
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(path.size());
    for (const auto& p : path) {
        const Eigen::Vector3d v = to_vector(p);
        const double n = v.norm();
        if (!(n > 0.0)) throw std::invalid_argument("solid_angle_phase: zero-length point");
        pts.push_back(v / n);
    }
    if ((pts.front() - pts.back()).norm() > 1e-9) {
        throw std::invalid_argument("solid_angle_phase: path is not closed");
    }
    // Fan of geodesic triangles from the first vertex; each signed triangle
    // area from tan(E/2) = a.(b x c) / (1 + a.b + b.c + c.a).
    const Eigen::Vector3d& a = pts.front();
    double area = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const Eigen::Vector3d& b = pts[i];
        const Eigen::Vector3d& c = pts[i + 1];
        const double num = a.dot(b.cross(c));
        const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
        if (num == 0.0 && den <= 0.0) continue;
        area += 2.0 * std::atan2(num, den);
    }
    return area / 2.0;
}

std::vector<PoincarePoint> qhq_trajectory(const Ket2& input, double phase,
                                          int samples_per_plate) {
    if (samples_per_plate < 2) {
        throw std::invalid_argument("qhq_trajectory: need at least 2 samples per plate");
    }
    struct Plate {
        double retardance;
        Degrees angle;
    };
    const Plate plates[] = {{std::numbers::pi / 2.0, Degrees(45.0)},
                            {std::numbers::pi, qhq_half_wave_angle(phase)},
                            {std::numbers::pi / 2.0, Degrees(45.0)}};

    Eigen::Vector2cd state(input[0], input[1]);
    std::vector<PoincarePoint> out{poincare_point(input)};
    for (const Plate& plate : plates) {
        for (int k = 1; k <= samples_per_plate; ++k) {
            const double frac = static_cast<double>(k) / samples_per_plate;
            const Eigen::Vector2cd s = waveplate(plate.retardance * frac, plate.angle) * state;
            out.push_back(poincare_point({s[0], s[1]}));
        }
        state = waveplate(plate.retardance, plate.angle) * state;
    }
    return out;
}

VectorField apply_jones(const JonesMatrix& m, const VectorField& field) {
    VectorField out = VectorField::zeros(field.grid());
    const auto eh = field.e_h.values();
    const auto ev = field.e_v.values();
    auto oh = out.e_h.values();
    auto ov = out.e_v.values();
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t i = 0; i < eh.size(); ++i) {
        oh[i] = m00 * eh[i] + m01 * ev[i];
        ov[i] = m10 * eh[i] + m11 * ev[i];
    }
    return out;
}

PbsOutputs pbs_apply(const VectorField& field, Degrees theta) {
    return {apply_jones(linear_projector(theta), field),
            apply_jones(linear_projector(theta + Degrees(90.0)), field)};
}

VectorField pbs_combine(const VectorField& transmitted_in, const VectorField& reflected_in,
                        Degrees theta) {
    if (!(transmitted_in.grid() == reflected_in.grid())) {
        throw std::invalid_argument("pbs_combine: grid mismatch");
    }
    VectorField out = apply_jones(linear_projector(theta), transmitted_in);
    const VectorField r = apply_jones(linear_projector(theta + Degrees(90.0)), reflected_in);
    out.e_h += r.e_h;
    out.e_v += r.e_v;
    return out;
}

VectorField spp_apply(const VectorField& field, int charge) {
    if (charge == 0) return field;
    VectorField out = field;
    const GridSpec& g = field.grid();
    for (int row = 0; row < g.n; ++row) {
        const double y = g.coord(row);
        for (int col = 0; col < g.n; ++col) {
            const Complex mask = std::polar(1.0, charge * std::atan2(y, g.coord(col)));
            out.e_h.at(row, col) *= mask;
            out.e_v.at(row, col) *= mask;
        }
    }
    return out;
}

VectorField reflect(const VectorField& field) {
    VectorField out = VectorField::zeros(field.grid());
    const int n = field.grid().n;
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            out.e_h.at(row, n - 1 - col) = field.e_h.at(row, col);
            out.e_v.at(row, n - 1 - col) = field.e_v.at(row, col);
        }
    }
    return out;
}

VectorField scalar_phase(const VectorField& field, double phase) {
    VectorField out = field;
    const Complex k = std::polar(1.0, phase);
    out.e_h *= k;
    out.e_v *= k;
    return out;
}

BeamPair bs_split(const VectorField& field) {
    const Complex t(1.0 / std::numbers::sqrt2, 0.0);
    const Complex r(0.0, 1.0 / std::numbers::sqrt2);
    return {{t * field.e_h, t * field.e_v}, {r * field.e_h, r * field.e_v}};
}

BeamPair bs_merge(const VectorField& a, const VectorField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("bs_merge: grid mismatch");
    const Complex t(1.0 / std::numbers::sqrt2, 0.0);
    const Complex r(0.0, 1.0 / std::numbers::sqrt2);
    return {{t * a.e_h + r * b.e_h, t * a.e_v + r * b.e_v},
            {r * a.e_h + t * b.e_h, r * a.e_v + t * b.e_v}};
}

VectorField ElementOp::apply(const VectorField& field) const {
    VectorField out = jones ? apply_jones(*jones, field) : field;
    return std::visit(
        [&out](const auto& action) -> VectorField {
            using T = std::decay_t<decltype(action)>;
            if constexpr (std::is_same_v<T, NoModeAction>) {
                return out;
            } else if constexpr (std::is_same_v<T, Reflection>) {
                return reflect(out);
            } else if constexpr (std::is_same_v<T, SpiralPhase>) {
                return spp_apply(out, action.charge);
            } else {
                return scalar_phase(out, action.phase);
            }
        },
        mode);
}

VectorField apply_chain(std::span<const ElementOp> ops, VectorField field) {
    for (const ElementOp& op : ops) field = op.apply(field);
    return field;
}

}  // namespace lumenbell
