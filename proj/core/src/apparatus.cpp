#include "lumenbell/apparatus.hpp"

#include <numbers>

namespace lumenbell {

namespace {

// Shared by both MBS arms; the half-wave plate angle is the only difference
// besides the reflection.
VectorField qhq_arm(VectorField beam, Degrees half_wave_angle) {
    const JonesMatrix q = quarter_wave_plate(Degrees(45.0));
    beam = apply_jones(q, beam);
    beam = apply_jones(half_wave_plate(half_wave_angle), beam);
    return apply_jones(q, beam);
}

}  // namespace

VectorField generate_vector_beam(const GridSpec& grid, bool ideal) {
    if (ideal) return synthesize(bell_state(BellKind::hr_vl), grid);

    const double s = 1.0 / std::numbers::sqrt2;
    const VectorField input =
        VectorField::polarized(eval_mode(ModeLabel::gaussian, grid), Ket2{s, s});
    const PbsOutputs split = pbs_apply(input, Degrees(0.0));
    const VectorField cw = spp_apply(split.transmitted, +1);
    const VectorField ccw = spp_apply(split.reflected, -1);
    return pbs_combine(cw, ccw, Degrees(0.0));
}

MbsPorts mbs_apply(const VectorField& field, Degrees theta_mode) {
    const BeamPair arms = bs_split(field);
    const VectorField a = qhq_arm(arms.first, Degrees(-45.0));
    const VectorField b = qhq_arm(reflect(arms.second), Degrees(-45.0) + theta_mode);
    BeamPair ports = bs_merge(a, b);
    return {std::move(ports.first), std::move(ports.second)};
}

PortProbabilities measure_ports(const MbsPorts& ports, Degrees theta_pol) {
    const PbsOutputs p1 = pbs_apply(ports.port1, theta_pol);
    const PbsOutputs p2 = pbs_apply(ports.port2, theta_pol);
    PortProbabilities raw;
    raw.hH = p1.transmitted.power();
    raw.vH = p1.reflected.power();
    raw.hV = p2.transmitted.power();
    raw.vV = p2.reflected.power();
    return raw.normalized();
}

PortProbabilities cascade(const VectorField& field, Degrees theta_mode, Degrees theta_pol) {
    return measure_ports(mbs_apply(field, theta_mode), theta_pol);
}

}  // namespace lumenbell
