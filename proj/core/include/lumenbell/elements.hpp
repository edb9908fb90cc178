#pragma once

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "lumenbell/angles.hpp"
#include "lumenbell/fields.hpp"

namespace lumenbell {

/// 2x2 operator on the (e_h, e_v) components.
using JonesMatrix = Eigen::Matrix2cd;

/// Linear retarder with fast axis at `angle`: R(-angle) diag(1, e^{i retardance}) R(angle),
/// R(a) = [[cos a, sin a], [-sin a, cos a]]. No global phase is stripped.
JonesMatrix waveplate(double retardance, Degrees angle);
JonesMatrix quarter_wave_plate(Degrees angle);
JonesMatrix half_wave_plate(Degrees angle);

/// Quarter-half-quarter unit: QWP(45) HWP(-45 + phase/2) QWP(45).
/// Equals -diag(e^{-i phase}, e^{+i phase}).
JonesMatrix qhq(double phase);
Degrees qhq_half_wave_angle(double phase);

/// |l_theta><l_theta|
JonesMatrix linear_projector(Degrees theta);

/// A point on the Poincare sphere (normalized Stokes vector).
struct PoincarePoint {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

PoincarePoint poincare_point(const Ket2& jones);

/// Half the signed solid angle enclosed by a closed polygon of geodesic
/// edges on the Poincare sphere. Positive for counter-clockwise traversal
/// seen from outside. Throws std::invalid_argument for an open path or fewer
/// than two points; degenerate paths give 0.
double solid_angle_phase(std::span<const PoincarePoint> path);

/// Polarization trajectory of `input` through the three plates of qhq(phase),
/// sampled with `samples_per_plate` points per plate by sweeping each
/// plate's retardance from 0 to its full value. Ends where it started.
std::vector<PoincarePoint> qhq_trajectory(const Ket2& input, double phase,
                                          int samples_per_plate = 64);

// Field-level element actions. All are pure functions of their inputs.

VectorField apply_jones(const JonesMatrix& m, const VectorField& field);

struct PbsOutputs {
    VectorField transmitted;  ///< projection onto |l_theta>
    VectorField reflected;    ///< projection onto |l_{theta+90}>
};

PbsOutputs pbs_apply(const VectorField& field, Degrees theta);
/// Recombination at a PBS: the |l_theta> part of `transmitted_in` plus the
/// |l_{theta+90}> part of `reflected_in`.
VectorField pbs_combine(const VectorField& transmitted_in, const VectorField& reflected_in,
                        Degrees theta);

/// Multiplies both components by e^{i charge phi}.
VectorField spp_apply(const VectorField& field, int charge);
/// Transverse parity x -> -x. Maps LG_{+1} to -LG_{-1}.
VectorField reflect(const VectorField& field);
/// Multiplies the whole field by e^{i phase}.
VectorField scalar_phase(const VectorField& field, double phase);

struct BeamPair {
    VectorField first;
    VectorField second;
};

/// Lossless symmetric splitter, t = 1/sqrt2, r = i/sqrt2.
/// split: first = t f (transmitted arm), second = r f (reflected arm).
BeamPair bs_split(const VectorField& field);
/// merge: first = t a + r b (port 1), second = r a + t b (port 2).
BeamPair bs_merge(const VectorField& a, const VectorField& b);

struct NoModeAction {
    bool operator==(const NoModeAction&) const = default;
};
struct Reflection {
    bool operator==(const Reflection&) const = default;
};
struct SpiralPhase {
    int charge = 0;
    bool operator==(const SpiralPhase&) const = default;
};
struct ScalarPhase {
    double phase = 0.0;
    bool operator==(const ScalarPhase&) const = default;
};

using ModeAction = std::variant<NoModeAction, Reflection, SpiralPhase, ScalarPhase>;

/// One non-splitting element: an optional Jones matrix and a spatial action.
/// The two act on different degrees of freedom and commute.
struct ElementOp {
    std::optional<JonesMatrix> jones;
    ModeAction mode = NoModeAction{};

    VectorField apply(const VectorField& field) const;
};

/// Applies ops in traversal order (ops[0] first).
VectorField apply_chain(std::span<const ElementOp> ops, VectorField field);

}  // namespace lumenbell
