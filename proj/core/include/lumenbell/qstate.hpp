#pragma once

// Exact algebra of the polarization (h, v) x first-order spatial mode (R, L)
// two-degree-of-freedom state space.
//
// Canonical basis order is (hR, hL, vR, vL). R and L are the LG_{+1} and
// LG_{-1} modes. The equatorial mode states are
//
//     |L_theta> = (e^{i theta}|R> + e^{-i theta}|L>) / sqrt(2),
//
// with |H> = |L_0> and |V> = |L_90> = i(|R> - |L>)/sqrt(2).

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "lumenbell/angles.hpp"

namespace lumenbell {

using Complex = std::complex<double>;

/// Two complex coefficients over a 2-dimensional basis.
using Ket2 = std::array<Complex, 2>;

class PureState {
public:
    /// Builds a state from raw amplitudes and normalizes it.
    /// Throws std::invalid_argument for the zero vector.
    static PureState from_amplitudes(Complex hR, Complex hL, Complex vR, Complex vL);
    static PureState product(const Ket2& pol, const Ket2& mode);

    Complex hR() const { return amp_[0]; }
    Complex hL() const { return amp_[1]; }
    Complex vR() const { return amp_[2]; }
    Complex vL() const { return amp_[3]; }

    const std::array<Complex, 4>& amplitudes() const { return amp_; }
    Eigen::Vector4cd vector() const;
    double norm_squared() const;

private:
    explicit PureState(const std::array<Complex, 4>& amp) : amp_(amp) {}
    std::array<Complex, 4> amp_{};
};

/// |<a|b>|^2; insensitive to global phase.
double fidelity(const PureState& a, const PureState& b);

class DensityOperator {
public:
    /// Throws std::invalid_argument unless rho is Hermitian, unit-trace and
    /// positive semidefinite (all within 1e-12).
    explicit DensityOperator(const Eigen::Matrix4cd& rho);

    static DensityOperator from_pure(const PureState& psi);

    const Eigen::Matrix4cd& matrix() const { return rho_; }
    double expectation(const Eigen::Vector4cd& ket) const;

private:
    Eigen::Matrix4cd rho_;
};

enum class BellKind { hh_vv, hv_vh, hr_vl, scalar_hr };

PureState bell_state(BellKind kind);
std::string_view to_string(BellKind kind);
std::optional<BellKind> parse_bell_kind(std::string_view name);

/// cos(theta)|h> + sin(theta)|v>
Ket2 rotated_pol_ket(Degrees theta);
/// |L_theta> over (R, L)
Ket2 rotated_mode_ket(Degrees theta);

/// Orientation of the polarization analyser (PBS) and the mode analyser
/// (MBS). Both angles are kept in [0, 180).
struct MeasurementSetting {
    MeasurementSetting() = default;
    MeasurementSetting(Degrees pol_angle, Degrees mode_angle)
        : pol(pol_angle.reduced_half_turn()), mode(mode_angle.reduced_half_turn()) {}

    Degrees pol;
    Degrees mode;
};

/// The four rank-1 projector kets of a setting in port order hH, hV, vH, vV,
/// where h/v stand for l_{pol}/l_{pol+90} and H/V for L_{mode}/L_{mode+90}.
std::array<Eigen::Vector4cd, 4> port_kets(const MeasurementSetting& setting);

/// Port weights in the same order. "h"/"v" and "H"/"V" name the ports, not
/// the fixed lab axes, once the analysers are rotated.
struct PortProbabilities {
    double hH = 0.0;
    double hV = 0.0;
    double vH = 0.0;
    double vV = 0.0;

    double sum() const { return hH + hV + vH + vV; }
    PortProbabilities normalized() const;
};

/// Coefficients of |l_{t1} L_{t2}>, |l_{t1} L_{t2+90}>, |l_{t1+90} L_{t2}>,
/// |l_{t1+90} L_{t2+90}> in psi.
std::array<Complex, 4> express_in_rotated_bases(const PureState& psi, Degrees theta_pol,
                                                Degrees theta_mode);

PortProbabilities outcome_probabilities(const PureState& psi, const MeasurementSetting& setting);
PortProbabilities outcome_probabilities(const DensityOperator& rho,
                                        const MeasurementSetting& setting);

/// C = (hH + vV - hV - vH) / (hH + vV + hV + vH)
double correlation(const PortProbabilities& p);

/// S = C(a, b) + C(a2, b) + C(a2, b2) - C(a, b2); a, a2 are polarization
/// angles and b, b2 mode angles.
double chsh_four(const PureState& psi, Degrees a, Degrees b, Degrees a2, Degrees b2);
double chsh_four(const DensityOperator& rho, Degrees a, Degrees b, Degrees a2, Degrees b2);

/// S(theta) = 3C(theta) - C(3 theta), with the mode analyser fixed at 0.
double chsh_single(const PureState& psi, Degrees theta);
double chsh_single(const DensityOperator& rho, Degrees theta);

/// 2|a_hR a_vL - a_hL a_vR|
double concurrence(const PureState& psi);

/// p|psi><psi| + (1 - p) I/4. Throws std::domain_error for p outside [0, 1].
DensityOperator depolarize(const PureState& psi, double p);

}  // namespace lumenbell
