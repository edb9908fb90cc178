#include "lumenbell/qstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace lumenbell {

namespace {

constexpr double kTolerance = 1e-12;
constexpr Complex kI{0.0, 1.0};

Eigen::Vector4cd kron(const Ket2& pol, const Ket2& mode) {
    Eigen::Vector4cd out;
    out << pol[0] * mode[0], pol[0] * mode[1], pol[1] * mode[0], pol[1] * mode[1];
    return out;
}

}  // namespace

PureState PureState::from_amplitudes(Complex hR, Complex hL, Complex vR, Complex vL) {
    const double n2 = std::norm(hR) + std::norm(hL) + std::norm(vR) + std::norm(vL);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw std::invalid_argument("PureState: amplitudes must be finite and not all zero");
    }
    const double s = 1.0 / std::sqrt(n2);
    return PureState({hR * s, hL * s, vR * s, vL * s});
}

PureState PureState::product(const Ket2& pol, const Ket2& mode) {
    return from_amplitudes(pol[0] * mode[0], pol[0] * mode[1], pol[1] * mode[0], pol[1] * mode[1]);
}

Eigen::Vector4cd PureState::vector() const {
    return Eigen::Vector4cd(amp_[0], amp_[1], amp_[2], amp_[3]);
}

double PureState::norm_squared() const {
    return std::norm(amp_[0]) + std::norm(amp_[1]) + std::norm(amp_[2]) + std::norm(amp_[3]);
}

double fidelity(const PureState& a, const PureState& b) {
    return std::norm(a.vector().dot(b.vector()));
}

DensityOperator::DensityOperator(const Eigen::Matrix4cd& rho) : rho_(rho) {
    if (!rho_.allFinite()) throw std::invalid_argument("DensityOperator: non-finite entries");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0)) > kTolerance) {
        throw std::invalid_argument("DensityOperator: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kTolerance) {
        throw std::invalid_argument("DensityOperator: matrix has a negative eigenvalue");
    }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    const Eigen::Vector4cd v = psi.vector();
    return DensityOperator(v * v.adjoint());
}

double DensityOperator::expectation(const Eigen::Vector4cd& ket) const {
    return (ket.adjoint() * rho_ * ket)(0, 0).real();
}

PureState bell_state(BellKind kind) {
    const double s = 1.0 / std::numbers::sqrt2;
    const Ket2 h{1.0, 0.0};
    const Ket2 v{0.0, 1.0};
    const Ket2 H = rotated_mode_ket(Degrees(0.0));
    const Ket2 V = rotated_mode_ket(Degrees(90.0));
    switch (kind) {
        case BellKind::hh_vv: {
            const Eigen::Vector4cd a = s * (kron(h, H) + kron(v, V));
            return PureState::from_amplitudes(a[0], a[1], a[2], a[3]);
        }
        case BellKind::hv_vh: {
            const Eigen::Vector4cd a = s * (kron(h, V) + kron(v, H));
            return PureState::from_amplitudes(a[0], a[1], a[2], a[3]);
        }
        case BellKind::hr_vl:
            return PureState::from_amplitudes(s, 0.0, 0.0, s);
        case BellKind::scalar_hr:
            return PureState::from_amplitudes(1.0, 0.0, 0.0, 0.0);
    }
    throw std::invalid_argument("bell_state: unknown kind");
}

std::string_view to_string(BellKind kind) {
    switch (kind) {
        case BellKind::hh_vv: return "hh_vv";
        case BellKind::hv_vh: return "hv_vh";
        case BellKind::hr_vl: return "hr_vl";
        case BellKind::scalar_hr: return "scalar_hr";
    }
    return "unknown";
}

std::optional<BellKind> parse_bell_kind(std::string_view name) {
    for (auto k : {BellKind::hh_vv, BellKind::hv_vh, BellKind::hr_vl, BellKind::scalar_hr}) {
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

Ket2 rotated_pol_ket(Degrees theta) {
    const double t = theta.radians();
    return {std::cos(t), std::sin(t)};
}

Ket2 rotated_mode_ket(Degrees theta) {
    const double t = theta.radians();
    const double s = 1.0 / std::numbers::sqrt2;
    return {s * std::polar(1.0, t), s * std::polar(1.0, -t)};
}

std::array<Eigen::Vector4cd, 4> port_kets(const MeasurementSetting& setting) {
    const Ket2 p0 = rotated_pol_ket(setting.pol);
    const Ket2 p1 = rotated_pol_ket(setting.pol + Degrees(90.0));
    const Ket2 m0 = rotated_mode_ket(setting.mode);
    const Ket2 m1 = rotated_mode_ket(setting.mode + Degrees(90.0));
    return {kron(p0, m0), kron(p0, m1), kron(p1, m0), kron(p1, m1)};
}

PortProbabilities PortProbabilities::normalized() const {
    const double total = sum();
    if (!(total > 0.0)) throw std::domain_error("PortProbabilities: zero total intensity");
    return {hH / total, hV / total, vH / total, vV / total};
}

std::array<Complex, 4> express_in_rotated_bases(const PureState& psi, Degrees theta_pol,
                                                Degrees theta_mode) {
    // Raw angles (no half-turn reduction) so the coefficients carry the
    // sign convention of the caller's angles.
    const Ket2 p0 = rotated_pol_ket(theta_pol);
    const Ket2 p1 = rotated_pol_ket(theta_pol + Degrees(90.0));
    const Ket2 m0 = rotated_mode_ket(theta_mode);
    const Ket2 m1 = rotated_mode_ket(theta_mode + Degrees(90.0));
    const Eigen::Vector4cd v = psi.vector();
    return {kron(p0, m0).dot(v), kron(p0, m1).dot(v), kron(p1, m0).dot(v), kron(p1, m1).dot(v)};
}

PortProbabilities outcome_probabilities(const PureState& psi, const MeasurementSetting& setting) {
    const auto kets = port_kets(setting);
    const Eigen::Vector4cd v = psi.vector();
    return {std::norm(kets[0].dot(v)), std::norm(kets[1].dot(v)), std::norm(kets[2].dot(v)),
            std::norm(kets[3].dot(v))};
}

PortProbabilities outcome_probabilities(const DensityOperator& rho,
                                        const MeasurementSetting& setting) {
    const auto kets = port_kets(setting);
    return {rho.expectation(kets[0]), rho.expectation(kets[1]), rho.expectation(kets[2]),
            rho.expectation(kets[3])};
}

double correlation(const PortProbabilities& p) {
    const double total = p.sum();
    if (!(total > 0.0)) throw std::domain_error("correlation: zero total intensity");
    return (p.hH + p.vV - p.hV - p.vH) / total;
}

namespace {

template <typename State>
double chsh_four_impl(const State& s, Degrees a, Degrees b, Degrees a2, Degrees b2) {
    auto c = [&](Degrees pol, Degrees mode) {
        return correlation(outcome_probabilities(s, MeasurementSetting(pol, mode)));
    };
    return c(a, b) + c(a2, b) + c(a2, b2) - c(a, b2);
}

template <typename State>
double chsh_single_impl(const State& s, Degrees theta) {
    auto c = [&](Degrees pol) {
        return correlation(outcome_probabilities(s, MeasurementSetting(pol, Degrees(0.0))));
    };
    return 3.0 * c(theta) - c(theta * 3.0);
}

}  // namespace

double chsh_four(const PureState& psi, Degrees a, Degrees b, Degrees a2, Degrees b2) {
    return chsh_four_impl(psi, a, b, a2, b2);
}

double chsh_four(const DensityOperator& rho, Degrees a, Degrees b, Degrees a2, Degrees b2) {
    return chsh_four_impl(rho, a, b, a2, b2);
}

double chsh_single(const PureState& psi, Degrees theta) { return chsh_single_impl(psi, theta); }

double chsh_single(const DensityOperator& rho, Degrees theta) {
    return chsh_single_impl(rho, theta);
}

double concurrence(const PureState& psi) {
    return 2.0 * std::abs(psi.hR() * psi.vL() - psi.hL() * psi.vR());
}

DensityOperator depolarize(const PureState& psi, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("depolarize: purity must lie in [0, 1]");
    }
    const Eigen::Vector4cd v = psi.vector();
    Eigen::Matrix4cd rho = p * (v * v.adjoint());
    rho += ((1.0 - p) / 4.0) * Eigen::Matrix4cd::Identity();
    // Restore exact Hermiticity lost to rounding in the outer product.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(rho);
}

}  // namespace lumenbell
