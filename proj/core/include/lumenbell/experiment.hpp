#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lumenbell/angles.hpp"
#include "lumenbell/fields.hpp"
#include "lumenbell/qstate.hpp"

namespace lumenbell {

/// Exact state algebra on a pure or mixed state.
struct AnalyticSource {
    std::variant<PureState, DensityOperator> state;
};

/// A beam sent through the simulated MBS + PBS cascade.
struct FieldSource {
    VectorField field;
};

using Source = std::variant<AnalyticSource, FieldSource>;

struct SweepRecord {
    double theta_deg = 0.0;  ///< polarization analyser angle
    PortProbabilities intensities;
    double c = 0.0;
    double s = 0.0;  ///< 3 C(theta) - C(3 theta)
};

enum class TripleAnglePolicy {
    compute_on_demand,  ///< evaluate C(3 theta) with an extra measurement when off-grid
    require_in_grid,    ///< throw std::invalid_argument when 3 theta (mod 180) is off-grid (either engine)
};

/// 0 to 180 deg in 2.5 deg steps (73 points).
std::vector<double> default_theta_grid();
std::vector<double> angle_range(double start, double stop, double step);

std::vector<SweepRecord> sweep(const Source& source, Degrees theta_mode,
                               std::span<const double> thetas,
                               TripleAnglePolicy policy = TripleAnglePolicy::compute_on_demand);

struct SingleParameterGrid {
    std::vector<double> thetas;
    Degrees theta_mode{0.0};
};

/// The same angle list is used for both polarization and mode settings.
struct FourSettingGrid {
    std::vector<double> angles;
};

using ReportMode = std::variant<SingleParameterGrid, FourSettingGrid>;

enum class Verdict { violated, not_violated, at_bound };

std::string_view to_string(Verdict v);

struct ViolationReport {
    static constexpr double hidden_variable_bound = 2.0;
    static constexpr double tsirelson_bound = 2.0 * std::numbers::sqrt2;

    double max_abs_s = 0.0;
    /// {theta} for the single-parameter form; {a, b, a2, b2} (pol, mode,
    /// pol, mode) for the four-setting form.
    std::vector<double> arg_deg;
    double tolerance = 0.0;
    Verdict verdict = Verdict::not_violated;
    /// Above 2 sqrt2 + tolerance: the value cannot be a four-setting CHSH
    /// combination of a physical state.
    bool exceeds_tsirelson = false;
    bool single_parameter = false;
};

/// Numerical tolerance quoted with a verdict: 1e-9 analytic, 1e-3 field.
double verdict_tolerance(const Source& source);

/// Exhaustive search of |S| over the grid. The verdict is strict against
/// the bound 2: violated only above 2 + tolerance, not violated below
/// 2 - tolerance, at_bound in between.
ViolationReport violation_report(const Source& source, const ReportMode& mode);

/// Settings 0, 22.5, ..., 157.5 deg; contains the optimal CHSH settings of
/// the maximally correlated states.
std::vector<double> optimal_setting_grid();

struct DecoherencePoint {
    double p = 0.0;
    double max_s = 0.0;
};

struct DecoherenceScan {
    std::vector<DecoherencePoint> points;  ///< ascending p
    /// Purity where max S first reaches 2, by linear interpolation.
    std::optional<double> crossing;
};

DecoherenceScan decoherence_scan(const PureState& psi, std::span<const double> p_values,
                                 std::span<const double> setting_angles = {});

/// Max over thetas and ports of |analytic - field| intensity, with the field
/// synthesized from psi on `grid`.
double compare_engines(const PureState& psi, Degrees theta_mode, std::span<const double> thetas,
                       const GridSpec& grid);

/// Header theta_deg,i_hH,i_vH,i_hV,i_vV,C,S; 12 significant digits; LF.
std::string to_csv(std::span<const SweepRecord> records);

}  // namespace lumenbell
