#include "lumenbell/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lumenbell/apparatus.hpp"

namespace lumenbell {

namespace {

constexpr double kAngleMatch = 1e-9;

// Evaluates port intensities at a fixed mode angle for any polarization
// angle. For the field source the MBS is run once and only the PBS stage
// is repeated.
class PortEvaluator {
public:
    PortEvaluator(const Source& source, Degrees theta_mode) : theta_mode_(theta_mode) {
        if (const auto* f = std::get_if<FieldSource>(&source)) {
            ports_.emplace(mbs_apply(f->field, theta_mode));
        } else {
            analytic_ = &std::get<AnalyticSource>(source);
        }
    }

    PortProbabilities operator()(Degrees theta_pol) const {
        if (ports_) return measure_ports(*ports_, theta_pol);
        const MeasurementSetting setting(theta_pol, theta_mode_);
        return std::visit(
            [&](const auto& s) { return outcome_probabilities(s, setting).normalized(); },
            analytic_->state);
    }

private:
    Degrees theta_mode_;
    const AnalyticSource* analytic_ = nullptr;
    std::optional<MbsPorts> ports_;
};

double half_turn_distance(double a, double b) {
    const double d = Degrees(a - b).reduced_half_turn().value();
    return std::min(d, 180.0 - d);
}

std::vector<double> check_grid(std::span<const double> values, const char* what) {
    if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty angle grid");
    return {values.begin(), values.end()};
}

}  // namespace

std::vector<double> angle_range(double start, double stop, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("angle_range: step must be positive");
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

std::vector<double> default_theta_grid() { return angle_range(0.0, 180.0, 2.5); }

std::vector<double> optimal_setting_grid() { return angle_range(0.0, 157.5, 22.5); }

std::vector<SweepRecord> sweep(const Source& source, Degrees theta_mode,
                               std::span<const double> thetas, TripleAnglePolicy policy) {
    const std::vector<double> grid = check_grid(thetas, "sweep");
    const PortEvaluator eval(source, theta_mode);
    const bool analytic = std::holds_alternative<AnalyticSource>(source);

    std::vector<SweepRecord> out;
    out.reserve(grid.size());
    for (double t : grid) {
        SweepRecord r;
        r.theta_deg = t;
        r.intensities = eval(Degrees(t));
        r.c = correlation(r.intensities);
        out.push_back(r);
    }

    for (SweepRecord& r : out) {
        const double triple = 3.0 * r.theta_deg;
        const auto hit = std::find_if(out.begin(), out.end(), [&](const SweepRecord& o) {
            return half_turn_distance(o.theta_deg, triple) < kAngleMatch;
        });
        if (hit == out.end() && policy == TripleAnglePolicy::require_in_grid) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "sweep: 3*theta = %.12g deg (theta = %.12g) is not on the angle grid",
                          triple, r.theta_deg);
            throw std::invalid_argument(buf);
        }
        // The analytic engine always evaluates C(3 theta) exactly.
        const double c3 = (analytic || hit == out.end()) ? correlation(eval(Degrees(triple))) : hit->c;
        r.s = 3.0 * r.c - c3;
    }
    return out;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::violated: return "violated";
        case Verdict::not_violated: return "not violated";
        case Verdict::at_bound: return "at bound";
    }
    return "unknown";
}

double verdict_tolerance(const Source& source) {
    return std::holds_alternative<AnalyticSource>(source) ? 1e-9 : 1e-3;
}

ViolationReport violation_report(const Source& source, const ReportMode& mode) {
    ViolationReport rep;
    rep.tolerance = verdict_tolerance(source);

    if (const auto* single = std::get_if<SingleParameterGrid>(&mode)) {
        rep.single_parameter = true;
        const auto records = sweep(source, single->theta_mode, check_grid(single->thetas, "violation_report"));
        for (const SweepRecord& r : records) {
            if (rep.arg_deg.empty() || std::abs(r.s) > rep.max_abs_s) {
                rep.max_abs_s = std::abs(r.s);
                rep.arg_deg = {r.theta_deg};
            }
        }
    } else {
        const std::vector<double> angles =
            check_grid(std::get<FourSettingGrid>(mode).angles, "violation_report");
        const std::size_t n = angles.size();
        // table[i][j] = C(pol = angles[i], mode = angles[j])
        std::vector<double> table(n * n);
        for (std::size_t j = 0; j < n; ++j) {
            const PortEvaluator eval(source, Degrees(angles[j]));
            for (std::size_t i = 0; i < n; ++i) table[i * n + j] = correlation(eval(Degrees(angles[i])));
        }
        auto c = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t a2 = 0; a2 < n; ++a2) {
                for (std::size_t b = 0; b < n; ++b) {
                    const double partial = c(a, b) + c(a2, b);
                    for (std::size_t b2 = 0; b2 < n; ++b2) {
                        const double s = std::abs(partial + c(a2, b2) - c(a, b2));
                        if (rep.arg_deg.empty() || s > rep.max_abs_s) {
                            rep.max_abs_s = s;
                            rep.arg_deg = {angles[a], angles[b], angles[a2], angles[b2]};
                        }
                    }
                }
            }
        }
    }

    const double bound = ViolationReport::hidden_variable_bound;
    if (rep.max_abs_s > bound + rep.tolerance) {
        rep.verdict = Verdict::violated;
    } else if (rep.max_abs_s < bound - rep.tolerance) {
        rep.verdict = Verdict::not_violated;
    } else {
        rep.verdict = Verdict::at_bound;
    }
    rep.exceeds_tsirelson = rep.max_abs_s > ViolationReport::tsirelson_bound + rep.tolerance;
    return rep;
}

DecoherenceScan decoherence_scan(const PureState& psi, std::span<const double> p_values,
                                 std::span<const double> setting_angles) {
    std::vector<double> ps = check_grid(p_values, "decoherence_scan");
    std::sort(ps.begin(), ps.end());
    const std::vector<double> angles = setting_angles.empty()
                                           ? optimal_setting_grid()
                                           : std::vector<double>(setting_angles.begin(),
                                                                 setting_angles.end());
    DecoherenceScan scan;
    for (double p : ps) {
        const Source src = AnalyticSource{depolarize(psi, p)};
        scan.points.push_back({p, violation_report(src, FourSettingGrid{angles}).max_abs_s});
    }
    const double bound = ViolationReport::hidden_variable_bound;
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        const auto& cur = scan.points[i];
        if (cur.max_s < bound) continue;
        if (i == 0) {
            if (cur.max_s == bound) scan.crossing = cur.p;
            break;
        }
        const auto& prev = scan.points[i - 1];
        const double f = (bound - prev.max_s) / (cur.max_s - prev.max_s);
        scan.crossing = prev.p + f * (cur.p - prev.p);
        break;
    }
    return scan;
}

double compare_engines(const PureState& psi, Degrees theta_mode, std::span<const double> thetas,
                       const GridSpec& grid) {
    const std::vector<double> angles = check_grid(thetas, "compare_engines");
    const Source field = FieldSource{synthesize(psi, grid)};
    const Source analytic = AnalyticSource{psi};
    const PortEvaluator f(field, theta_mode);
    const PortEvaluator a(analytic, theta_mode);
    double worst = 0.0;
    for (double t : angles) {
        const PortProbabilities pf = f(Degrees(t));
        const PortProbabilities pa = a(Degrees(t));
        worst = std::max({worst, std::abs(pf.hH - pa.hH), std::abs(pf.hV - pa.hV),
                          std::abs(pf.vH - pa.vH), std::abs(pf.vV - pa.vV)});
    }
    return worst;
}

std::string to_csv(std::span<const SweepRecord> records) {
    std::string out = "theta_deg,i_hH,i_vH,i_hV,i_vV,C,S\n";
    char buf[256];
    for (const SweepRecord& r : records) {
        const auto& p = r.intensities;
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.theta_deg,
                      p.hH, p.vH, p.hV, p.vV, r.c, r.s);
        out += buf;
    }
    return out;
}

}  // namespace lumenbell
