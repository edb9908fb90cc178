#include "lumenbell/bench_runner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lumenbell/elements.hpp"

namespace lumenbell::bench {

namespace {

using PathMap = std::vector<std::pair<std::string, VectorField>>;

VectorField& lookup(PathMap& paths, const std::string& name) {
    for (auto& [n, f] : paths) {
        if (n == name) return f;
    }
    throw std::logic_error("bench: unknown path '" + name + "'");
}

VectorField take(PathMap& paths, const std::string& name) {
    const auto it = std::find_if(paths.begin(), paths.end(),
                                 [&](const auto& p) { return p.first == name; });
    if (it == paths.end()) throw std::logic_error("bench: unknown path '" + name + "'");
    VectorField f = std::move(it->second);
    paths.erase(it);
    return f;
}

const std::string& identifier(const Record& r, std::string_view key) {
    return std::get<Identifier>(r.find(key)->value).value;
}

ModeLabel mode_label(const std::string& name) {
    if (name == "gaussian") return ModeLabel::gaussian;
    if (name == "lg+1") return ModeLabel::lg_p1;
    if (name == "lg-1") return ModeLabel::lg_m1;
    if (name == "hg10") return ModeLabel::hg10;
    if (name == "hg01") return ModeLabel::hg01;
    throw std::invalid_argument("bench: unknown mode '" + name + "'");
}

VectorField make_input(const Record& r, const GridSpec& grid) {
    if (r.kind == "gaussian") {
        return VectorField::polarized(eval_mode(ModeLabel::gaussian, grid),
                                      polarization_ket(identifier(r, "pol")));
    }
    if (r.kind == "state") {
        return synthesize(bell_state(*parse_bell_kind(identifier(r, "name"))), grid);
    }
    return VectorField::polarized(eval_mode(mode_label(identifier(r, "name")), grid),
                                  polarization_ket(identifier(r, "pol")));
}

}  // namespace

const VectorField& BenchRun::tap(const std::string& name) const {
    for (const auto& [n, f] : taps) {
        if (n == name) return f;
    }
    throw std::out_of_range("bench: no tap named '" + name + "'");
}

Ket2 polarization_ket(const std::string& name) {
    const double s = 1.0 / std::numbers::sqrt2;
    if (name == "h") return {1.0, 0.0};
    if (name == "v") return {0.0, 1.0};
    if (name == "d") return {s, s};
    if (name == "a") return {s, -s};
    if (name == "r") return {s, Complex(0.0, s)};
    if (name == "l") return {s, Complex(0.0, -s)};
    throw std::invalid_argument("bench: unknown polarization '" + name + "'");
}

BenchRun run_bench(const BenchDescription& desc, const GridSpec& grid,
                   const std::map<std::string, double>& overrides) {
    grid.validate();
    std::map<std::string, double> vars = desc.defaults();
    for (const auto& [name, value] : overrides) {
        if (!vars.contains(name)) {
            throw std::invalid_argument("bench: no parameter named '" + name + "'");
        }
        vars[name] = value;
    }
    auto number = [&vars](const Record& r, std::string_view key) {
        return std::get<Expr>(r.find(key)->value).evaluate(vars);
    };

    BenchRun run;
    PathMap paths;
    for (const Record& r : desc.records) {
        switch (r.keyword) {
            case Keyword::param: continue;
            case Keyword::input:
                paths.emplace_back("in", make_input(r, grid));
                run.input_power = paths.back().second.power();
                continue;
            case Keyword::tap: {
                const std::string& name = identifier(r, "name");
                run.taps.emplace_back(name, lookup(paths, name));
                continue;
            }
            case Keyword::element: break;
        }

        std::vector<std::string> on;
        if (const Param* p = r.find("on")) on = std::get<PathList>(p->value).names;

        if (r.kind == "pbs" || r.kind == "bs") {
            if (on.empty()) on = {paths.front().first};
            std::vector<std::string> out;
            if (const Param* p = r.find("out")) out = std::get<PathList>(p->value).names;
            const bool merge = on.size() == 2;
            if (out.empty()) {
                out = r.kind == "bs" ? (merge ? std::vector<std::string>{"port1", "port2"}
                                              : std::vector<std::string>{"a", "b"})
                                     : (merge ? std::vector<std::string>{"out"}
                                              : std::vector<std::string>{"t", "r"});
            }
            if (r.kind == "pbs") {
                const Degrees angle(number(r, "angle"));
                if (merge) {
                    VectorField t = take(paths, on[0]);
                    VectorField rf = take(paths, on[1]);
                    paths.emplace_back(out[0], pbs_combine(t, rf, angle));
                } else {
                    PbsOutputs o = pbs_apply(take(paths, on[0]), angle);
                    paths.emplace_back(out[0], std::move(o.transmitted));
                    paths.emplace_back(out[1], std::move(o.reflected));
                }
            } else {
                BeamPair o = merge ? [&] {
                    VectorField a = take(paths, on[0]);
                    VectorField b = take(paths, on[1]);
                    return bs_merge(a, b);
                }()
                                   : bs_split(take(paths, on[0]));
                paths.emplace_back(out[0], std::move(o.first));
                paths.emplace_back(out[1], std::move(o.second));
            }
            continue;
        }

        auto apply = [&](const VectorField& f) -> VectorField {
            if (r.kind == "qwp") return apply_jones(quarter_wave_plate(Degrees(number(r, "angle"))), f);
            if (r.kind == "hwp") return apply_jones(half_wave_plate(Degrees(number(r, "angle"))), f);
            if (r.kind == "waveplate") {
                return apply_jones(waveplate(Degrees(number(r, "retardance")).radians(),
                                             Degrees(number(r, "angle"))),
                                   f);
            }
            if (r.kind == "qhq") return apply_jones(qhq(Degrees(number(r, "phase")).radians()), f);
            if (r.kind == "spp") {
                const double c = number(r, "charge");
                if (c != std::round(c) || std::abs(c) > 1e6) {
                    throw std::invalid_argument("bench: line " + std::to_string(r.line) +
                                                ": spiral charge must be an integer");
                }
                return spp_apply(f, static_cast<int>(c));
            }
            if (r.kind == "reflect") return reflect(f);
            if (r.kind == "phase") return scalar_phase(f, Degrees(number(r, "value")).radians());
            throw std::logic_error("bench: unhandled element '" + r.kind + "'");
        };

        if (on.empty()) {
            for (auto& [name, f] : paths) f = apply(f);
        } else {
            for (const auto& name : on) {
                VectorField& f = lookup(paths, name);
                f = apply(f);
            }
        }
    }
    return run;
}

}  // namespace lumenbell::bench
