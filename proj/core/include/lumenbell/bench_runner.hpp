#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lumenbell/bench_format.hpp"
#include "lumenbell/fields.hpp"

namespace lumenbell::bench {

struct BenchRun {
    double input_power = 0.0;
    /// Tapped fields in record order, snapshotted where the tap appears.
    std::vector<std::pair<std::string, VectorField>> taps;

    const VectorField& tap(const std::string& name) const;
};

/// Executes a parsed description on `grid`. `overrides` replace `param`
/// defaults; overriding an undeclared variable throws std::invalid_argument,
/// as does a non-integer spiral charge.
BenchRun run_bench(const BenchDescription& desc, const GridSpec& grid,
                   const std::map<std::string, double>& overrides = {});

/// Polarization keys used by `pol=`: h, v, d, a and circular r = (1, i)/sqrt2,
/// l = (1, -i)/sqrt2 (s3 = +1 and -1 respectively).
Ket2 polarization_ket(const std::string& name);

}  // namespace lumenbell::bench
