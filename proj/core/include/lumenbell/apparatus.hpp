#pragma once

// The three benches: the Sagnac vector-beam generator, the geometric-phase
// mode beam splitter (MBS) and the MBS + PBS measurement cascade.

#include "lumenbell/angles.hpp"
#include "lumenbell/elements.hpp"
#include "lumenbell/fields.hpp"
#include "lumenbell/qstate.hpp"

namespace lumenbell {

/// Sagnac generator: a diagonally polarized unit-waist Gaussian is split by
/// a PBS at 0 deg into counter-propagating h and v paths, the spiral phase
/// plate imprints charge +1 on the h path and -1 on the v path, and the PBS
/// recombines them. With `ideal` the exact (|hR> + |vL>)/sqrt2 field is
/// returned instead.
VectorField generate_vector_beam(const GridSpec& grid, bool ideal = false);

/// Mode beam splitter as a two-arm interferometer:
///
///   bs_split -> arm A: QWP(45) HWP(-45)         QWP(45)
///               arm B: reflect, QWP(45) HWP(-45 + theta) QWP(45)
///            -> bs_merge
///
/// The arms differ by a geometric phase diag(e^{2i theta}, e^{-2i theta})
/// and one transverse reflection. Port 1 carries |h>|L_theta> for an |hR>
/// input and |v>|L_theta> for |vL>; port 2 the |L_{theta+90}> projection.
/// The device is an exact mode projector on span{hR, vL} for any theta, and
/// on the whole space only for theta = 0 or 90 deg.
struct MbsPorts {
    VectorField port1;
    VectorField port2;
};

MbsPorts mbs_apply(const VectorField& field, Degrees theta_mode);

/// PBS at theta_pol on each MBS port; powers normalized by their sum.
/// hH/vH come from port 1, hV/vV from port 2.
PortProbabilities measure_ports(const MbsPorts& ports, Degrees theta_pol);

/// mbs_apply followed by measure_ports.
PortProbabilities cascade(const VectorField& field, Degrees theta_mode, Degrees theta_pol);

}  // namespace lumenbell
