#pragma once

// Transverse paraxial fields sampled on a square, cell-centred grid.
//
// Sample (row, col) sits at x = (col + 1/2) dx - half_extent,
// y = (row + 1/2) dx - half_extent, dx = 2 half_extent / n. With n even the
// grid is symmetric under x -> -x and y -> -y and never samples r = 0.

#include <array>
#include <span>
#include <vector>

#include "lumenbell/angles.hpp"
#include "lumenbell/qstate.hpp"

namespace lumenbell {

struct GridSpec {
    int n = 256;
    double half_extent = 5.0;  ///< in the same length unit as waist
    double waist = 1.0;

    /// Throws std::invalid_argument unless n >= 16, n even and
    /// half_extent >= 3 waist.
    void validate() const;

    double spacing() const { return 2.0 * half_extent / n; }
    double cell_area() const { return spacing() * spacing(); }
    double coord(int index) const { return (index + 0.5) * spacing() - half_extent; }
    std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

    bool operator==(const GridSpec&) const = default;
};

class ScalarField {
public:
    explicit ScalarField(const GridSpec& grid);
    ScalarField(const GridSpec& grid, std::vector<Complex> values);

    const GridSpec& grid() const { return grid_; }
    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }

    Complex& at(int row, int col) { return values_[index(row, col)]; }
    const Complex& at(int row, int col) const { return values_[index(row, col)]; }

    double norm_squared() const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator*=(Complex k);

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(grid_.n) +
               static_cast<std::size_t>(col);
    }

    GridSpec grid_;
    std::vector<Complex> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator*(Complex k, ScalarField f);

/// Cell-area weighted <a|b>, conjugate-linear in a. Throws
/// std::invalid_argument when the grids differ.
Complex overlap(const ScalarField& a, const ScalarField& b);

enum class ModeLabel { gaussian, lg_p1, lg_m1, hg10, hg01 };

/// Unit-norm mode on the grid. LG_{+-1} = N (sqrt2 r/w) e^{-r^2/w^2} e^{+-i phi};
/// HG10 and HG01 are |L_0> and |L_90>.
ScalarField eval_mode(ModeLabel label, const GridSpec& grid);
/// |L_theta> = (e^{i theta} LG_{+1} + e^{-i theta} LG_{-1}) / sqrt2
ScalarField eval_rotated_mode(Degrees theta, const GridSpec& grid);

struct VectorField {
    ScalarField e_h;
    ScalarField e_v;

    static VectorField zeros(const GridSpec& grid);
    /// Spatially uniform polarization `pol` on a scalar profile.
    static VectorField polarized(const ScalarField& profile, const Ket2& pol);

    const GridSpec& grid() const { return e_h.grid(); }
    double power() const { return e_h.norm_squared() + e_v.norm_squared(); }
};

/// <a|b> summed over both polarization components.
Complex inner(const VectorField& a, const VectorField& b);
/// |<a|b>|^2 / (|a|^2 |b|^2)
double field_fidelity(const VectorField& a, const VectorField& b);

/// e_h = a_hR LG_{+1} + a_hL LG_{-1}, e_v = a_vR LG_{+1} + a_vL LG_{-1}
VectorField synthesize(const PureState& psi, const GridSpec& grid);

/// Amplitudes over (h L_t, h L_{t+90}, v L_t, v L_{t+90}).
std::array<Complex, 4> decompose(const VectorField& field, Degrees theta_mode);

/// The component of the field inside the first-order (|l| = 1, p = 0)
/// subspace, as a normalized state. Throws std::domain_error if the field
/// has no weight there.
PureState project_to_state(const VectorField& field);

struct StokesMaps {
    GridSpec grid;
    std::vector<double> s0;
    std::vector<double> s1;
    std::vector<double> s2;
    std::vector<double> s3;

    /// Pointwise sqrt(s1^2 + s2^2 + s3^2) / s0; 0 where s0 == 0.
    std::vector<double> degree_of_polarization() const;
};

/// s0 = |e_h|^2 + |e_v|^2, s1 = |e_h|^2 - |e_v|^2,
/// s2 = 2 Re(e_h* e_v), s3 = 2 Im(e_h* e_v).
StokesMaps stokes_maps(const VectorField& field);

struct GlobalStokes {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double degree_of_polarization = 0.0;
};

/// Area-integrated Stokes vector. Throws std::domain_error for a field
/// with zero power.
GlobalStokes global_stokes(const VectorField& field);

}  // namespace lumenbell
