#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lumenbell/fields.hpp"
#include "test_support.hpp"

using namespace lumenbell;
using namespace lbtest;
using doctest::Approx;

namespace {

const GridSpec kGrid{};  // n = 256, half_extent = 5, waist = 1

// Unnormalized closed forms evaluated directly at grid points.
double gauss(double x, double y) { return std::exp(-(x * x + y * y)); }

}  // namespace

TEST_CASE("grid validation") {
    CHECK_NOTHROW(kGrid.validate());
    CHECK_THROWS_AS((GridSpec{15, 5.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{14, 5.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{64, 2.5, 1.0}.validate()), std::invalid_argument);
    CHECK(kGrid.coord(0) == Approx(-5.0 + 5.0 / 256));
    CHECK(kGrid.coord(0) == Approx(-kGrid.coord(255)));
}

TEST_CASE("mode orthonormality at the default grid") {
    const ScalarField p = eval_mode(ModeLabel::lg_p1, kGrid);
    const ScalarField m = eval_mode(ModeLabel::lg_m1, kGrid);
    CHECK(std::abs(overlap(p, p) - 1.0) < 1e-9);
    CHECK(std::abs(overlap(m, m) - 1.0) < 1e-9);
    CHECK(std::abs(overlap(p, m)) < 1e-9);
    CHECK(std::abs(overlap(p, eval_mode(ModeLabel::hg10, kGrid)) - 1.0 / rt2) < 1e-6);
    CHECK(std::abs(overlap(eval_mode(ModeLabel::hg10, kGrid), eval_mode(ModeLabel::hg01, kGrid))) < 1e-9);
}

TEST_CASE("LG profile matches the closed form") {
    const ScalarField p = eval_mode(ModeLabel::lg_p1, kGrid);
    // N = sqrt(2/pi) for sqrt2 r e^{-r^2} e^{i phi} with unit waist.
    const double n = std::sqrt(2.0 / pi);
    double worst = 0.0;
    for (int r = 0; r < kGrid.n; r += 7) {
        for (int c = 0; c < kGrid.n; c += 5) {
            const double x = kGrid.coord(c), y = kGrid.coord(r);
            const C want = n * rt2 * C(x, y) * gauss(x, y);
            worst = std::max(worst, std::abs(p.at(r, c) - want));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("rotated modes") {
    CHECK(std::abs(overlap(eval_rotated_mode(Degrees(0), kGrid), eval_mode(ModeLabel::hg10, kGrid))) ==
          Approx(1.0).epsilon(1e-9));
    for (auto [a, b] : {std::pair{0.0, 30.0}, {45.0, 135.0}, {10.0, 80.0}, {-20.0, 170.0}}) {
        const C ip = overlap(eval_rotated_mode(Degrees(a), kGrid), eval_rotated_mode(Degrees(b), kGrid));
        CHECK(std::abs(ip - std::cos(rad(b - a))) < 1e-6);
    }
    // HG10 lobes lie on the x axis: |L_0|^2 vanishes on the y axis.
    const ScalarField hg = eval_mode(ModeLabel::hg10, kGrid);
    CHECK(std::abs(hg.at(kGrid.n / 2 + 20, kGrid.n / 2)) < std::abs(hg.at(kGrid.n / 2, kGrid.n / 2 + 20)) * 0.1);
}

TEST_CASE("overlap") {
    const ScalarField a = eval_mode(ModeLabel::lg_p1, kGrid);
    const ScalarField b = eval_rotated_mode(Degrees(25), kGrid);
    CHECK(std::abs(overlap(a, b) - std::conj(overlap(b, a))) < 1e-15);
    const C k(0, 2);
    CHECK(std::abs(overlap(a, k * b) - k * overlap(a, b)) < 1e-14);
    CHECK(std::abs(overlap(k * a, b) - std::conj(k) * overlap(a, b)) < 1e-14);
    CHECK_THROWS_AS(overlap(a, eval_mode(ModeLabel::lg_p1, GridSpec{64, 5.0, 1.0})), std::invalid_argument);
}

TEST_CASE("synthesize") {
    const VectorField hr = synthesize(bell_state(BellKind::scalar_hr), kGrid);
    CHECK(hr.e_v.norm_squared() == 0.0);
    CHECK(std::abs(overlap(hr.e_h, eval_mode(ModeLabel::lg_p1, kGrid)) - 1.0) < 1e-9);

    const VectorField v = synthesize(bell_state(BellKind::hr_vl), kGrid);
    CHECK(v.e_h.norm_squared() == Approx(0.5).epsilon(1e-9));
    CHECK(v.e_v.norm_squared() == Approx(0.5).epsilon(1e-9));
    CHECK(v.power() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("decompose") {
    const auto hh = decompose(synthesize(bell_state(BellKind::hh_vv), kGrid), Degrees(0));
    CHECK(std::abs(hh[0]) == Approx(1.0 / rt2).epsilon(1e-9));
    CHECK(std::abs(hh[1]) < 1e-9);
    CHECK(std::abs(hh[2]) < 1e-9);
    CHECK(std::abs(hh[3]) == Approx(1.0 / rt2).epsilon(1e-9));

    const VectorField hr = synthesize(bell_state(BellKind::scalar_hr), kGrid);
    for (double t : {0.0, 17.0, 45.0, 90.0, 133.0}) {
        const auto d = decompose(hr, Degrees(t));
        CHECK(std::norm(d[0]) == Approx(0.5).epsilon(1e-9));
        CHECK(std::norm(d[1]) == Approx(0.5).epsilon(1e-9));
    }
    const auto z = decompose(VectorField::zeros(kGrid), Degrees(10));
    for (const C& c : z) CHECK(c == C(0.0));
}

TEST_CASE("decompose agrees with the rotated-basis algebra") {
    reseed(31);
    for (int i = 0; i < 50; ++i) {
        const PureState psi = random_state();
        const VectorField f = synthesize(psi, kGrid);
        const PureState back = project_to_state(f);
        CHECK(fidelity(back, psi) >= 1 - 1e-9);
        for (int k = 0; k <= 18; ++k) {
            const double t = 10.0 * k;
            const auto d = decompose(f, Degrees(t));
            const auto e = express_in_rotated_bases(psi, Degrees(0), Degrees(t));
            double total = 0.0;
            for (int j = 0; j < 4; ++j) {
                CHECK(std::abs(d[j] - e[j]) < 1e-6);
                total += std::norm(d[j]);
            }
            CHECK(total == Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("decompose loses power outside the first-order subspace") {
    const ScalarField g = eval_mode(ModeLabel::gaussian, kGrid);
    const VectorField f = VectorField::polarized(g, {1.0, 0.0});
    const auto d = decompose(f, Degrees(0));
    double total = 0.0;
    for (const C& c : d) total += std::norm(c);
    CHECK(total < 1e-9);
    CHECK_THROWS_AS(project_to_state(f), std::domain_error);
}

TEST_CASE("stokes maps") {
    const ScalarField g = eval_mode(ModeLabel::gaussian, kGrid);
    const StokesMaps h = stokes_maps(VectorField::polarized(g, {1.0, 0.0}));
    for (std::size_t i = 0; i < h.s0.size(); i += 97) {
        CHECK(h.s1[i] == h.s0[i]);
        CHECK(h.s2[i] == 0.0);
        CHECK(h.s3[i] == 0.0);
    }

    // e_h* e_v = f(r)^2 e^{-2 i phi} for (hR + vL)/sqrt2.
    const StokesMaps v = stokes_maps(synthesize(bell_state(BellKind::hr_vl), kGrid));
    double worst = 0.0;
    for (int r = 0; r < kGrid.n; r += 3) {
        for (int c = 0; c < kGrid.n; c += 3) {
            const std::size_t i = static_cast<std::size_t>(r * kGrid.n + c);
            const double phi = std::atan2(kGrid.coord(r), kGrid.coord(c));
            worst = std::max({worst, std::abs(v.s1[i]), std::abs(v.s2[i] - v.s0[i] * std::cos(2 * phi)),
                              std::abs(v.s3[i] + v.s0[i] * std::sin(2 * phi))});
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("pure vector fields are fully polarized pointwise") {
    reseed(32);
    const GridSpec g{64, 5.0, 1.0};
    for (int k = 0; k < 10; ++k) {
        const StokesMaps m = stokes_maps(synthesize(random_state(), g));
        for (std::size_t i = 0; i < m.s0.size(); ++i) {
            const double p2 = m.s1[i] * m.s1[i] + m.s2[i] * m.s2[i] + m.s3[i] * m.s3[i];
            CHECK(std::abs(p2 - m.s0[i] * m.s0[i]) < 1e-9);
        }
    }
}

TEST_CASE("global stokes") {
    const GlobalStokes v = global_stokes(synthesize(bell_state(BellKind::hr_vl), kGrid));
    CHECK(v.s0 == Approx(1.0).epsilon(1e-9));
    CHECK(v.degree_of_polarization <= 1e-6);
    CHECK(global_stokes(synthesize(bell_state(BellKind::scalar_hr), kGrid)).degree_of_polarization >= 1 - 1e-9);
    CHECK_THROWS_AS(global_stokes(VectorField::zeros(kGrid)), std::domain_error);
}

TEST_CASE("concurrence equals sqrt(1 - DoP^2)") {
    reseed(33);
    for (int k = 0; k < 30; ++k) {
        const PureState psi = random_state();
        const double dop = global_stokes(synthesize(psi, kGrid)).degree_of_polarization;
        CHECK(std::abs(concurrence(psi) - std::sqrt(std::max(0.0, 1 - dop * dop))) < 1e-6);
    }
}

TEST_CASE("global DoP along a non-separable to separable path is monotone") {
    // cos(a)|hR> + sin(a)|vL>: DoP = |cos 2a| decreases as a goes 0 -> 45 deg.
    double prev = 2.0;
    for (int k = 0; k <= 9; ++k) {
        const double a = rad(5.0 * k);
        const PureState psi = PureState::from_amplitudes(std::cos(a), 0.0, 0.0, std::sin(a));
        const double dop = global_stokes(synthesize(psi, kGrid)).degree_of_polarization;
        CHECK(dop == Approx(std::abs(std::cos(2 * a))).epsilon(1e-6));
        CHECK(dop <= prev + 1e-12);
        prev = dop;
    }
}
