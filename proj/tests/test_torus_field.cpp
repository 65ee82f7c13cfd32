#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kinhom/core/rng.hpp"
#include "kinhom/torus/interp.hpp"
#include "kinhom/torus/spectral.hpp"
#include "kinhom/twoscale/pairing.hpp"

using namespace kinhom;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

PeriodicField random_band_limited(const TorusGrid& g, int kmax, Rng& rng) {
    // Real trigonometric polynomial with modes |k_i| <= kmax.
    std::vector<std::array<double, 3>> modes; // k0, k1, phase
    std::vector<double> amps;
    for (int k1 = -kmax; k1 <= kmax; ++k1)
        for (int k0 = -kmax; k0 <= kmax; ++k0) {
            if (k0 == 0 && k1 == 0) continue;
            modes.push_back({double(k0), double(k1), rng.uniform(0.0, 1.0)});
            amps.push_back(rng.gaussian() / (1.0 + k0 * k0 + k1 * k1));
        }
    return PeriodicField::sample(g, [&](double v0, double v1) {
        double s = 0;
        for (std::size_t m = 0; m < modes.size(); ++m)
            s += amps[m] * std::cos(kTwoPi * (modes[m][0] * v0 + modes[m][1] * v1 +
                                              modes[m][2]));
        return s;
    });
}
} // namespace

TEST_CASE("constant integrates to itself") {
    for (int n : {8, 16, 64}) {
        auto f = PeriodicField::constant(TorusGrid(n, n), 3.25);
        CHECK(integrate_torus_scalar(f) == doctest::Approx(3.25).epsilon(1e-15));
    }
    auto f1 = PeriodicField::constant(TorusGrid(16), -2.0);
    CHECK(integrate_torus_scalar(f1) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("zero-mean harmonic integrates to zero") {
    auto f = PeriodicField::sample(TorusGrid(64),
                                   [](double v, double) { return std::sin(kTwoPi * v); });
    CHECK(std::abs(integrate_torus_scalar(f)) < 1e-14);
}

TEST_CASE("sin^2 integrates to one half") {
    auto f = PeriodicField::sample(TorusGrid(64, 64), [](double v0, double) {
        const double s = std::sin(kTwoPi * v0);
        return s * s;
    });
    CHECK(integrate_torus_scalar(f) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("quadrature kills pure harmonics below Nyquist") {
    TorusGrid g(32, 32);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        int k0 = static_cast<int>(rng.uniform(-15, 16));
        int k1 = static_cast<int>(rng.uniform(-15, 16));
        if (k0 == 0 && k1 == 0) k0 = 1;
        const double phase = rng.uniform(0.0, 1.0);
        auto f = PeriodicField::sample(g, [&](double v0, double v1) {
            return std::cos(kTwoPi * (k0 * v0 + k1 * v1 + phase));
        });
        CHECK(std::abs(integrate_torus_scalar(f)) < 1e-13);
    }
}

TEST_CASE("spectral gradient of a constant is zero") {
    auto f = PeriodicField::constant(TorusGrid(16, 16), 4.0);
    auto grad = spectral_gradient(f);
    CHECK(grad.rank() == 2);
    CHECK(grad.max_abs() < 1e-13);
}

TEST_CASE("spectral gradient analytic oracle") {
    TorusGrid g(64, 64);
    auto f = PeriodicField::sample(g, [](double v0, double) { return std::sin(kTwoPi * v0); });
    auto grad = spectral_gradient(f);
    double worst0 = 0, worst1 = 0;
    for (int j1 = 0; j1 < 64; ++j1)
        for (int j0 = 0; j0 < 64; ++j0) {
            const double v0 = j0 / 64.0;
            worst0 = std::max(worst0, std::abs(grad.at(0, j0, j1) -
                                               kTwoPi * std::cos(kTwoPi * v0)));
            worst1 = std::max(worst1, std::abs(grad.at(1, j0, j1)));
        }
    CHECK(worst0 < 1e-12);
    CHECK(worst1 < 1e-12); // derivative in the independent direction is 0
}

TEST_CASE("divergence of a shear flow vanishes") {
    TorusGrid g(32, 32);
    auto a = PeriodicField::sample_vector(g, [](double, double v1) {
        return std::array<double, 2>{std::sin(kTwoPi * v1), 0.0};
    });
    CHECK(divergence_v(a).max_abs() < 1e-12);
}

TEST_CASE("perpendicular gradient fields are divergence free") {
    TorusGrid g(64, 64);
    // a = perp grad xi for xi = cos cos
    auto a = PeriodicField::sample_vector(g, [](double v0, double v1) {
        const double dxi0 = -kTwoPi * std::sin(kTwoPi * v0) * std::cos(kTwoPi * v1);
        const double dxi1 = -kTwoPi * std::cos(kTwoPi * v0) * std::sin(kTwoPi * v1);
        return std::array<double, 2>{-dxi1, dxi0};
    });
    CHECK(divergence_v(a).max_abs() < 1e-12);
}

TEST_CASE("divergence analytic oracle") {
    TorusGrid g(64, 64);
    auto a = PeriodicField::sample_vector(g, [](double v0, double) {
        return std::array<double, 2>{std::sin(kTwoPi * v0), 0.0};
    });
    auto div = divergence_v(a);
    double worst = 0;
    for (int j1 = 0; j1 < 64; ++j1)
        for (int j0 = 0; j0 < 64; ++j0)
            worst = std::max(worst, std::abs(div.at(0, j0, j1) -
                                             kTwoPi * std::cos(kTwoPi * j0 / 64.0)));
    CHECK(worst < 1e-12);
}

TEST_CASE("advective derivative") {
    TorusGrid g(32, 32);
    auto f_const = PeriodicField::constant(g, 2.0);
    auto a = PeriodicField::sample_vector(
        g, [](double, double) { return std::array<double, 2>{1.0, 0.0}; });
    CHECK(advective_derivative(a, f_const).max_abs() < 1e-13);

    auto f = PeriodicField::sample(g, [](double v0, double) { return std::sin(kTwoPi * v0); });
    auto adv = advective_derivative(a, f);
    double worst = 0;
    for (int j1 = 0; j1 < 32; ++j1)
        for (int j0 = 0; j0 < 32; ++j0)
            worst = std::max(worst, std::abs(adv.at(0, j0, j1) -
                                             kTwoPi * std::cos(kTwoPi * j0 / 32.0)));
    CHECK(worst < 1e-12);

    // Shear velocity annihilates profiles of v1 alone.
    auto shear = PeriodicField::sample_vector(g, [](double, double v1) {
        return std::array<double, 2>{std::sin(kTwoPi * v1) + 2.0, 0.0};
    });
    auto psi = PeriodicField::sample(g, [](double, double v1) { return std::cos(kTwoPi * v1); });
    CHECK(advective_derivative(shear, psi).max_abs() < 1e-12);
}

TEST_CASE("Parseval holds for random band-limited fields") {
    Rng rng(42);
    TorusGrid g(32, 32);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_band_limited(g, 6, rng);
        CHECK(parseval_defect(f) < 1e-12);
    }
}

TEST_CASE("gradient commutes with refinement on band-limited fields") {
    Rng rng(9);
    TorusGrid coarse(16, 16), fine(32, 32);
    auto f = random_band_limited(coarse, 5, rng);
    auto grad_then_refine = refine(spectral_gradient(f), fine);
    auto refine_then_grad = spectral_gradient(refine(f, fine));
    auto diff = grad_then_refine - refine_then_grad;
    CHECK(diff.max_abs() < 1e-10);
}

TEST_CASE("spline interpolation reproduces smooth fields to fourth order") {
    TorusGrid g(64, 64);
    auto f = PeriodicField::sample(g, [](double v0, double v1) {
        return std::sin(kTwoPi * v0) * std::cos(kTwoPi * v1);
    });
    SplineInterp interp(f);
    Rng rng(17);
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
        const double v0 = rng.uniform(), v1 = rng.uniform();
        const double exact = std::sin(kTwoPi * v0) * std::cos(kTwoPi * v1);
        worst = std::max(worst, std::abs(interp.eval(0, v0, v1) - exact));
    }
    CHECK(worst < 5e-6); // (1/64)^4 * (2 pi)^4 scale

    // Exact at the nodes.
    CHECK(interp.eval(0, 5.0 / 64, 9.0 / 64) ==
          doctest::Approx(f.at(0, 5, 9)).epsilon(1e-12));
}

TEST_CASE("spectral point evaluation is exact for band-limited fields") {
    TorusGrid g(16, 16);
    auto f = PeriodicField::sample(g, [](double v0, double v1) {
        return std::cos(kTwoPi * (2 * v0 - v1));
    });
    SpectralEval ev(f);
    CHECK(ev.eval(0, 0.123, 0.456) ==
          doctest::Approx(std::cos(kTwoPi * (2 * 0.123 - 0.456))).epsilon(1e-12));
}

TEST_CASE("two-scale field storage and norms") {
    BoxGrid xg(0.0, 1.0, 8);
    TorusGrid vg(8);
    auto f = TwoScaleField::sample(xg, vg, [](Pt, Pt) { return 2.0; });
    CHECK(f.l2_norm() == doctest::Approx(2.0).epsilon(1e-14));
}
