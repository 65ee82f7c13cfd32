#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kinhom/hyperbolic/moments.hpp"
#include "kinhom/hyperbolic/transport.hpp"
#include "kinhom/torus/spectral.hpp"

using namespace kinhom;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double periodic_bump(double s) { // smooth 1-periodic, mean not zero
    return std::exp(std::cos(kTwoPi * s));
}

TransportProblem make_problem(PeriodicField a, std::function<double(Pt, Pt)> u0,
                              double T) {
    TransportProblem p;
    p.a_torus = std::move(a);
    p.U0 = std::move(u0);
    p.box = BoxGrid({0.0, 0.0}, {1.0, 1.0}, {64, 64}, true);
    p.T_final = T;
    return p;
}
} // namespace

TEST_CASE("zero velocity keeps the data frozen") {
    TorusGrid vg(16, 16);
    auto u0 = [](Pt x, Pt v) {
        return std::sin(kTwoPi * x[0]) + 0.2 * std::cos(kTwoPi * v[0]);
    };
    auto p = make_problem(PeriodicField(vg, 2), u0, 1.0);
    const double eps = 1.0 / 8;
    OscillatorySolver solver(p, eps);
    auto snaps = solver.solve({0.25, 1.0});
    // compare against the t = 0 samples
    const BoxGrid& box = p.box;
    double worst = 0;
    for (int i1 = 0; i1 < box.n[1]; ++i1)
        for (int i0 = 0; i0 < box.n[0]; ++i0) {
            const Pt x = box.node(i0, i1);
            const double init = u0(x, reduce_mod(x, eps, 2));
            worst = std::max(worst, std::abs(snaps[1].u[box.index(i0, i1)] - init));
        }
    CHECK(worst < 1e-13);
}

TEST_CASE("constant velocity translates the oscillating data") {
    TorusGrid vg(16, 16);
    const double c0 = 1.0, c1 = 0.5;
    auto a = PeriodicField::sample_vector(
        vg, [&](double, double) { return std::array<double, 2>{c0, c1}; });
    auto u0 = [](Pt x, Pt v) {
        return std::cos(kTwoPi * x[0]) * periodic_bump(v[0]) + 0.3 * std::sin(kTwoPi * v[1]);
    };
    auto p = make_problem(a, u0, 0.5);
    const double eps = 1.0 / 8;
    OscillatorySolver solver(p, eps);
    const double t = 0.5;
    auto snaps = solver.solve({t});
    // translation oracle: u(t,x) = U0(x - c t, (x - c t)/eps)
    const BoxGrid& box = p.box;
    double worst = 0;
    for (int i1 = 0; i1 < box.n[1]; ++i1)
        for (int i0 = 0; i0 < box.n[0]; ++i0) {
            Pt x = box.node(i0, i1);
            Pt foot = {x[0] - c0 * t, x[1] - c1 * t};
            const double expected = u0(foot, reduce_mod(foot, eps, 2));
            worst = std::max(worst, std::abs(snaps[0].u[box.index(i0, i1)] - expected));
        }
    CHECK(worst < 1e-9);
    // exactly one torus class per distinct x/eps residue on this grid
    CHECK(solver.class_count() == 64);
}

TEST_CASE("discrete L2 norm is conserved") {
    TorusGrid vg(32, 32);
    auto shear = PeriodicField::sample_vector(vg, [](double, double v1) {
        return std::array<double, 2>{2.0 + std::sin(kTwoPi * v1), 0.0};
    });
    auto u0 = [](Pt x, Pt v) {
        return std::sin(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]) *
               (1.0 + 0.5 * std::sin(kTwoPi * v[0]));
    };
    auto p = make_problem(shear, u0, 1.0);
    OscillatorySolver solver(p, 1.0 / 8);
    auto snaps = solver.solve({0.0, 0.3, 1.0});
    for (const auto& s : snaps)
        CHECK(std::abs(s.l2 - snaps[0].l2) / snaps[0].l2 < 1e-6);
}

TEST_CASE("effective kinetic solution: ergodic case collapses to the mean") {
    TorusGrid vg(16, 16);
    const double c0 = 1.0, c1 = 0.41333333333333333;
    auto abar = PeriodicField::sample_vector(
        vg, [&](double, double) { return std::array<double, 2>{c0, c1}; });
    // PU0 = phi(x) * mean(psi): constant v-part
    auto phi = [](Pt x) { return std::sin(kTwoPi * x[0]); };
    auto vpart = PeriodicField::constant(vg, 0.7);
    BoxGrid quad({0.0, 0.0}, {1.0, 1.0}, {64, 64}, true);
    EffectiveKineticSolution eff(phi, vpart, abar, quad);

    const double t = 0.37;
    auto u = eff.u_on_grid(t, quad);
    double worst = 0;
    for (int i1 = 0; i1 < quad.n[1]; ++i1)
        for (int i0 = 0; i0 < quad.n[0]; ++i0) {
            const Pt x = quad.node(i0, i1);
            const double expected = 0.7 * std::sin(kTwoPi * (x[0] - c0 * t));
            worst = std::max(worst, std::abs(u[quad.index(i0, i1)] - expected));
        }
    CHECK(worst < 1e-12);
    CHECK(eff.mass(0.0) == doctest::Approx(eff.mass(t)).epsilon(1e-13));
}

TEST_CASE("effective kinetic solution: shear transports per slice") {
    TorusGrid vg(16, 16);
    auto abar = PeriodicField::sample_vector(vg, [](double, double v1) {
        return std::array<double, 2>{2.0 + std::sin(kTwoPi * v1), 0.0};
    });
    auto phi = [](Pt x) { return std::cos(kTwoPi * x[1]); };
    auto vpart = PeriodicField::sample(vg, [](double, double v1) {
        return 1.0 + 0.5 * std::cos(kTwoPi * v1);
    });
    BoxGrid quad({0.0, 0.0}, {1.0, 1.0}, {48, 48}, true);
    EffectiveKineticSolution eff(phi, vpart, abar, quad);
    // constant profile stays constant in time
    auto vconst = PeriodicField::constant(vg, 1.3);
    EffectiveKineticSolution effc([](Pt) { return 1.0; }, vconst, abar, quad);
    auto u0 = effc.u_on_grid(0.0, quad);
    auto u1 = effc.u_on_grid(0.9, quad);
    for (std::size_t i = 0; i < u0.size(); ++i)
        CHECK(u1[i] == doctest::Approx(1.3).epsilon(1e-12));

    // the solution profile stays inside the kernel of the shear operator
    auto a = abar;
    CHECK(eff.kernel_residual(a) < 1e-10);
}

TEST_CASE("weak limit comparison: ergodic constant field") {
    TorusGrid vg(16, 16);
    const double r = 0.41333333333333333;
    auto a = PeriodicField::sample_vector(
        vg, [&](double, double) { return std::array<double, 2>{1.0, r}; });

    auto phi0 = [](Pt x) { return std::sin(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]); };
    auto psi0 = [](Pt v) { return 1.0 + 0.6 * std::sin(kTwoPi * v[0]); };

    TransportProblem p;
    p.a_torus = a;
    p.U0 = [=](Pt x, Pt v) { return phi0(x) * psi0(v); };
    p.box = BoxGrid({0.0, 0.0}, {1.0, 1.0}, {64, 64}, true);
    p.T_final = 0.5;

    // P is the v-mean; abar = a
    auto vpart = PeriodicField::constant(vg, 1.0); // mean of psi0
    BoxGrid quad({0.0, 0.0}, {1.0, 1.0}, {64, 64}, true);
    EffectiveKineticSolution eff(phi0, vpart, a, quad);

    std::vector<TestFunction> thetas = {
        TestFunction::tensor([](Pt x) { return std::sin(kTwoPi * x[0]); },
                             [](Pt v) { return 1.0 + std::sin(kTwoPi * v[0]); }, 1.0),
        TestFunction::tensor([](Pt x) { return std::cos(kTwoPi * x[1]); },
                             [](Pt v) { return std::cos(kTwoPi * v[1]); }, 0.0)};

    auto window = TimeWindow::bump(0.05, 0.45, 25);
    double drift = 0.0;
    auto reports = weak_limit_compare(p, eff, thetas, {1.0 / 8, 1.0 / 16, 1.0 / 32},
                                      window, &drift);
    CHECK(drift < 1e-6);
    for (const auto& rep : reports) {
        CHECK(rep.rows.size() == 3);
        CHECK(std::abs(rep.rows[2].value) < std::abs(rep.rows[0].value) + 1e-12);
        CHECK(std::abs(rep.extrapolated) < 2e-3);
    }
}

TEST_CASE("moment system: single-moment ergodic truncation is the mean speed") {
    TorusGrid vg(16, 16);
    auto a = PeriodicField::sample_vector(vg, [](double v0, double v1) {
        return std::array<double, 2>{1.5 + std::sin(kTwoPi * v0) * 0.0,
                                     0.25 + 0.0 * v1};
    });
    std::vector<PeriodicField> basis = {PeriodicField::constant(vg, 1.0)};
    auto sys = assemble_moment_system(basis, a, 1);
    CHECK(sys.coupling[0].at(0, 0) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(sys.coupling[1].at(0, 0) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("moment system: shear couplings are the Fourier data of the profile") {
    TorusGrid vg(8, 16);
    const double off = 2.0;
    auto a = PeriodicField::sample_vector(vg, [&](double, double v1) {
        return std::array<double, 2>{off + std::sin(kTwoPi * v1), 0.0};
    });
    // kernel basis: real Fourier modes in v1 (functions of v1 alone)
    std::vector<PeriodicField> basis;
    basis.push_back(PeriodicField::constant(vg, 1.0));
    const double s2 = std::sqrt(2.0);
    for (int m = 1; m <= 3; ++m) {
        basis.push_back(PeriodicField::sample(vg, [=](double, double v1) {
            return s2 * std::cos(kTwoPi * m * v1);
        }));
        basis.push_back(PeriodicField::sample(vg, [=](double, double v1) {
            return s2 * std::sin(kTwoPi * m * v1);
        }));
    }
    auto sys = assemble_moment_system(basis, a, 7);
    CHECK(sys.symmetry_defect == 0.0);
    // <b psi_n, psi_k> against quadrature oracle: b = off + sin, modes couple
    // to neighbours only.  <b*1, 1> = off; <b * s2 sin(2 pi v), 1> = s2/2.
    CHECK(sys.coupling[0].at(0, 0) == doctest::Approx(off).epsilon(1e-12));
    CHECK(sys.coupling[0].at(0, 2) == doctest::Approx(s2 / 2).epsilon(1e-12));
    CHECK(sys.coupling[0].at(2, 0) == doctest::Approx(s2 / 2).epsilon(1e-12));
    // transverse direction does not couple at all
    for (int k = 0; k < 7; ++k)
        for (int n = 0; n < 7; ++n)
            CHECK(std::abs(sys.coupling[1].at(k, n)) < 1e-13);
}

TEST_CASE("moment system symmetry for random divergence-free fields") {
    TorusGrid vg(16, 16);
    // perp-gradient of a random band-limited stream function
    auto a = PeriodicField::sample_vector(vg, [](double v0, double v1) {
        const double d0 = kTwoPi * (std::cos(kTwoPi * v0) * std::sin(kTwoPi * v1) +
                                    0.3 * std::cos(kTwoPi * (v0 + v1)));
        const double d1 = kTwoPi * (std::sin(kTwoPi * v0) * std::cos(kTwoPi * v1) +
                                    0.3 * std::cos(kTwoPi * (v0 + v1)));
        return std::array<double, 2>{-d1, d0};
    });
    auto kb = kernel_basis(a, 1e-8);
    const int M = std::min(4, kb.dimension());
    auto sys = assemble_moment_system(kb.basis, a, M);
    CHECK(sys.symmetry_defect < 1e-10);
}
