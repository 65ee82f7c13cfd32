#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kinhom/hyperbolic/counterexample.hpp"

using namespace kinhom;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double bump1(double s) { // smooth bump on (-1, 1)
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

Counterexample make_ce() {
    auto K = [](Pt x) {
        return bump1(4.0 * (x[0] + 0.75)) * bump1(4.0 * x[1]);
    }; // supp: x1 in [-1,-1/2], x2 in [-1/4,1/4]
    auto L = [](double s) { return std::sin(kTwoPi * s); };
    return Counterexample(K, -0.25, 0.25, L);
}
} // namespace

TEST_CASE("characteristics: first coordinate is uniform translation") {
    for (double y1 : {-0.9, -0.6}) {
        for (double t : {0.3, 1.2, 2.7}) {
            const auto x = Counterexample::forward({y1, 0.1}, t);
            CHECK(x[0] == doctest::Approx(y1 + t).epsilon(1e-15));
        }
    }
}

TEST_CASE("characteristics: ramp exit height gains exactly one half") {
    for (double y1 : {-1.0, -0.8, -0.5}) {
        const double t_exit = 1.0 - y1;
        const auto x = Counterexample::forward({y1, 0.2}, t_exit);
        CHECK(x[1] == doctest::Approx(0.2 + 0.5).epsilon(1e-14));
        CHECK(Counterexample::ramp_exit_x2({y1, 0.2}) ==
              doctest::Approx(0.7).epsilon(1e-14));
    }
    CHECK_THROWS_AS(Counterexample::ramp_exit_x2({0.3, 0.0}), UnsupportedRegion);
}

TEST_CASE("characteristics: late regime X2 = x2 + X1 - 1/2") {
    const Pt y = {-0.7, 0.05};
    const double t = 2.6;
    const auto x = Counterexample::forward(y, t);
    CHECK(x[1] == doctest::Approx(y[1] + x[0] - 0.5).epsilon(1e-14));
    CHECK(Counterexample::late_x2(y, t) == doctest::Approx(x[1]).epsilon(1e-15));
    CHECK_THROWS_AS(Counterexample::late_x2(y, 0.1), UnsupportedRegion);
}

TEST_CASE("backward inverts forward") {
    for (double y1 : {-0.95, -0.55}) {
        for (double t : {0.4, 1.3, 2.9}) {
            const Pt y = {y1, -0.13};
            const auto x = Counterexample::forward(y, t);
            const auto back = Counterexample::backward(x, t);
            CHECK(back[0] == doctest::Approx(y[0]).epsilon(1e-14));
            CHECK(back[1] == doctest::Approx(y[1]).epsilon(1e-14));
        }
    }
}

TEST_CASE("closed-form characteristics match RK4 traces") {
    double worst = 0;
    for (double y1 = -1.0; y1 <= -0.5 + 1e-9; y1 += 0.05)
        for (double y2 : {-0.2, 0.0, 0.15})
            for (double t : {0.8, 1.4, 2.5, 3.0}) {
                const auto exact = Counterexample::forward({y1, y2}, t);
                const auto num = Counterexample::forward_rk4({y1, y2}, t);
                worst = std::max(worst, std::max(std::abs(exact[0] - num[0]),
                                                 std::abs(exact[1] - num[1])));
            }
    CHECK(worst < 1e-8);
}

TEST_CASE("invalid data envelopes are rejected") {
    auto L = [](double s) { return std::sin(kTwoPi * s); };
    auto bad_K = [](Pt x) { return bump1(x[0]) * bump1(x[1]); }; // support hits x1 = 0
    CHECK_THROWS_AS(Counterexample(bad_K, -1.0, 1.0, L), HypothesisViolation);
    auto K = [](Pt x) { return bump1(4.0 * (x[0] + 0.75)) * bump1(4.0 * x[1]); };
    auto bad_L = [](double s) { return 0.2 + std::sin(kTwoPi * s); };
    CHECK_THROWS_AS(Counterexample(K, -0.25, 0.25, bad_L), HypothesisViolation);
}

TEST_CASE("mid regime: all subsequence limits vanish for zero-v-mean tests") {
    auto ce = make_ce();
    TestFunction theta;
    theta.xv = [](Pt x, Pt v) {
        return bump1(2.0 * (x[0] - 0.5)) * bump1(2.0 * (x[1] - 0.3)) *
               std::sin(kTwoPi * (v[1] - v[0]));
    };
    theta.sep_x = [](Pt x) { return bump1(2.0 * (x[0] - 0.5)) * bump1(2.0 * (x[1] - 0.3)); };
    theta.sep_v = [](Pt v) { return std::sin(kTwoPi * (v[1] - v[0])); };

    for (double alpha : {0.0, 0.5}) {
        auto rep = ce.subsequence_pairings(theta, alpha, 1.25, 8, 20);
        CHECK(std::abs(rep.extrapolated) < 1e-3);
        CHECK(std::abs(rep.rows.back().value) < 5e-4);
    }
}

TEST_CASE("late regime: the double-scale limit depends on the subsequence") {
    auto ce = make_ce();
    const double t = 2.5;
    // theta resolving v2 - v1, centered on the transported support
    auto xb = [t](Pt x) {
        return bump1(3.0 * (x[0] - (t - 0.75))) * bump1(2.0 * (x[1] - (t - 1.25)));
    };
    auto vb = [](Pt v) { return std::sin(kTwoPi * (v[1] - v[0])); };
    TestFunction theta = TestFunction::tensor(xb, vb, 0.0);

    double limit0 = 0.0, limit_half = 0.0;
    for (double alpha : {0.0, 0.25, 0.5}) {
        auto rep = ce.subsequence_pairings(theta, alpha, t, 5, 14);
        const double predicted = rep.rows[0].reference;
        CHECK(std::abs(rep.extrapolated - predicted) < 1e-3);
        if (alpha == 0.0) limit0 = predicted;
        if (alpha == 0.5) limit_half = predicted;
    }
    // the two phases flip the sign of the oscillation factor
    CHECK(std::abs(limit0 - limit_half) > 1e-2);
    CHECK(limit0 == doctest::Approx(-limit_half).epsilon(1e-6));

    // v-independent theta: every subsequence sees the weak limit, which is 0.
    TestFunction flat = TestFunction::tensor(xb, [](Pt) { return 1.0; }, 1.0);
    for (double alpha : {0.0, 0.5}) {
        auto rep = ce.subsequence_pairings(flat, alpha, t, 5, 12);
        CHECK(std::abs(rep.extrapolated) < 1e-3);
    }
}
