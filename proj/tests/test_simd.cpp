#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kinhom/core/rng.hpp"
#include "kinhom/core/simd.hpp"

using namespace kinhom;

namespace {
std::vector<double> random_vec(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}
} // namespace

TEST_CASE("active kernel set matches the scalar reference") {
    const auto& ref = simd::scalar();
    const auto& act = simd::active();
    Rng rng(7);

    // Odd lengths exercise the tails.
    for (std::size_t n : {1u, 3u, 4u, 7u, 16u, 63u, 64u, 1025u, 4096u}) {
        auto x = random_vec(rng, n);
        auto y = random_vec(rng, n);
        auto z = random_vec(rng, n);

        const double tol = 1e-13 * static_cast<double>(n);
        CHECK(act.sum(x.data(), n) == doctest::Approx(ref.sum(x.data(), n)).epsilon(tol));
        CHECK(act.dot(x.data(), y.data(), n) ==
              doctest::Approx(ref.dot(x.data(), y.data(), n)).epsilon(tol));
        CHECK(act.triple_dot(x.data(), y.data(), z.data(), n) ==
              doctest::Approx(ref.triple_dot(x.data(), y.data(), z.data(), n)).epsilon(tol));

        auto y1 = y, y2 = y;
        ref.axpy(0.37, x.data(), y1.data(), n);
        act.axpy(0.37, x.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-14));

        std::vector<double> m1(n), m2(n);
        ref.mul(x.data(), y.data(), m1.data(), n);
        act.mul(x.data(), y.data(), m2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(m2[i] == m1[i]);

        auto k1 = random_vec(rng, n), k2 = random_vec(rng, n);
        auto k3 = random_vec(rng, n), k4 = random_vec(rng, n);
        std::vector<double> r1(n), r2(n);
        ref.rk4_combine(x.data(), k1.data(), k2.data(), k3.data(), k4.data(), 0.1, 0.2,
                        0.2, 0.1, r1.data(), n);
        act.rk4_combine(x.data(), k1.data(), k2.data(), k3.data(), k4.data(), 0.1, 0.2,
                        0.2, 0.1, r2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(r2[i] == doctest::Approx(r1[i]).epsilon(1e-14));
    }
}

TEST_CASE("triple_dot is symmetric in its last two arguments bit for bit") {
    Rng rng(11);
    const std::size_t n = 513;
    auto x = random_vec(rng, n);
    auto y = random_vec(rng, n);
    auto z = random_vec(rng, n);
    const auto& act = simd::active();
    CHECK(act.triple_dot(x.data(), y.data(), z.data(), n) ==
          act.triple_dot(x.data(), z.data(), y.data(), n));
}

TEST_CASE("reductions are deterministic across repeated calls") {
    Rng rng(3);
    auto x = random_vec(rng, 10007);
    const auto& act = simd::active();
    const double a = act.sum(x.data(), x.size());
    const double b = act.sum(x.data(), x.size());
    CHECK(a == b);
}

TEST_CASE("sum of known series") {
    std::vector<double> x(1000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 1.0 / (1.0 + i);
    const double expected = [&] {
        double s = 0;
        for (double v : x) s += v;
        return s;
    }();
    CHECK(simd::active().sum(x.data(), x.size()) ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(simd::active_isa().size() > 0);
}
