#include "kinhom/hyperbolic/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "kinhom/torus/interp.hpp"

namespace kinhom {

namespace {
double clamp01(double z) { return z <= 0.0 ? 0.0 : (z >= 1.0 ? 1.0 : z); }
} // namespace

Counterexample::Counterexample(std::function<double(Pt)> K, double k2_lo, double k2_hi,
                               std::function<double(double)> L)
    : K_(std::move(K)), k2_lo_(k2_lo), k2_hi_(k2_hi), L_(std::move(L)) {
    // The data envelope must live in the band x1 in [-1, -1/2].
    for (int i = 0; i <= 40; ++i) {
        const double x2 = k2_lo_ + (k2_hi_ - k2_lo_) * i / 40.0;
        for (double x1 : {-1.05, -0.45, 0.1, -1.6}) {
            if (std::abs(K_({x1, x2})) > 1e-12)
                throw HypothesisViolation("supp K in [-1,-1/2]", std::abs(K_({x1, x2})),
                                          x1, x2);
        }
    }
    // L has zero mean.
    double mean = 0.0;
    const int n = 4096;
    for (int i = 0; i < n; ++i) mean += L_((i + 0.5) / n);
    mean /= n;
    if (std::abs(mean) > 1e-10)
        throw HypothesisViolation("mean L = 0", std::abs(mean), 0.0, 0.0);
}

Pt Counterexample::velocity(Pt x) { return {1.0, clamp01(x[0])}; }

double Counterexample::ramp_primitive(double z) {
    if (z <= 0.0) return 0.0;
    if (z >= 1.0) return z - 0.5;
    return 0.5 * z * z;
}

Pt Counterexample::forward(Pt y, double t) {
    const double x1 = y[0] + t;
    return {x1, y[1] + ramp_primitive(x1) - ramp_primitive(y[0])};
}

Pt Counterexample::backward(Pt x, double t) {
    const double y1 = x[0] - t;
    return {y1, x[1] - ramp_primitive(x[0]) + ramp_primitive(y1)};
}

Pt Counterexample::forward_rk4(Pt y, double t, int steps_per_piece) {
    // The velocity is piecewise polynomial along trajectories (x1 = y1 + s);
    // stepping piecewise in s with breaks at the ramp edges keeps RK4 exact.
    std::vector<double> breaks = {0.0, t};
    const double t_enter = -y[0];     // x1 = 0
    const double t_exit = 1.0 - y[0]; // x1 = 1
    if (t_enter > 0.0 && t_enter < t) breaks.push_back(t_enter);
    if (t_exit > 0.0 && t_exit < t) breaks.push_back(t_exit);
    std::sort(breaks.begin(), breaks.end());

    Pt q = y;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double span = breaks[p + 1] - breaks[p];
        if (span <= 0.0) continue;
        const double h = span / steps_per_piece;
        for (int s = 0; s < steps_per_piece; ++s) {
            const Pt k1 = velocity(q);
            const Pt k2 = velocity({q[0] + 0.5 * h * k1[0], q[1] + 0.5 * h * k1[1]});
            const Pt k3 = velocity({q[0] + 0.5 * h * k2[0], q[1] + 0.5 * h * k2[1]});
            const Pt k4 = velocity({q[0] + h * k3[0], q[1] + h * k3[1]});
            q[0] += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
            q[1] += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        }
    }
    return q;
}

double Counterexample::ramp_exit_x2(Pt y) {
    if (y[0] < -1.0 || y[0] > -0.5)
        throw UnsupportedRegion("ramp_exit_x2 requires y1 in [-1,-1/2]");
    // crossing the ramp turns y2 into y2 + 1/2 regardless of y1
    return y[1] + 0.5;
}

double Counterexample::late_x2(Pt y, double t) {
    if (y[0] < -1.0 || y[0] > -0.5)
        throw UnsupportedRegion("late_x2 requires y1 in [-1,-1/2]");
    const double t_exit = 1.0 - y[0];
    if (t <= t_exit) throw UnsupportedRegion("late_x2 requires t > 1 - y1");
    const double x1 = y[0] + t;
    return y[1] + x1 - 0.5;
}

double Counterexample::solution(double t, Pt x, double eps) const {
    const Pt y = backward(x, t);
    return K_(y) * L_(reduce_mod(y[1], eps));
}

BoxGrid Counterexample::support_box(double t, double eps, double margin) const {
    // Image of the data support box under the flow, padded.
    const double x1_lo = -1.0 + t, x1_hi = -0.5 + t;
    double g_lo = 1e300, g_hi = -1e300;
    for (int i = 0; i <= 64; ++i) {
        const double y1 = -1.0 + 0.5 * i / 64.0;
        const double shift = ramp_primitive(y1 + t) - ramp_primitive(y1);
        g_lo = std::min(g_lo, shift);
        g_hi = std::max(g_hi, shift);
    }
    const double x2_lo = k2_lo_ + g_lo, x2_hi = k2_hi_ + g_hi;
    const double h_target = eps / 8.0;
    std::array<double, 2> lo = {x1_lo - margin, x2_lo - margin};
    std::array<double, 2> hi = {x1_hi + margin, x2_hi + margin};
    std::array<int, 2> n;
    for (int d = 0; d < 2; ++d)
        n[d] = std::max(16, static_cast<int>(std::ceil((hi[d] - lo[d]) / h_target)));
    return BoxGrid(lo, hi, n, false);
}

double Counterexample::predicted_pairing(const TestFunction& theta, double alpha,
                                         double t, int x_res, int v_res) const {
    // limit profile: K(x1 - t, x2 - x1 + 1/2) L(v2 - v1 + alpha)
    const double x1_lo = -1.0 + t - 0.05, x1_hi = -0.5 + t + 0.05;
    const double x2_lo = k2_lo_ + (t - 1.5) - 0.1, x2_hi = k2_hi_ + (t - 1.0) + 0.1;
    BoxGrid box({x1_lo, x2_lo}, {x1_hi, x2_hi}, {x_res, x_res}, false);

    if (theta.sep_x && theta.sep_v) {
        const double xq = box_quadrature(box, [&](Pt x) {
            return K_({x[0] - t, x[1] - x[0] + 0.5}) * theta.sep_x(x);
        });
        double vq = 0.0;
        for (int j1 = 0; j1 < v_res; ++j1)
            for (int j0 = 0; j0 < v_res; ++j0) {
                const Pt v = {double(j0) / v_res, double(j1) / v_res};
                vq += L_(wrap01(v[1] - v[0] + alpha)) * theta.sep_v(v);
            }
        return xq * vq / (static_cast<double>(v_res) * v_res);
    }

    double total = 0.0;
    for (int j1 = 0; j1 < v_res; ++j1)
        for (int j0 = 0; j0 < v_res; ++j0) {
            const Pt v = {double(j0) / v_res, double(j1) / v_res};
            const double lv = L_(wrap01(v[1] - v[0] + alpha));
            total += lv * box_quadrature(box, [&](Pt x) {
                return K_({x[0] - t, x[1] - x[0] + 0.5}) * theta.xv(x, v);
            });
        }
    return total / (static_cast<double>(v_res) * v_res);
}

ConvergenceReport Counterexample::subsequence_pairings(const TestFunction& theta,
                                                       double alpha, double t,
                                                       int n_lo, int n_hi) const {
    if (n_lo < 1 || n_hi < n_lo) throw Error("subsequence_pairings: bad index range");
    const bool late = t > 2.0;
    const double predicted = late ? predicted_pairing(theta, alpha, t) : 0.0;
    ConvergenceReport rep;
    rep.scenario = "counterexample";
    for (int n = n_lo; n <= n_hi; ++n) {
        const double eps = 1.0 / (2.0 * (n + alpha));
        BoxGrid box = support_box(t, eps);
        auto u = [&](Pt x) { return solution(t, x, eps); };
        rep.push(eps, two_scale_pairing(box, u, theta, eps), predicted);
    }
    rep.finalize();
    return rep;
}

} // namespace kinhom
