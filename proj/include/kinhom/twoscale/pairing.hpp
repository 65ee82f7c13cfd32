#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "kinhom/harness/report.hpp"
#include "kinhom/torus/field.hpp"

namespace kinhom {

using Pt = std::array<double, 2>;

/// Smooth test function theta(x, v), periodic in v (and w for the triple
/// scale variant).  vmean, when provided, is the analytic v-average of
/// theta at fixed x; otherwise it is computed by torus quadrature.
struct TestFunction {
    std::function<double(Pt, Pt)> xv;
    std::function<double(Pt, Pt, Pt)> xvw; // optional, triple-scale
    std::function<double(Pt)> vmean;       // optional
    // optional tensor structure theta = sep_x(x) * sep_v(v); fast paths use it
    std::function<double(Pt)> sep_x;
    std::function<double(Pt)> sep_v;
    bool compact_support = true;

    static TestFunction tensor(std::function<double(Pt)> xf,
                               std::function<double(Pt)> vf, double vf_mean) {
        TestFunction t;
        t.xv = [xf, vf](Pt x, Pt v) { return xf(x) * vf(v); };
        t.vmean = [xf, vf_mean](Pt x) { return xf(x) * vf_mean; };
        t.sep_x = xf;
        t.sep_v = vf;
        return t;
    }
};

/// frac(x / eps) per axis, computed by reducing the argument before the
/// scaling so small eps does not shed the fractional bits.
inline double reduce_mod(double x, double eps) {
    double r = std::fmod(x, eps);
    if (r < 0.0) r += eps;
    double v = r / eps;
    if (v >= 1.0) v -= 1.0;
    return v;
}
inline Pt reduce_mod(Pt x, double eps, int dim) {
    return {reduce_mod(x[0], eps), dim == 2 ? reduce_mod(x[1], eps) : 0.0};
}

/// Quadrature of a callable over the box (trapezoid on periodic boxes,
/// midpoint on compact-support boxes; both superalgebraic for the smooth
/// integrands used here).
double box_quadrature(const BoxGrid& box, const std::function<double(Pt)>& f);

void require_resolves(const BoxGrid& box, double scale);

/// <u_eps delta_p(v - x/eps), theta> = integral of u(x) theta(x, x/eps mod 1).
double two_scale_pairing(const BoxGrid& box, const std::function<double(Pt)>& u,
                         const TestFunction& theta, double eps);
double two_scale_pairing(const BoxGrid& box, const std::vector<double>& u_samples,
                         const TestFunction& theta, double eps);

/// Triple-scale pairing: integral of u(x) theta(x, x/eps, x/eps^2).
double triple_scale_pairing(const BoxGrid& box, const std::function<double(Pt)>& u,
                            const TestFunction& theta, double eps);

/// eps^{-1} [ integral u theta(x, x/eps) - double integral u theta(x,v) ].
double corrector_pairing(const BoxGrid& box, const std::function<double(Pt)>& u,
                         const TestFunction& theta, double eps);
double corrector_pairing(const BoxGrid& box, const std::vector<double>& u_samples,
                         const TestFunction& theta, double eps);

/// Decorrelation of oscillations at scales eps and eps*delta(eps):
/// rows carry integral theta(x) a(x/eps) b(x/(eps delta)) against the
/// product of means.  delta must decay with eps; if it does not, the report
/// is flagged (the scales collide and the product limit fails).
ConvergenceReport verify_noncorrelation(const PeriodicField& a, const PeriodicField& b,
                                        const std::function<double(double)>& theta_x,
                                        double x_lo, double x_hi,
                                        const std::vector<double>& eps_list,
                                        const std::function<double(double)>& delta_of_eps);

} // namespace kinhom
