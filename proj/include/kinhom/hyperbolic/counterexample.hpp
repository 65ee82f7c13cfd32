#pragma once

#include <functional>

#include "kinhom/twoscale/pairing.hpp"

namespace kinhom {

/// Transport with the x-dependent ramp velocity
///   a1 = 1,  a2 = 0 for x1 <= 0,  x1 on [0,1],  1 for x1 >= 1,
/// and oscillating initial data U0(x, v) = K(x) L(v2).  The double-scale
/// limit of the solution depends on the subsequence of eps: along
/// eps_n = 1/(2(n+alpha)) the limit is K(x1-t, x2-x1+1/2) L(v2-v1+alpha),
/// one distinct limit per alpha, although the weak limit of u itself is 0.
class Counterexample {
public:
    /// K: smooth bump with support inside x1 in [-1,-1/2] and x2 in
    /// [k2_lo, k2_hi]; L: 1-periodic, zero mean.  Both checked by sampling.
    Counterexample(std::function<double(Pt)> K, double k2_lo, double k2_hi,
                   std::function<double(double)> L);

    static Pt velocity(Pt x);
    /// Antiderivative of the clamped ramp a2.
    static double ramp_primitive(double z);
    /// Characteristics through y after time t (any regime, closed form).
    static Pt forward(Pt y, double t);
    /// Backward foot of x at time t.
    static Pt backward(Pt x, double t);
    /// RK4 trace split exactly at the regime crossings; cross-check of the
    /// closed form.
    static Pt forward_rk4(Pt y, double t, int steps_per_piece = 8);

    /// Regime formulas for feet in the data support band x1 in [-1,-1/2]:
    /// the second coordinate where the trajectory leaves the ramp, and its
    /// value in the late regime t > 1 - y1.  Outside their domain these
    /// raise UnsupportedRegion.
    static double ramp_exit_x2(Pt y);
    static double late_x2(Pt y, double t);

    /// Exact solution value at time t.
    double solution(double t, Pt x, double eps) const;

    /// Box (with margin) containing the support of u(t, .), spacing-aligned.
    BoxGrid support_box(double t, double eps, double margin = 0.05) const;

    /// Predicted double-scale limit paired against theta for phase alpha.
    double predicted_pairing(const TestFunction& theta, double alpha, double t,
                             int x_res = 96, int v_res = 48) const;

    /// Measured pairings along eps_n = 1/(2(n+alpha)), n = n_lo..n_hi,
    /// against the predicted limit.
    ConvergenceReport subsequence_pairings(const TestFunction& theta, double alpha,
                                           double t, int n_lo, int n_hi) const;

    const std::function<double(Pt)>& data_envelope() const { return K_; }
    const std::function<double(double)>& oscillation_profile() const { return L_; }

private:
    std::function<double(Pt)> K_;
    double k2_lo_, k2_hi_;
    std::function<double(double)> L_;
};

} // namespace kinhom
