#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kinhom/kernel/projection.hpp"
#include "kinhom/twoscale/pairing.hpp"

namespace kinhom {

/// Oscillatory transport problem
///   d_t u + a . grad_x u = 0,  u(0,x) = U0(x, x/eps),
/// with either a = a(x/eps) built from a torus field (the homogenization
/// regime) or an eps-free Lipschitz a(x) (oscillating data only).
struct TransportProblem {
    std::optional<PeriodicField> a_torus;     // v-only velocity a(v)
    std::function<Pt(Pt)> a_x;                // used when a_torus is empty
    std::function<double(Pt, Pt)> U0;         // U0(x, v), 1-periodic in v
    BoxGrid box;
    double T_final = 1.0;
};

struct TransportSnapshot {
    double t = 0.0;
    std::vector<double> u; // samples on problem.box
    double l2 = 0.0;       // discrete L2 norm of the samples
};

/// Semi-Lagrangian solution by backward characteristics.
///
/// For a = a(x/eps) the backward foot of x depends on x only through
/// y = x/eps mod 1, so feet are integrated once per distinct y class on the
/// grid (the torus flow, at torus time t/eps) and reused across the class.
/// For a = a(x) the feet are traced pointwise; the data supplies the
/// oscillation.
class OscillatorySolver {
public:
    OscillatorySolver(const TransportProblem& problem, double eps,
                      double torus_step = 0.0, double x_step = 0.005);

    /// Snapshots at ascending times in [0, T_final].
    std::vector<TransportSnapshot> solve(const std::vector<double>& times);

    /// Streaming form: for each time, hand the sample buffer to the visitor
    /// and drop it (memory stays at one snapshot).
    void stream(const std::vector<double>& times,
                const std::function<void(const TransportSnapshot&)>& visit);

    int class_count() const { return static_cast<int>(class_y_.size()); }

private:
    void build_classes();
    const TransportProblem& p_;
    double eps_;
    double x_step_;
    std::optional<Characteristics> chars_; // v-only path
    std::vector<Pt> class_y_;              // distinct x/eps values (v-only path)
    std::vector<int> class_of_;            // class index per grid point
};

/// Effective kinetic transport f(t,x,v) = PU0(x - abar(v) t, v) for
/// separable data PU0 = xpart(x) * vpart(v); abar lies componentwise in the
/// kernel.  Transport per v-slice is exact (pure translation of the slice).
class EffectiveKineticSolution {
public:
    EffectiveKineticSolution(std::function<double(Pt)> xpart, PeriodicField vpart,
                             PeriodicField abar, BoxGrid quad_box);

    double eval(double t, Pt x, Pt v_node_value, std::size_t v_index) const;

    /// <f(t), theta> over box x torus.
    double pair(double t, const TestFunction& theta) const;

    /// u(t,x) = torus average of f at the nodes of `box`.
    std::vector<double> u_on_grid(double t, const BoxGrid& box) const;

    /// Total integral of f over box x torus (conserved by the transport).
    double mass(double t) const;

    /// max_v |a . grad_v slice profile|: the solution stays in the kernel.
    double kernel_residual(const PeriodicField& a) const;

    const PeriodicField& abar() const { return abar_; }

private:
    std::function<double(Pt)> xpart_;
    PeriodicField vpart_;
    PeriodicField abar_;
    BoxGrid quad_;
    // distinct abar values and the summed vpart weights per class
    std::vector<Pt> shift_of_class_;
    std::vector<std::vector<std::size_t>> members_;
};

/// Smooth time window for the weak-in-time comparison of pairings.
/// Nodes and weights of a bump-weighted quadrature with unit mass.
struct TimeWindow {
    std::vector<double> nodes;
    std::vector<double> weights;

    /// C-infinity bump on (t0, t1), n quadrature nodes.
    static TimeWindow bump(double t0, double t1, int n);
};

/// For each eps: the window-integrated deviation between the pairings of the
/// finite-eps solution and of the effective solution, one report per theta.
/// rows: value = signed deviation, reference = 0.
std::vector<ConvergenceReport> weak_limit_compare(
    const TransportProblem& problem, const EffectiveKineticSolution& effective,
    const std::vector<TestFunction>& thetas, const std::vector<double>& eps_list,
    const TimeWindow& window, double* l2_drift_worst = nullptr);

} // namespace kinhom
