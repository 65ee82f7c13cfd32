#pragma once

#include <memory>
#include <vector>

#include "kinhom/torus/field.hpp"
#include "kinhom/torus/interp.hpp"

namespace kinhom {

/// Flow map of a divergence-free velocity field on the torus,
/// v' = a(v), integrated with fixed-step RK4.  Off-grid values of a come
/// from a periodic cubic spline (default) or exact trigonometric evaluation.
class Characteristics {
public:
    enum class Interp { Cubic, Spectral };

    /// step = 0 picks min(grid spacing) / (4 max|a|).
    explicit Characteristics(PeriodicField a, double step = 0.0,
                             Interp interp = Interp::Cubic);

    const PeriodicField& field() const { return a_; }
    double step() const { return h_; }
    /// max |grad a| over components, recorded at construction.
    double lipschitz_bound() const { return lipschitz_; }
    double max_speed() const { return max_speed_; }

    /// Velocity at an arbitrary point.
    void velocity(double v0, double v1, double* out) const;

    /// Position after time t >= 0, wrapped to the torus.
    std::array<double, 2> flow(std::array<double, 2> v0, double t) const;

    /// Scratch buffers for batched stepping; reuse across calls.
    struct Workspace {
        std::vector<double> k1x, k2x, k3x, k4x, px;
        std::vector<double> k1y, k2y, k3y, k4y, py;
    };

    /// Advance lifted (unwrapped) states in place by time t in the direction
    /// sign*a.  xs/ys hold the coordinates of all points (ys ignored in 1-d).
    void advance_lifted(std::vector<double>& xs, std::vector<double>& ys, double t,
                        double sign) const;
    void advance_lifted(std::vector<double>& xs, std::vector<double>& ys, double t,
                        double sign, Workspace& ws) const;

    /// Birkhoff averages of f along the flow: for each horizon T in
    /// `horizons` (ascending, > 0), the field v -> (1/T) int_0^T f(traj_v(s)) ds
    /// with trapezoid quadrature on the integrator steps.
    std::vector<PeriodicField> birkhoff_averages(const PeriodicField& f,
                                                 const std::vector<double>& horizons) const;
    PeriodicField birkhoff_average(const PeriodicField& f, double horizon) const;

private:
    PeriodicField a_;
    double h_;
    Interp mode_;
    double lipschitz_ = 0.0;
    double max_speed_ = 0.0;
    std::unique_ptr<SplineInterp> spline_;
    std::unique_ptr<SpectralEval> spectral_;
};

} // namespace kinhom
