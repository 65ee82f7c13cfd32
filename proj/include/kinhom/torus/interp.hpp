#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "kinhom/torus/field.hpp"

namespace kinhom {

/// Periodic cubic B-spline interpolant of one or more field components.
/// Prefiltering is done in Fourier space (the B-spline response never
/// vanishes), giving true interpolation with O(h^4) error on smooth data.
class SplineInterp {
public:
    explicit SplineInterp(const PeriodicField& f);

    int rank() const { return rank_; }
    const TorusGrid& grid() const { return grid_; }

    /// Evaluate component c at a point on the torus (any real coordinates;
    /// wrapped internally).
    double eval(int c, double v0, double v1 = 0.0) const;

    /// Evaluate all components at once.
    void eval_all(double v0, double v1, double* out) const;

private:
    TorusGrid grid_;
    int rank_;
    std::vector<double> coef_; // B-spline coefficients, component planes
};

/// Exact trigonometric (spectral) point evaluation; O(N^d) per point, meant
/// for small grids and oracle checks.
class SpectralEval {
public:
    explicit SpectralEval(const PeriodicField& f);
    double eval(int c, double v0, double v1 = 0.0) const;

private:
    TorusGrid grid_;
    int rank_;
    std::vector<std::vector<std::complex<double>>> coeff_;
};

/// Wrap a real coordinate into [0, 1).
inline double wrap01(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    return r;
}

} // namespace kinhom
