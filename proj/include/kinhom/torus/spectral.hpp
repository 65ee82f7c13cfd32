#pragma once

#include "kinhom/torus/fft.hpp"
#include "kinhom/torus/field.hpp"

namespace kinhom {

/// Quadrature of a field over the unit torus (trapezoid = midpoint on the
/// periodic grid; exact for band-limited integrands).  One value per
/// component.
std::vector<double> integrate_torus(const PeriodicField& f);
double integrate_torus_scalar(const PeriodicField& f);

/// Gradient of a scalar field by discrete Fourier differentiation.
/// The Nyquist mode is zeroed, as usual for odd-order spectral derivatives.
PeriodicField spectral_gradient(const PeriodicField& f);

/// Divergence of a vector field (rank d).
PeriodicField divergence_v(const PeriodicField& a);

/// a . grad f at the grid nodes; a vector rank d, f scalar, same grid.
PeriodicField advective_derivative(const PeriodicField& a, const PeriodicField& f);

/// Laplacian of a scalar field.
PeriodicField laplacian_v(const PeriodicField& f);

/// Resample a scalar field on a finer (or equal) grid by spectral zero
/// padding; exact for band-limited fields.
PeriodicField refine(const PeriodicField& f, const TorusGrid& finer);

/// max |sum of squared samples / N - sum of squared coefficients| over
/// components, relative to the norm.  Zero up to roundoff (Parseval).
double parseval_defect(const PeriodicField& f);

} // namespace kinhom
