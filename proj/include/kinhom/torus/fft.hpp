#pragma once

#include <complex>
#include <vector>

#include "kinhom/torus/grid.hpp"

namespace kinhom {

/// Fourier coefficients of a grid function, same layout as the grid
/// (axis 0 fastest).  Normalized so that coeff(k=0) is the mean.
struct Spectrum {
    TorusGrid grid;
    std::vector<std::complex<double>> coeff;

    std::complex<double>& at(int j0, int j1 = 0) { return coeff[grid.index(j0, j1)]; }
    const std::complex<double>& at(int j0, int j1 = 0) const {
        return coeff[grid.index(j0, j1)];
    }
};

namespace fft {

/// Integer frequency of coefficient index j on an N-point axis:
/// 0,1,...,N/2,-N/2+1,...,-1.
inline int freq(int j, int n) { return j <= n / 2 ? j : j - n; }

Spectrum forward(const TorusGrid& grid, const double* samples);
void backward(const Spectrum& spec, double* samples_out);

/// Complex-input transforms used internally.
std::vector<std::complex<double>> forward_c(const TorusGrid& grid,
                                            const std::complex<double>* in);
std::vector<std::complex<double>> backward_c(const TorusGrid& grid,
                                             const std::complex<double>* in);

/// Samples of the trigonometric interpolant at every node shifted by a
/// constant vector s (periodic): out[j] = f(x_j + s).
void shift_resample(const TorusGrid& grid, const double* samples,
                    const std::array<double, 2>& shift, double* out);

/// In-place 1-d FFT along axis 0 for each row of a 2-d layout
/// (n_rows rows of length n0).  Unnormalized forward; backward divides by n0.
void rows_forward(int n0, int n_rows, std::complex<double>* data);
void rows_backward(int n0, int n_rows, std::complex<double>* data);

} // namespace fft
} // namespace kinhom
