#include "kinhom/torus/interp.hpp"

#include <cmath>

#include "kinhom/torus/fft.hpp"

namespace kinhom {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Centered cubic B-spline sampled at integers: 4/6 at 0, 1/6 at +-1.
double bspline_response(int k, int n) {
    return (2.0 + std::cos(kTwoPi * k / n)) / 3.0;
}

// 4-tap basis weights for fractional offset f in [0,1), taps at i-1..i+2.
inline void bspline_weights(double f, double w[4]) {
    const double f2 = f * f, f3 = f2 * f;
    w[0] = (1.0 - 3.0 * f + 3.0 * f2 - f3) / 6.0;
    w[1] = (4.0 - 6.0 * f2 + 3.0 * f3) / 6.0;
    w[2] = (1.0 + 3.0 * f + 3.0 * f2 - 3.0 * f3) / 6.0;
    w[3] = f3 / 6.0;
}
} // namespace

SplineInterp::SplineInterp(const PeriodicField& f)
    : grid_(f.grid()), rank_(f.rank()), coef_(f.values().size()) {
    // Deconvolve the B-spline footprint per component in Fourier space.
    for (int c = 0; c < rank_; ++c) {
        Spectrum s = fft::forward(grid_, f.component(c));
        const int n1 = grid_.dim == 2 ? grid_.n[1] : 1;
        for (int j1 = 0; j1 < n1; ++j1) {
            const int k1 = grid_.dim == 2 ? fft::freq(j1, grid_.n[1]) : 0;
            const double b1 = grid_.dim == 2 ? bspline_response(k1, grid_.n[1]) : 1.0;
            for (int j0 = 0; j0 < grid_.n[0]; ++j0) {
                const int k0 = fft::freq(j0, grid_.n[0]);
                s.at(j0, j1) /= bspline_response(k0, grid_.n[0]) * b1;
            }
        }
        fft::backward(s, coef_.data() + c * grid_.points());
    }
}

double SplineInterp::eval(int c, double v0, double v1) const {
    const double* coef = coef_.data() + c * grid_.points();
    const int n0 = grid_.n[0];
    const double t0 = wrap01(v0) * n0;
    int i0 = static_cast<int>(t0);
    if (i0 >= n0) i0 = n0 - 1;
    double w0[4];
    bspline_weights(t0 - i0, w0);

    if (grid_.dim == 1) {
        double r = 0;
        for (int a = 0; a < 4; ++a) {
            int j = i0 + a - 1;
            j -= n0 * static_cast<int>(std::floor(double(j) / n0));
            r += w0[a] * coef[j];
        }
        return r;
    }

    const int n1 = grid_.n[1];
    const double t1 = wrap01(v1) * n1;
    int i1 = static_cast<int>(t1);
    if (i1 >= n1) i1 = n1 - 1;
    double w1[4];
    bspline_weights(t1 - i1, w1);

    int idx0[4], idx1[4];
    for (int a = 0; a < 4; ++a) {
        int j = i0 + a - 1;
        if (j < 0) j += n0;
        if (j >= n0) j -= n0;
        idx0[a] = j;
        int k = i1 + a - 1;
        if (k < 0) k += n1;
        if (k >= n1) k -= n1;
        idx1[a] = k;
    }
    double r = 0;
    for (int b = 0; b < 4; ++b) {
        const double* row = coef + static_cast<std::size_t>(idx1[b]) * n0;
        double rr = w0[0] * row[idx0[0]] + w0[1] * row[idx0[1]] +
                    w0[2] * row[idx0[2]] + w0[3] * row[idx0[3]];
        r += w1[b] * rr;
    }
    return r;
}

void SplineInterp::eval_all(double v0, double v1, double* out) const {
    for (int c = 0; c < rank_; ++c) out[c] = eval(c, v0, v1);
}

SpectralEval::SpectralEval(const PeriodicField& f)
    : grid_(f.grid()), rank_(f.rank()) {
    coeff_.reserve(rank_);
    for (int c = 0; c < rank_; ++c)
        coeff_.push_back(fft::forward(grid_, f.component(c)).coeff);
}

double SpectralEval::eval(int c, double v0, double v1) const {
    const auto& co = coeff_[c];
    std::complex<double> acc = 0.0;
    const int n1 = grid_.dim == 2 ? grid_.n[1] : 1;
    for (int j1 = 0; j1 < n1; ++j1) {
        const int k1 = grid_.dim == 2 ? fft::freq(j1, grid_.n[1]) : 0;
        for (int j0 = 0; j0 < grid_.n[0]; ++j0) {
            const int k0 = fft::freq(j0, grid_.n[0]);
            const double phase = kTwoPi * (k0 * v0 + k1 * v1);
            acc += co[grid_.index(j0, j1)] *
                   std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return acc.real();
}

} // namespace kinhom
