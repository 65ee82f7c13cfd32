#include "kinhom/torus/spectral.hpp"

#include <cmath>

#include "kinhom/core/simd.hpp"

namespace kinhom {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Multiply spectrum by (2*pi*i*k_axis), zeroing the Nyquist mode.
void differentiate_axis(Spectrum& s, int axis) {
    const TorusGrid& g = s.grid;
    const int n1 = g.dim == 2 ? g.n[1] : 1;
    for (int j1 = 0; j1 < n1; ++j1) {
        const int k1 = g.dim == 2 ? fft::freq(j1, g.n[1]) : 0;
        for (int j0 = 0; j0 < g.n[0]; ++j0) {
            const int k0 = fft::freq(j0, g.n[0]);
            const int k = axis == 0 ? k0 : k1;
            const bool nyq = (axis == 0 && g.n[0] % 2 == 0 && j0 == g.n[0] / 2) ||
                             (axis == 1 && g.dim == 2 && g.n[1] % 2 == 0 && j1 == g.n[1] / 2);
            auto& c = s.at(j0, j1);
            c = nyq ? 0.0 : c * std::complex<double>(0.0, kTwoPi * k);
        }
    }
}
} // namespace

std::vector<double> integrate_torus(const PeriodicField& f) {
    const auto& k = simd::active();
    std::vector<double> out(f.rank());
    for (int c = 0; c < f.rank(); ++c)
        out[c] = k.sum(f.component(c), f.points()) / static_cast<double>(f.points());
    return out;
}

double integrate_torus_scalar(const PeriodicField& f) {
    if (f.rank() != 1) throw Error("integrate_torus_scalar: scalar field expected");
    return integrate_torus(f)[0];
}

PeriodicField spectral_gradient(const PeriodicField& f) {
    if (f.rank() != 1) throw Error("spectral_gradient: scalar field expected");
    const TorusGrid& g = f.grid();
    PeriodicField out(g, g.dim);
    for (int axis = 0; axis < g.dim; ++axis) {
        Spectrum s = fft::forward(g, f.component(0));
        differentiate_axis(s, axis);
        fft::backward(s, out.component(axis));
    }
    return out;
}

PeriodicField divergence_v(const PeriodicField& a) {
    const TorusGrid& g = a.grid();
    if (a.rank() != g.dim) throw Error("divergence_v: vector field of rank d expected");
    PeriodicField out(g, 1);
    std::vector<double> tmp(g.points());
    for (int axis = 0; axis < g.dim; ++axis) {
        Spectrum s = fft::forward(g, a.component(axis));
        differentiate_axis(s, axis);
        fft::backward(s, tmp.data());
        for (std::size_t i = 0; i < tmp.size(); ++i) out.values()[i] += tmp[i];
    }
    return out;
}

PeriodicField advective_derivative(const PeriodicField& a, const PeriodicField& f) {
    a.require_same_grid(f);
    const TorusGrid& g = f.grid();
    if (a.rank() != g.dim) throw Error("advective_derivative: a must have rank d");
    if (f.rank() != 1) throw Error("advective_derivative: f must be scalar");
    PeriodicField grad = spectral_gradient(f);
    PeriodicField out(g, 1);
    const auto& k = simd::active();
    std::vector<double> tmp(g.points());
    for (int axis = 0; axis < g.dim; ++axis) {
        k.mul(a.component(axis), grad.component(axis), tmp.data(), tmp.size());
        for (std::size_t i = 0; i < tmp.size(); ++i) out.values()[i] += tmp[i];
    }
    return out;
}

PeriodicField laplacian_v(const PeriodicField& f) {
    if (f.rank() != 1) throw Error("laplacian_v: scalar field expected");
    const TorusGrid& g = f.grid();
    Spectrum s = fft::forward(g, f.component(0));
    const int n1 = g.dim == 2 ? g.n[1] : 1;
    for (int j1 = 0; j1 < n1; ++j1) {
        const int k1 = g.dim == 2 ? fft::freq(j1, g.n[1]) : 0;
        for (int j0 = 0; j0 < g.n[0]; ++j0) {
            const int k0 = fft::freq(j0, g.n[0]);
            const double k2 = kTwoPi * kTwoPi * (double(k0) * k0 + double(k1) * k1);
            s.at(j0, j1) *= -k2;
        }
    }
    PeriodicField out(g, 1);
    fft::backward(s, out.component(0));
    return out;
}

PeriodicField refine(const PeriodicField& f, const TorusGrid& finer) {
    const TorusGrid& g = f.grid();
    if (finer.dim != g.dim) throw GridMismatch("refine: dimension");
    for (int i = 0; i < g.dim; ++i)
        if (finer.n[i] < g.n[i]) throw Error("refine: target grid must not be coarser");
    PeriodicField out(finer, f.rank());
    for (int c = 0; c < f.rank(); ++c) {
        Spectrum s = fft::forward(g, f.component(c));
        Spectrum t{finer, std::vector<std::complex<double>>(finer.points(), 0.0)};
        const int n1 = g.dim == 2 ? g.n[1] : 1;
        for (int j1 = 0; j1 < n1; ++j1) {
            const int k1 = g.dim == 2 ? fft::freq(j1, g.n[1]) : 0;
            const int t1 = g.dim == 2 ? (k1 >= 0 ? k1 : k1 + finer.n[1]) : 0;
            for (int j0 = 0; j0 < g.n[0]; ++j0) {
                const int k0 = fft::freq(j0, g.n[0]);
                const int t0 = k0 >= 0 ? k0 : k0 + finer.n[0];
                t.at(t0, t1) = s.at(j0, j1);
            }
        }
        fft::backward(t, out.component(c));
    }
    return out;
}

double parseval_defect(const PeriodicField& f) {
    double worst = 0.0;
    const auto& k = simd::active();
    for (int c = 0; c < f.rank(); ++c) {
        const double phys = k.dot(f.component(c), f.component(c), f.points()) /
                            static_cast<double>(f.points());
        Spectrum s = fft::forward(f.grid(), f.component(c));
        double spec = 0.0;
        for (const auto& z : s.coeff) spec += std::norm(z);
        const double scale = std::max(phys, 1e-300);
        worst = std::max(worst, std::abs(phys - spec) / scale);
    }
    return worst;
}

} // namespace kinhom
