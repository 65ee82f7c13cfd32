#include "kinhom/torus/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace kinhom::fft {

namespace {

// One cached FFTW plan pair (with its own aligned buffer) per grid shape.
// Execution copies through the buffer under a lock: FFT sites are not the
// parallel hot loops, and this keeps planner usage trivially thread-safe.
struct PlanEntry {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t n = 0;
};

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

PlanEntry& plan_for(const TorusGrid& grid) {
    static std::map<std::array<int, 3>, PlanEntry> cache;
    const std::array<int, 3> key = {grid.dim, grid.n[0], grid.dim == 2 ? grid.n[1] : 1};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    PlanEntry e;
    e.n = grid.points();
    e.buf = fftw_alloc_complex(e.n);
    if (grid.dim == 1) {
        e.fwd = fftw_plan_dft_1d(grid.n[0], e.buf, e.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        e.bwd = fftw_plan_dft_1d(grid.n[0], e.buf, e.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        // layout: index = i1*n0 + i0, i0 fastest => rows are axis 1.
        e.fwd = fftw_plan_dft_2d(grid.n[1], grid.n[0], e.buf, e.buf, FFTW_FORWARD,
                                 FFTW_ESTIMATE);
        e.bwd = fftw_plan_dft_2d(grid.n[1], grid.n[0], e.buf, e.buf, FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
    }
    return cache.emplace(key, e).first->second;
}

struct RowPlanEntry {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
};

RowPlanEntry& row_plan_for(int n0, int n_rows) {
    static std::map<std::array<int, 2>, RowPlanEntry> cache;
    const std::array<int, 2> key = {n0, n_rows};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    RowPlanEntry e;
    e.buf = fftw_alloc_complex(static_cast<std::size_t>(n0) * n_rows);
    int n[] = {n0};
    e.fwd = fftw_plan_many_dft(1, n, n_rows, e.buf, nullptr, 1, n0, e.buf, nullptr, 1,
                               n0, FFTW_FORWARD, FFTW_ESTIMATE);
    e.bwd = fftw_plan_many_dft(1, n, n_rows, e.buf, nullptr, 1, n0, e.buf, nullptr, 1,
                               n0, FFTW_BACKWARD, FFTW_ESTIMATE);
    return cache.emplace(key, e).first->second;
}

} // namespace

Spectrum forward(const TorusGrid& grid, const double* samples) {
    Spectrum s{grid, std::vector<std::complex<double>>(grid.points())};
    std::lock_guard<std::mutex> lock(plan_mutex());
    PlanEntry& e = plan_for(grid);
    for (std::size_t i = 0; i < e.n; ++i) {
        e.buf[i][0] = samples[i];
        e.buf[i][1] = 0.0;
    }
    fftw_execute(e.fwd);
    const double scale = 1.0 / static_cast<double>(e.n);
    for (std::size_t i = 0; i < e.n; ++i)
        s.coeff[i] = std::complex<double>(e.buf[i][0] * scale, e.buf[i][1] * scale);
    return s;
}

void backward(const Spectrum& spec, double* samples_out) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    PlanEntry& e = plan_for(spec.grid);
    for (std::size_t i = 0; i < e.n; ++i) {
        e.buf[i][0] = spec.coeff[i].real();
        e.buf[i][1] = spec.coeff[i].imag();
    }
    fftw_execute(e.bwd);
    for (std::size_t i = 0; i < e.n; ++i) samples_out[i] = e.buf[i][0];
}

std::vector<std::complex<double>> forward_c(const TorusGrid& grid,
                                            const std::complex<double>* in) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    PlanEntry& e = plan_for(grid);
    for (std::size_t i = 0; i < e.n; ++i) {
        e.buf[i][0] = in[i].real();
        e.buf[i][1] = in[i].imag();
    }
    fftw_execute(e.fwd);
    std::vector<std::complex<double>> out(e.n);
    const double scale = 1.0 / static_cast<double>(e.n);
    for (std::size_t i = 0; i < e.n; ++i)
        out[i] = std::complex<double>(e.buf[i][0] * scale, e.buf[i][1] * scale);
    return out;
}

std::vector<std::complex<double>> backward_c(const TorusGrid& grid,
                                             const std::complex<double>* in) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    PlanEntry& e = plan_for(grid);
    for (std::size_t i = 0; i < e.n; ++i) {
        e.buf[i][0] = in[i].real();
        e.buf[i][1] = in[i].imag();
    }
    fftw_execute(e.bwd);
    std::vector<std::complex<double>> out(e.n);
    for (std::size_t i = 0; i < e.n; ++i)
        out[i] = std::complex<double>(e.buf[i][0], e.buf[i][1]);
    return out;
}

void shift_resample(const TorusGrid& grid, const double* samples,
                    const std::array<double, 2>& shift, double* out) {
    Spectrum s = forward(grid, samples);
    const double two_pi = 6.283185307179586476925286766559;
    const int n1 = grid.dim == 2 ? grid.n[1] : 1;
    for (int j1 = 0; j1 < n1; ++j1) {
        const int k1 = grid.dim == 2 ? freq(j1, grid.n[1]) : 0;
        for (int j0 = 0; j0 < grid.n[0]; ++j0) {
            const int k0 = freq(j0, grid.n[0]);
            const double phase = two_pi * (k0 * shift[0] + k1 * shift[1]);
            s.at(j0, j1) *= std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    backward(s, out);
}

void rows_forward(int n0, int n_rows, std::complex<double>* data) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    RowPlanEntry& e = row_plan_for(n0, n_rows);
    const std::size_t n = static_cast<std::size_t>(n0) * n_rows;
    for (std::size_t i = 0; i < n; ++i) {
        e.buf[i][0] = data[i].real();
        e.buf[i][1] = data[i].imag();
    }
    fftw_execute(e.fwd);
    for (std::size_t i = 0; i < n; ++i)
        data[i] = std::complex<double>(e.buf[i][0], e.buf[i][1]);
}

void rows_backward(int n0, int n_rows, std::complex<double>* data) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    RowPlanEntry& e = row_plan_for(n0, n_rows);
    const std::size_t n = static_cast<std::size_t>(n0) * n_rows;
    for (std::size_t i = 0; i < n; ++i) {
        e.buf[i][0] = data[i].real();
        e.buf[i][1] = data[i].imag();
    }
    fftw_execute(e.bwd);
    const double scale = 1.0 / n0;
    for (std::size_t i = 0; i < n; ++i)
        data[i] = std::complex<double>(e.buf[i][0] * scale, e.buf[i][1] * scale);
}

} // namespace kinhom::fft
