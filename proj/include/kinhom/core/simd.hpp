#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops used across the solvers.  Each kernel has a
// scalar reference implementation and an AVX2+FMA variant; the active set is
// picked once at startup from CPUID.  All kernels reduce in a fixed order
// that does not depend on the instruction set width beyond the lane count,
// so results are reproducible for a given binary on a given machine.
//
// The scalar versions are the semantic definition; the vector versions are
// required to match them to a few ulps and are tested for that.

namespace kinhom::simd {

struct Kernels {
    // sum of x[0..n)
    double (*sum)(const double* x, std::size_t n);
    // dot product of x and y
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // out[i] = x[i] * y[i]
    void (*mul)(const double* x, const double* y, double* out, std::size_t n);
    // out[i] = y0[i] + c1*k1[i] + c2*k2[i] + c3*k3[i] + c4*k4[i]
    void (*rk4_combine)(const double* y0, const double* k1, const double* k2,
                        const double* k3, const double* k4, double c1, double c2,
                        double c3, double c4, double* out, std::size_t n);
    // acc[i] += w * x[i]  (same as axpy; kept separate for profiling clarity)
    void (*weighted_accumulate)(double* acc, double w, const double* x, std::size_t n);
    // sum of x[i]*y[i]*z[i], grouped as x*(y*z) so the result is symmetric in y,z
    double (*triple_dot)(const double* x, const double* y, const double* z, std::size_t n);
};

// Reference implementations (always available).
const Kernels& scalar();

// Kernels selected for this machine (AVX2+FMA when the CPU supports it).
const Kernels& active();

// Name of the selected instruction set, for manifests: "scalar" or "avx2".
const std::string& active_isa();

} // namespace kinhom::simd
