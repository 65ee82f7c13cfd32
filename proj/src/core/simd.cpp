#include "kinhom/core/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define KINHOM_X86 1
#endif

namespace kinhom::simd {

namespace {

// ---------------------------------------------------------------- scalar ---

double sum_scalar(const double* x, std::size_t n) {
    // 4 independent accumulators; same shape as the vector kernel's tail-free
    // path so the two agree closely.
    double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 += x[i];
        a1 += x[i + 1];
        a2 += x[i + 2];
        a3 += x[i + 3];
    }
    double tail = 0;
    for (; i < n; ++i) tail += x[i];
    return ((a0 + a1) + (a2 + a3)) + tail;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 += x[i] * y[i];
        a1 += x[i + 1] * y[i + 1];
        a2 += x[i + 2] * y[i + 2];
        a3 += x[i + 3] * y[i + 3];
    }
    double tail = 0;
    for (; i < n; ++i) tail += x[i] * y[i];
    return ((a0 + a1) + (a2 + a3)) + tail;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void mul_scalar(const double* x, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void rk4_combine_scalar(const double* y0, const double* k1, const double* k2,
                        const double* k3, const double* k4, double c1, double c2,
                        double c3, double c4, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = y0[i] + c1 * k1[i] + c2 * k2[i] + c3 * k3[i] + c4 * k4[i];
}

void wacc_scalar(double* acc, double w, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += w * x[i];
}

double triple_dot_scalar(const double* x, const double* y, const double* z,
                         std::size_t n) {
    double a0 = 0, a1 = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        a0 += x[i] * (y[i] * z[i]);
        a1 += x[i + 1] * (y[i + 1] * z[i + 1]);
    }
    double tail = 0;
    for (; i < n; ++i) tail += x[i] * (y[i] * z[i]);
    return (a0 + a1) + tail;
}

// ------------------------------------------------------------------ avx2 ---

#ifdef KINHOM_X86

__attribute__((target("avx2,fma")))
double sum_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) r += x[i];
    return r;
}

__attribute__((target("avx2,fma")))
double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

__attribute__((target("avx2,fma")))
void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2,fma")))
void mul_avx2(const double* x, const double* y, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i,
                         _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) out[i] = x[i] * y[i];
}

__attribute__((target("avx2,fma")))
void rk4_combine_avx2(const double* y0, const double* k1, const double* k2,
                      const double* k3, const double* k4, double c1, double c2,
                      double c3, double c4, double* out, std::size_t n) {
    const __m256d v1 = _mm256_set1_pd(c1), v2 = _mm256_set1_pd(c2);
    const __m256d v3 = _mm256_set1_pd(c3), v4 = _mm256_set1_pd(c4);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(y0 + i);
        r = _mm256_fmadd_pd(v1, _mm256_loadu_pd(k1 + i), r);
        r = _mm256_fmadd_pd(v2, _mm256_loadu_pd(k2 + i), r);
        r = _mm256_fmadd_pd(v3, _mm256_loadu_pd(k3 + i), r);
        r = _mm256_fmadd_pd(v4, _mm256_loadu_pd(k4 + i), r);
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i)
        out[i] = y0[i] + c1 * k1[i] + c2 * k2[i] + c3 * k3[i] + c4 * k4[i];
}

__attribute__((target("avx2,fma")))
void wacc_avx2(double* acc, double w, const double* x, std::size_t n) {
    axpy_avx2(w, x, acc, n);
}

__attribute__((target("avx2,fma")))
double triple_dot_avx2(const double* x, const double* y, const double* z,
                       std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yz = _mm256_mul_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(z + i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), yz, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) r += x[i] * (y[i] * z[i]);
    return r;
}

#endif // KINHOM_X86

const Kernels kScalar = {sum_scalar,  dot_scalar,  axpy_scalar, mul_scalar,
                         rk4_combine_scalar, wacc_scalar, triple_dot_scalar};

#ifdef KINHOM_X86
const Kernels kAvx2 = {sum_avx2,  dot_avx2,  axpy_avx2, mul_avx2,
                       rk4_combine_avx2, wacc_avx2, triple_dot_avx2};
#endif

struct Dispatch {
    const Kernels* kernels;
    std::string isa;
    Dispatch() {
#ifdef KINHOM_X86
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            kernels = &kAvx2;
            isa = "avx2";
            return;
        }
#endif
        kernels = &kScalar;
        isa = "scalar";
    }
};

const Dispatch& dispatch() {
    static const Dispatch d;
    return d;
}

} // namespace

const Kernels& scalar() { return kScalar; }
const Kernels& active() { return *dispatch().kernels; }
const std::string& active_isa() { return dispatch().isa; }

} // namespace kinhom::simd
