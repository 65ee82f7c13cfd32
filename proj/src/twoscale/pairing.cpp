#include "kinhom/twoscale/pairing.hpp"

#include <cmath>

#include "kinhom/core/simd.hpp"
#include "kinhom/torus/interp.hpp"
#include "kinhom/torus/spectral.hpp"

namespace kinhom {

namespace {

constexpr std::size_t kChunk = 4096;

// Deterministic chunked reduction: fill a buffer chunk by chunk, reduce each
// chunk with the active SIMD sum, add chunk results in order.
template <typename F>
double quad_sum(std::size_t n, F&& integrand) {
    const auto& k = simd::active();
    std::vector<double> buf(std::min(n, kChunk));
    double total = 0.0;
    for (std::size_t base = 0; base < n; base += kChunk) {
        const std::size_t m = std::min(kChunk, n - base);
        for (std::size_t i = 0; i < m; ++i) buf[i] = integrand(base + i);
        total += k.sum(buf.data(), m);
    }
    return total;
}

// v-average of theta at fixed x by torus quadrature (fallback when no
// analytic vmean was supplied).
double numeric_vmean(const TestFunction& theta, Pt x, int dim) {
    const int n = 64;
    if (dim == 1) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += theta.xv(x, {double(i) / n, 0.0});
        return s / n;
    }
    double s = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            s += theta.xv(x, {double(i) / n, double(j) / n});
    return s / (double(n) * n);
}

} // namespace

void require_resolves(const BoxGrid& box, double scale) {
    if (box.max_spacing() > scale / 4.0)
        throw UnderresolvedOscillation(box.max_spacing(), scale);
}

double box_quadrature(const BoxGrid& box, const std::function<double(Pt)>& f) {
    const int n1 = box.dim == 2 ? box.n[1] : 1;
    const int n0 = box.n[0];
    const double vol = box.cell_volume();
    const double s = quad_sum(static_cast<std::size_t>(n0) * n1, [&](std::size_t idx) {
        const int i1 = static_cast<int>(idx / n0);
        const int i0 = static_cast<int>(idx % n0);
        return f(box.node(i0, i1));
    });
    return s * vol;
}

double two_scale_pairing(const BoxGrid& box, const std::function<double(Pt)>& u,
                         const TestFunction& theta, double eps) {
    if (!(eps > 0.0)) throw Error("two_scale_pairing: eps must be positive");
    require_resolves(box, eps);
    return box_quadrature(box, [&](Pt x) {
        return u(x) * theta.xv(x, reduce_mod(x, eps, box.dim));
    });
}

double two_scale_pairing(const BoxGrid& box, const std::vector<double>& u_samples,
                         const TestFunction& theta, double eps) {
    if (u_samples.size() != box.points())
        throw GridMismatch("two_scale_pairing: sample count");
    if (!(eps > 0.0)) throw Error("two_scale_pairing: eps must be positive");
    require_resolves(box, eps);
    const int n0 = box.n[0];
    const int n1 = box.dim == 2 ? box.n[1] : 1;
    const double vol = box.cell_volume();
    const double s = quad_sum(static_cast<std::size_t>(n0) * n1, [&](std::size_t idx) {
        const int i1 = static_cast<int>(idx / n0);
        const int i0 = static_cast<int>(idx % n0);
        const Pt x = box.node(i0, i1);
        return u_samples[idx] * theta.xv(x, reduce_mod(x, eps, box.dim));
    });
    return s * vol;
}

double triple_scale_pairing(const BoxGrid& box, const std::function<double(Pt)>& u,
                            const TestFunction& theta, double eps) {
    if (!(eps > 0.0)) throw Error("triple_scale_pairing: eps must be positive");
    if (!theta.xvw) throw Error("triple_scale_pairing: theta lacks a (x,v,w) form");
    require_resolves(box, eps * eps);
    return box_quadrature(box, [&](Pt x) {
        return u(x) * theta.xvw(x, reduce_mod(x, eps, box.dim),
                                reduce_mod(x, eps * eps, box.dim));
    });
}

double corrector_pairing(const BoxGrid& box, const std::function<double(Pt)>& u,
                         const TestFunction& theta, double eps) {
    const double paired = two_scale_pairing(box, u, theta, eps);
    const auto mean = theta.vmean
                          ? theta.vmean
                          : std::function<double(Pt)>([&](Pt x) {
                                return numeric_vmean(theta, x, box.dim);
                            });
    const double averaged = box_quadrature(box, [&](Pt x) { return u(x) * mean(x); });
    return (paired - averaged) / eps;
}

double corrector_pairing(const BoxGrid& box, const std::vector<double>& u_samples,
                         const TestFunction& theta, double eps) {
    const double paired = two_scale_pairing(box, u_samples, theta, eps);
    const auto mean = theta.vmean
                          ? theta.vmean
                          : std::function<double(Pt)>([&](Pt x) {
                                return numeric_vmean(theta, x, box.dim);
                            });
    const int n0 = box.n[0];
    const int n1 = box.dim == 2 ? box.n[1] : 1;
    const double vol = box.cell_volume();
    const double averaged =
        vol * quad_sum(static_cast<std::size_t>(n0) * n1, [&](std::size_t idx) {
            const int i1 = static_cast<int>(idx / n0);
            const int i0 = static_cast<int>(idx % n0);
            return u_samples[idx] * mean(box.node(i0, i1));
        });
    return (paired - averaged) / eps;
}

ConvergenceReport verify_noncorrelation(const PeriodicField& a, const PeriodicField& b,
                                        const std::function<double(double)>& theta_x,
                                        double x_lo, double x_hi,
                                        const std::vector<double>& eps_list,
                                        const std::function<double(double)>& delta_of_eps) {
    if (a.grid().dim != 1 || b.grid().dim != 1)
        throw Error("verify_noncorrelation: 1-d profiles expected");
    SpectralEval ea(a), eb(b);
    const double mean_a = integrate_torus_scalar(a);
    const double mean_b = integrate_torus_scalar(b);
    const double theta_int = [&] {
        BoxGrid box(x_lo, x_hi, 4096, false);
        return box_quadrature(box, [&](Pt x) { return theta_x(x[0]); });
    }();
    const double product_of_means = mean_a * mean_b * theta_int;

    ConvergenceReport rep;
    rep.scenario = "noncorrelation";
    double prev_delta = 0.0;
    bool first = true;
    for (double eps : eps_list) {
        const double delta = delta_of_eps(eps);
        if (!first && !(delta < prev_delta)) rep.hypothesis_violated = true;
        prev_delta = delta;
        first = false;

        const double fine = eps * delta;
        const int n = std::max(64, static_cast<int>(std::ceil(8.0 * (x_hi - x_lo) / fine)));
        BoxGrid box(x_lo, x_hi, n, false);
        require_resolves(box, fine);
        const double value = box_quadrature(box, [&](Pt x) {
            return theta_x(x[0]) * ea.eval(0, reduce_mod(x[0], eps)) *
                   eb.eval(0, reduce_mod(x[0], fine));
        });
        rep.push(eps, value, product_of_means);
    }
    rep.finalize();
    return rep;
}

} // namespace kinhom
