#include "kinhom/kernel/characteristics.hpp"

#include <cmath>

#include "kinhom/core/simd.hpp"
#include "kinhom/torus/spectral.hpp"

namespace kinhom {

Characteristics::Characteristics(PeriodicField a, double step, Interp interp)
    : a_(std::move(a)), h_(step), mode_(interp) {
    const TorusGrid& g = a_.grid();
    if (a_.rank() != g.dim) throw Error("Characteristics: velocity must have rank d");

    const PeriodicField div = divergence_v(a_);
    const double worst = div.max_abs();
    if (worst > 1e-8)
        throw HypothesisViolation("div_v a = 0", worst, 0.0, 0.0);

    max_speed_ = a_.max_abs();
    for (int c = 0; c < a_.rank(); ++c) {
        PeriodicField comp(g, 1, std::vector<double>(a_.component(c),
                                                     a_.component(c) + a_.points()));
        lipschitz_ = std::max(lipschitz_, spectral_gradient(comp).max_abs());
    }

    if (h_ <= 0.0) {
        double spacing = g.spacing(0);
        if (g.dim == 2) spacing = std::min(spacing, g.spacing(1));
        h_ = max_speed_ > 0.0 ? spacing / (4.0 * max_speed_) : 1.0;
    }

    if (mode_ == Interp::Cubic)
        spline_ = std::make_unique<SplineInterp>(a_);
    else
        spectral_ = std::make_unique<SpectralEval>(a_);
}

void Characteristics::velocity(double v0, double v1, double* out) const {
    for (int c = 0; c < a_.rank(); ++c)
        out[c] = mode_ == Interp::Cubic ? spline_->eval(c, v0, v1)
                                        : spectral_->eval(c, v0, v1);
}

std::array<double, 2> Characteristics::flow(std::array<double, 2> v0, double t) const {
    if (t < 0.0) throw Error("Characteristics::flow: t must be >= 0");
    std::vector<double> xs = {v0[0]}, ys = {v0[1]};
    advance_lifted(xs, ys, t, +1.0);
    return {wrap01(xs[0]), a_.grid().dim == 2 ? wrap01(ys[0]) : 0.0};
}

void Characteristics::advance_lifted(std::vector<double>& xs, std::vector<double>& ys,
                                     double t, double sign) const {
    Workspace ws;
    advance_lifted(xs, ys, t, sign, ws);
}

void Characteristics::advance_lifted(std::vector<double>& xs, std::vector<double>& ys,
                                     double t, double sign, Workspace& ws) const {
    if (t == 0.0 || max_speed_ == 0.0) return;
    const std::size_t n = xs.size();
    const int dim = a_.grid().dim;
    const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(t / h_)));
    const double h = t / static_cast<double>(nsteps);

    auto& k1x = ws.k1x; auto& k2x = ws.k2x; auto& k3x = ws.k3x;
    auto& k4x = ws.k4x; auto& px = ws.px;
    auto& k1y = ws.k1y; auto& k2y = ws.k2y; auto& k3y = ws.k3y;
    auto& k4y = ws.k4y; auto& py = ws.py;
    k1x.resize(n); k2x.resize(n); k3x.resize(n); k4x.resize(n); px.resize(n);
    if (dim == 2) {
        k1y.resize(n); k2y.resize(n); k3y.resize(n); k4y.resize(n); py.resize(n);
    }
    const auto& sk = simd::active();

    auto eval_at = [&](const std::vector<double>& qx, const std::vector<double>& qy,
                       std::vector<double>& ox, std::vector<double>& oy) {
        double v[2];
        for (std::size_t i = 0; i < n; ++i) {
            velocity(qx[i], dim == 2 ? qy[i] : 0.0, v);
            ox[i] = sign * v[0];
            if (dim == 2) oy[i] = sign * v[1];
        }
    };

    for (long s = 0; s < nsteps; ++s) {
        eval_at(xs, ys, k1x, k1y);
        // p = x + h/2 k1
        px = xs; sk.axpy(0.5 * h, k1x.data(), px.data(), n);
        if (dim == 2) { py = ys; sk.axpy(0.5 * h, k1y.data(), py.data(), n); }
        eval_at(px, py, k2x, k2y);
        px = xs; sk.axpy(0.5 * h, k2x.data(), px.data(), n);
        if (dim == 2) { py = ys; sk.axpy(0.5 * h, k2y.data(), py.data(), n); }
        eval_at(px, py, k3x, k3y);
        px = xs; sk.axpy(h, k3x.data(), px.data(), n);
        if (dim == 2) { py = ys; sk.axpy(h, k3y.data(), py.data(), n); }
        eval_at(px, py, k4x, k4y);
        sk.rk4_combine(xs.data(), k1x.data(), k2x.data(), k3x.data(), k4x.data(),
                       h / 6.0, h / 3.0, h / 3.0, h / 6.0, xs.data(), n);
        if (dim == 2)
            sk.rk4_combine(ys.data(), k1y.data(), k2y.data(), k3y.data(), k4y.data(),
                           h / 6.0, h / 3.0, h / 3.0, h / 6.0, ys.data(), n);
    }
}

std::vector<PeriodicField> Characteristics::birkhoff_averages(
    const PeriodicField& f, const std::vector<double>& horizons) const {
    if (f.rank() != 1) throw Error("birkhoff_averages: scalar field expected");
    f.require_same_grid(a_);
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        if (!(horizons[i] > 0.0)) throw Error("birkhoff_averages: horizon must be > 0");
        if (i > 0 && !(horizons[i] > horizons[i - 1]))
            throw Error("birkhoff_averages: horizons must be ascending");
    }

    const TorusGrid& g = f.grid();
    const int dim = g.dim;
    const std::size_t n = g.points();
    SplineInterp finterp(f);

    // Trajectory states for every grid node.
    std::vector<double> xs(n), ys(dim == 2 ? n : 0);
    const int n1 = dim == 2 ? g.n[1] : 1;
    for (int j1 = 0; j1 < n1; ++j1)
        for (int j0 = 0; j0 < g.n[0]; ++j0) {
            const auto node = g.node(j0, j1);
            xs[g.index(j0, j1)] = node[0];
            if (dim == 2) ys[g.index(j0, j1)] = node[1];
        }

    std::vector<double> acc(n, 0.0), fcur(n), fnext(n);
    auto sample_f = [&](std::vector<double>& out) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = finterp.eval(0, xs[i], dim == 2 ? ys[i] : 0.0);
    };
    sample_f(fcur);

    const auto& sk = simd::active();
    std::vector<PeriodicField> results;
    results.reserve(horizons.size());
    Workspace ws;

    double t_done = 0.0;
    for (double target : horizons) {
        const double span = target - t_done;
        const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(span / h_)));
        const double h = span / static_cast<double>(nsteps);
        for (long s = 0; s < nsteps; ++s) {
            sk.weighted_accumulate(acc.data(), 0.5 * h, fcur.data(), n);
            advance_lifted(xs, ys, h, +1.0, ws);
            sample_f(fnext);
            sk.weighted_accumulate(acc.data(), 0.5 * h, fnext.data(), n);
            fcur.swap(fnext);
        }
        t_done = target;
        PeriodicField avg(g, 1);
        for (std::size_t i = 0; i < n; ++i) avg.values()[i] = acc[i] / target;
        results.push_back(std::move(avg));
    }
    return results;
}

PeriodicField Characteristics::birkhoff_average(const PeriodicField& f,
                                                double horizon) const {
    return birkhoff_averages(f, {horizon}).front();
}

} // namespace kinhom
