#include "kinhom/hyperbolic/transport.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>

#include "kinhom/core/simd.hpp"
#include "kinhom/torus/spectral.hpp"

namespace kinhom {

namespace {

// Bit-exact hash of a reduced coordinate pair; grid nodes with equal
// x/eps mod 1 collapse into one characteristic class.
struct PtHash {
    std::size_t operator()(const Pt& p) const {
        std::uint64_t a, b;
        std::memcpy(&a, &p[0], 8);
        std::memcpy(&b, &p[1], 8);
        std::uint64_t h = a * 0x9e3779b97f4a7c15ULL;
        h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};
struct PtEq {
    bool operator()(const Pt& p, const Pt& q) const {
        return p[0] == q[0] && p[1] == q[1];
    }
};

double wrap_into(double x, double lo, double len) {
    double r = std::fmod(x - lo, len);
    if (r < 0.0) r += len;
    return lo + r;
}

} // namespace

OscillatorySolver::OscillatorySolver(const TransportProblem& problem, double eps,
                                     double torus_step, double x_step)
    : p_(problem), eps_(eps), x_step_(x_step) {
    if (!(eps > 0.0)) throw Error("OscillatorySolver: eps must be positive");
    if (p_.box.max_spacing() > eps / 8.0 * (1.0 + 1e-12))
        throw UnderresolvedOscillation(p_.box.max_spacing(), eps);
    if (p_.a_torus) {
        chars_.emplace(*p_.a_torus, torus_step);
        build_classes();
    } else if (!p_.a_x) {
        throw Error("OscillatorySolver: no velocity given");
    }
}

void OscillatorySolver::build_classes() {
    const BoxGrid& box = p_.box;
    const int n0 = box.n[0], n1 = box.dim == 2 ? box.n[1] : 1;
    class_of_.assign(box.points(), -1);
    std::unordered_map<Pt, int, PtHash, PtEq> seen;
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i0 = 0; i0 < n0; ++i0) {
            const Pt x = box.node(i0, i1);
            const Pt y = reduce_mod(x, eps_, box.dim);
            auto [it, inserted] = seen.try_emplace(y, static_cast<int>(class_y_.size()));
            if (inserted) class_y_.push_back(y);
            class_of_[box.index(i0, i1)] = it->second;
        }
}

void OscillatorySolver::stream(const std::vector<double>& times,
                               const std::function<void(const TransportSnapshot&)>& visit) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || times[i] > p_.T_final * (1.0 + 1e-12))
            throw Error("OscillatorySolver: time outside [0, T_final]");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw Error("OscillatorySolver: times must be ascending");
    }
    const BoxGrid& box = p_.box;
    const int n0 = box.n[0], n1 = box.dim == 2 ? box.n[1] : 1;
    const std::size_t npts = box.points();
    const auto& sk = simd::active();

    TransportSnapshot snap;
    snap.u.resize(npts);

    if (chars_) {
        // Lifted torus states per class, advanced incrementally backward.
        const std::size_t nc = class_y_.size();
        std::vector<double> zx(nc), zy(nc);
        for (std::size_t c = 0; c < nc; ++c) {
            zx[c] = class_y_[c][0];
            zy[c] = class_y_[c][1];
        }
        Characteristics::Workspace ws;
        double s_done = 0.0;
        for (double t : times) {
            const double s_target = t / eps_;
            chars_->advance_lifted(zx, zy, s_target - s_done, -1.0, ws);
            s_done = s_target;

            // Per-class displacement and torus foot.
            std::vector<double> dx(nc), dy(nc), vx(nc), vy(nc);
            for (std::size_t c = 0; c < nc; ++c) {
                dx[c] = eps_ * (zx[c] - class_y_[c][0]);
                dy[c] = eps_ * (zy[c] - class_y_[c][1]);
                vx[c] = wrap01(zx[c]);
                vy[c] = box.dim == 2 ? wrap01(zy[c]) : 0.0;
            }

            for (int i1 = 0; i1 < n1; ++i1)
                for (int i0 = 0; i0 < n0; ++i0) {
                    const std::size_t idx = box.index(i0, i1);
                    const int c = class_of_[idx];
                    Pt x = box.node(i0, i1);
                    x[0] += dx[c];
                    if (box.dim == 2) x[1] += dy[c];
                    if (box.periodic) {
                        x[0] = wrap_into(x[0], box.lo[0], box.length(0));
                        if (box.dim == 2) x[1] = wrap_into(x[1], box.lo[1], box.length(1));
                    }
                    snap.u[idx] = p_.U0(x, {vx[c], vy[c]});
                }
            snap.t = t;
            snap.l2 = std::sqrt(sk.dot(snap.u.data(), snap.u.data(), npts) *
                                box.cell_volume());
            visit(snap);
        }
        return;
    }

    // eps-free x-dependent velocity: trace every node backward with RK4.
    std::vector<double> fx(npts), fy(npts);
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i0 = 0; i0 < n0; ++i0) {
            const Pt x = box.node(i0, i1);
            fx[box.index(i0, i1)] = x[0];
            fy[box.index(i0, i1)] = x[1];
        }
    auto rk4_back = [&](double span) {
        const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(span / x_step_)));
        const double h = span / static_cast<double>(nsteps);
        for (long s = 0; s < nsteps; ++s) {
            for (std::size_t i = 0; i < npts; ++i) {
                const Pt q0 = {fx[i], fy[i]};
                const Pt k1 = p_.a_x(q0);
                const Pt q1 = {fx[i] - 0.5 * h * k1[0], fy[i] - 0.5 * h * k1[1]};
                const Pt k2 = p_.a_x(q1);
                const Pt q2 = {fx[i] - 0.5 * h * k2[0], fy[i] - 0.5 * h * k2[1]};
                const Pt k3 = p_.a_x(q2);
                const Pt q3 = {fx[i] - h * k3[0], fy[i] - h * k3[1]};
                const Pt k4 = p_.a_x(q3);
                fx[i] -= h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
                fy[i] -= h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
            }
        }
    };
    double t_done = 0.0;
    for (double t : times) {
        rk4_back(t - t_done);
        t_done = t;
        for (std::size_t i = 0; i < npts; ++i) {
            const Pt foot = {fx[i], fy[i]};
            snap.u[i] = p_.U0(foot, reduce_mod(foot, eps_, box.dim));
        }
        snap.t = t;
        snap.l2 = std::sqrt(sk.dot(snap.u.data(), snap.u.data(), npts) *
                            box.cell_volume());
        visit(snap);
    }
}

std::vector<TransportSnapshot> OscillatorySolver::solve(const std::vector<double>& times) {
    std::vector<TransportSnapshot> out;
    out.reserve(times.size());
    stream(times, [&](const TransportSnapshot& s) { out.push_back(s); });
    return out;
}

EffectiveKineticSolution::EffectiveKineticSolution(std::function<double(Pt)> xpart,
                                                   PeriodicField vpart,
                                                   PeriodicField abar, BoxGrid quad_box)
    : xpart_(std::move(xpart)), vpart_(std::move(vpart)), abar_(std::move(abar)),
      quad_(quad_box) {
    vpart_.require_same_grid(abar_);
    if (abar_.rank() != abar_.grid().dim)
        throw Error("EffectiveKineticSolution: abar must be a vector field");

    // Group v nodes by their (exact) abar value; slices in a group translate
    // together.
    std::unordered_map<Pt, int, PtHash, PtEq> seen;
    const TorusGrid& vg = vpart_.grid();
    for (std::size_t i = 0; i < vg.points(); ++i) {
        Pt shift = {abar_.component(0)[i],
                    vg.dim == 2 ? abar_.component(1)[i] : 0.0};
        auto [it, inserted] = seen.try_emplace(shift, static_cast<int>(shift_of_class_.size()));
        if (inserted) {
            shift_of_class_.push_back(shift);
            members_.push_back({});
        }
        members_[it->second].push_back(i);
    }
}

double EffectiveKineticSolution::eval(double t, Pt x, Pt, std::size_t v_index) const {
    const Pt shift = {abar_.component(0)[v_index],
                      vpart_.grid().dim == 2 ? abar_.component(1)[v_index] : 0.0};
    Pt xs = {x[0] - shift[0] * t, x[1] - shift[1] * t};
    if (quad_.periodic) {
        xs[0] = wrap_into(xs[0], quad_.lo[0], quad_.length(0));
        if (quad_.dim == 2) xs[1] = wrap_into(xs[1], quad_.lo[1], quad_.length(1));
    }
    return xpart_(xs) * vpart_.values()[v_index];
}

double EffectiveKineticSolution::pair(double t, const TestFunction& theta) const {
    const TorusGrid& vg = vpart_.grid();
    auto shifted_xpart = [&](Pt x, const Pt& s) {
        Pt xs = {x[0] - s[0], x[1] - s[1]};
        if (quad_.periodic) {
            xs[0] = wrap_into(xs[0], quad_.lo[0], quad_.length(0));
            if (quad_.dim == 2) xs[1] = wrap_into(xs[1], quad_.lo[1], quad_.length(1));
        }
        return xpart_(xs);
    };
    double total = 0.0;
    for (std::size_t c = 0; c < shift_of_class_.size(); ++c) {
        const Pt s = {shift_of_class_[c][0] * t, shift_of_class_[c][1] * t};
        if (theta.sep_x && theta.sep_v) {
            // tensor theta: one x-quadrature per slice group
            const double xq = box_quadrature(quad_, [&](Pt x) {
                return shifted_xpart(x, s) * theta.sep_x(x);
            });
            double vsum = 0.0;
            for (std::size_t i : members_[c]) {
                const int i0 = static_cast<int>(i % vg.n[0]);
                const int i1 = static_cast<int>(i / vg.n[0]);
                const auto vnode = vg.node(i0, i1);
                vsum += vpart_.values()[i] * theta.sep_v({vnode[0], vnode[1]});
            }
            total += xq * vsum;
        } else {
            total += box_quadrature(quad_, [&](Pt x) {
                const double xv = shifted_xpart(x, s);
                double acc = 0.0;
                for (std::size_t i : members_[c]) {
                    const int i0 = static_cast<int>(i % vg.n[0]);
                    const int i1 = static_cast<int>(i / vg.n[0]);
                    const auto vnode = vg.node(i0, i1);
                    acc += vpart_.values()[i] * theta.xv(x, {vnode[0], vnode[1]});
                }
                return xv * acc;
            });
        }
    }
    return total / static_cast<double>(vg.points());
}

std::vector<double> EffectiveKineticSolution::u_on_grid(double t, const BoxGrid& box) const {
    const TorusGrid& vg = vpart_.grid();
    std::vector<double> weights(shift_of_class_.size(), 0.0);
    for (std::size_t c = 0; c < members_.size(); ++c)
        for (std::size_t i : members_[c]) weights[c] += vpart_.values()[i];
    const int n0 = box.n[0], n1 = box.dim == 2 ? box.n[1] : 1;
    std::vector<double> u(box.points(), 0.0);
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i0 = 0; i0 < n0; ++i0) {
            const Pt x = box.node(i0, i1);
            double acc = 0.0;
            for (std::size_t c = 0; c < shift_of_class_.size(); ++c) {
                Pt xs = {x[0] - shift_of_class_[c][0] * t,
                         x[1] - shift_of_class_[c][1] * t};
                if (box.periodic) {
                    xs[0] = wrap_into(xs[0], box.lo[0], box.length(0));
                    if (box.dim == 2) xs[1] = wrap_into(xs[1], box.lo[1], box.length(1));
                }
                acc += weights[c] * xpart_(xs);
            }
            u[box.index(i0, i1)] = acc / static_cast<double>(vg.points());
        }
    return u;
}

double EffectiveKineticSolution::mass(double t) const {
    // translation per slice preserves each slice integral
    const TorusGrid& vg = vpart_.grid();
    const double xint = box_quadrature(quad_, xpart_);
    double vsum = 0.0;
    for (double v : vpart_.values()) vsum += v;
    (void)t;
    return xint * vsum / static_cast<double>(vg.points());
}

double EffectiveKineticSolution::kernel_residual(const PeriodicField& a) const {
    // the v-profile of f is vpart scaled per x; membership in the kernel is
    // the profile's property
    PeriodicField prof = vpart_;
    return advective_derivative(a, prof).l2_norm();
}

TimeWindow TimeWindow::bump(double t0, double t1, int n) {
    if (!(t1 > t0) || n < 3) throw Error("TimeWindow::bump: bad parameters");
    TimeWindow w;
    w.nodes.resize(n);
    w.weights.resize(n);
    const double h = (t1 - t0) / (n - 1);
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = t0 + i * h;
        const double s = 2.0 * (t - t0) / (t1 - t0) - 1.0;
        double val = 0.0;
        if (std::abs(s) < 1.0) val = std::exp(1.0 - 1.0 / (1.0 - s * s));
        w.nodes[i] = t;
        w.weights[i] = val * h * (i == 0 || i == n - 1 ? 0.5 : 1.0);
        mass += w.weights[i];
    }
    for (auto& x : w.weights) x /= mass;
    return w;
}

std::vector<ConvergenceReport> weak_limit_compare(
    const TransportProblem& problem, const EffectiveKineticSolution& effective,
    const std::vector<TestFunction>& thetas, const std::vector<double>& eps_list,
    const TimeWindow& window, double* l2_drift_worst) {
    // Effective pairings are eps-free; compute once.
    std::vector<std::vector<double>> eff(thetas.size());
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        eff[k].resize(window.nodes.size());
        for (std::size_t i = 0; i < window.nodes.size(); ++i)
            eff[k][i] = effective.pair(window.nodes[i], thetas[k]);
    }

    double drift_worst = 0.0;
    std::vector<ConvergenceReport> reports(thetas.size());
    for (std::size_t k = 0; k < thetas.size(); ++k) reports[k].scenario = "weak-limit";

    for (double eps : eps_list) {
        // Solver box: resolve the oscillation on the problem box.
        BoxGrid box = problem.box;
        for (int d = 0; d < box.dim; ++d) {
            const int need = static_cast<int>(std::ceil(8.0 * box.length(d) / eps));
            box.n[d] = std::max(box.n[d], need);
        }
        TransportProblem scaled = problem;
        scaled.box = box;
        OscillatorySolver solver(scaled, eps);

        std::vector<double> acc(thetas.size(), 0.0);
        double l2_first = -1.0;
        std::size_t ti = 0;
        solver.stream(window.nodes, [&](const TransportSnapshot& snap) {
            if (l2_first < 0.0) l2_first = snap.l2;
            if (snap.l2 > 0.0 && l2_first > 0.0)
                drift_worst = std::max(drift_worst,
                                       std::abs(snap.l2 - l2_first) / l2_first);
            for (std::size_t k = 0; k < thetas.size(); ++k) {
                const double pairing = two_scale_pairing(box, snap.u, thetas[k], eps);
                acc[k] += window.weights[ti] * (pairing - eff[k][ti]);
            }
            ++ti;
        });
        for (std::size_t k = 0; k < thetas.size(); ++k)
            reports[k].push(eps, acc[k], 0.0);
    }
    for (auto& r : reports) r.finalize();
    if (l2_drift_worst) *l2_drift_worst = drift_worst;
    return reports;
}

} // namespace kinhom
