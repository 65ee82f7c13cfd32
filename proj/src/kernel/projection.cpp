#include "kinhom/kernel/projection.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "kinhom/core/rng.hpp"
#include "kinhom/torus/spectral.hpp"

namespace kinhom {

namespace {

// Apply g -> a . grad_v g to a sample vector.
std::vector<double> apply_advection(const PeriodicField& a,
                                    const std::vector<double>& g) {
    PeriodicField gf(a.grid(), 1, g);
    return advective_derivative(a, gf).values();
}

KernelBasis make_basis_from_columns(const PeriodicField& a, const Eigen::MatrixXd& V,
                                    const std::vector<double>& all_singulars,
                                    double threshold) {
    const TorusGrid& g = a.grid();
    const std::size_t n = g.points();
    KernelBasis kb;
    kb.grid = g;
    kb.singular_values = all_singulars;
    kb.sigma_max = all_singulars.empty() ? 0.0 : all_singulars.front();
    kb.cutoff = threshold * kb.sigma_max;

    const double scale = std::sqrt(static_cast<double>(n));
    double smallest_rejected = -1.0;
    for (double s : all_singulars)
        if (s > kb.cutoff) smallest_rejected = s; // list is descending
    for (int j = 0; j < V.cols(); ++j) {
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i) vals[i] = V(static_cast<long>(i), j) * scale;
        kb.basis.emplace_back(g, 1, std::move(vals));
    }
    if (kb.cutoff > 0.0 && smallest_rejected > 0.0) {
        kb.gap_ratio = smallest_rejected / kb.cutoff;
        kb.ill_conditioned = kb.gap_ratio < 10.0;
    } else {
        kb.gap_ratio = 0.0;
        kb.ill_conditioned = false;
    }
    return kb;
}

} // namespace

KernelBasis kernel_basis(const PeriodicField& a, double svd_threshold,
                         std::size_t max_dense) {
    const TorusGrid& g = a.grid();
    if (a.rank() != g.dim) throw Error("kernel_basis: velocity of rank d expected");
    {
        const double worst = divergence_v(a).max_abs();
        if (worst > 1e-8) throw HypothesisViolation("div_v a = 0", worst, 0.0, 0.0);
    }
    const std::size_t n = g.points();
    if (n > max_dense)
        throw Error("kernel_basis: grid too large for the dense route; use "
                    "kernel_basis_matfree");

    // Operator columns by application to unit samples.
    Eigen::MatrixXd B(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = apply_advection(a, e);
        for (std::size_t i = 0; i < n; ++i) B(static_cast<long>(i), static_cast<long>(j)) = col[i];
        e[j] = 0.0;
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    std::vector<double> singulars(sv.data(), sv.data() + sv.size());
    const double sigma_max = singulars.empty() ? 0.0 : singulars.front();
    const double cutoff = svd_threshold * sigma_max;

    // Right singular vectors with singular value below the cutoff (the zero
    // operator keeps everything).
    std::vector<int> keep;
    for (int i = 0; i < sv.size(); ++i)
        if (sigma_max == 0.0 || sv(i) <= cutoff) keep.push_back(i);

    Eigen::MatrixXd V(n, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) V.col(k) = svd.matrixV().col(keep[k]);
    return make_basis_from_columns(a, V, singulars, svd_threshold);
}

KernelBasis kernel_basis_matfree(const PeriodicField& a, double svd_threshold,
                                 int dim_bound, int max_rounds, int cheb_degree) {
    const TorusGrid& g = a.grid();
    if (a.rank() != g.dim) throw Error("kernel_basis_matfree: velocity of rank d expected");
    const std::size_t n = g.points();
    const int block = std::min<std::size_t>(n, dim_bound + 8);

    // Normal operator M = B^T B through forward and adjoint applications.
    // With div a = 0 the operator is skew-adjoint up to discretization, so
    // B^T = -B up to the same tolerance; use the exact transpose action via
    // the identity <B g, h> = <g, B^T h> with B^T h = -div_v(a h).
    auto apply_M = [&](const std::vector<double>& x) {
        PeriodicField xf(g, 1, x);
        PeriodicField bx = advective_derivative(a, xf);
        // B^T y = -div(a y)
        PeriodicField ay(g, a.rank());
        for (int c = 0; c < a.rank(); ++c)
            for (std::size_t i = 0; i < n; ++i)
                ay.component(c)[i] = a.component(c)[i] * bx.component(0)[i];
        PeriodicField mty = divergence_v(ay);
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = -mty.values()[i];
        return out;
    };

    // Largest eigenvalue of M by power iteration.
    Rng rng(12345);
    std::vector<double> p(n);
    for (auto& v : p) v = rng.gaussian();
    double lam_max = 0.0;
    for (int it = 0; it < 30; ++it) {
        std::vector<double> q = apply_M(p);
        double norm = 0.0;
        for (double v : q) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) { lam_max = 0.0; break; }
        for (std::size_t i = 0; i < n; ++i) p[i] = q[i] / norm;
        lam_max = norm;
    }
    lam_max *= 1.05; // safety margin

    const double sigma_max = std::sqrt(std::max(lam_max, 0.0));
    const double cutoff = svd_threshold * sigma_max;

    if (sigma_max == 0.0) {
        // Zero operator: kernel is everything; return canonical unit basis.
        Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, std::min<std::size_t>(n, block));
        return make_basis_from_columns(a, V, std::vector<double>(n, 0.0), svd_threshold);
    }

    // Chebyshev filter on [lo, lam_max] damping everything above lo.  The
    // lower edge starts near zero and is raised adaptively toward the
    // smallest non-kernel Ritz value, which is what actually separates the
    // kernel block.
    double lo = std::max(lam_max * 1e-8, 4.0 * cutoff * cutoff);
    auto filter = [&](Eigen::MatrixXd& X) {
        const double c = 0.5 * (lam_max + lo), e2 = 0.5 * (lam_max - lo);
        Eigen::MatrixXd t_prev = X;
        Eigen::MatrixXd t_cur(X.rows(), X.cols());
        auto apply_cols = [&](const Eigen::MatrixXd& in, Eigen::MatrixXd& out,
                              double alpha, double beta, const Eigen::MatrixXd& sub) {
            // out = alpha*(M in - c in)/e2 + beta*sub
            for (int j = 0; j < in.cols(); ++j) {
                std::vector<double> x(n);
                for (std::size_t i = 0; i < n; ++i) x[i] = in(static_cast<long>(i), j);
                std::vector<double> mx = apply_M(x);
                for (std::size_t i = 0; i < n; ++i)
                    out(static_cast<long>(i), j) =
                        alpha * (mx[i] - c * x[i]) / e2 +
                        (beta == 0.0 ? 0.0 : beta * sub(static_cast<long>(i), j));
            }
        };
        apply_cols(t_prev, t_cur, 1.0, 0.0, t_prev);
        for (int k = 2; k <= cheb_degree; ++k) {
            Eigen::MatrixXd t_next(X.rows(), X.cols());
            apply_cols(t_cur, t_next, 2.0, -1.0, t_prev);
            t_prev.swap(t_cur);
            t_cur.swap(t_next);
        }
        X = t_cur;
    };

    Eigen::MatrixXd X(n, block);
    for (long i = 0; i < X.rows(); ++i)
        for (int j = 0; j < block; ++j) X(i, j) = rng.gaussian();

    std::vector<double> residuals(block, 1e300);
    for (int round = 0; round < max_rounds; ++round) {
        filter(X);
        // Orthonormalize, then Rayleigh-Ritz within the block so the columns
        // split into near-kernel and rejected directions.
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
        X = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
        Eigen::MatrixXd MX(n, block);
        for (int j = 0; j < block; ++j) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = X(static_cast<long>(i), j);
            const std::vector<double> mx = apply_M(x);
            for (std::size_t i = 0; i < n; ++i) MX(static_cast<long>(i), j) = mx[i];
        }
        Eigen::MatrixXd H = X.transpose() * MX;
        H = 0.5 * (H + H.transpose().eval());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        X = X * es.eigenvectors(); // Ritz vectors, ascending Ritz values

        int small = 0;
        double smallest_rejected_ritz = lam_max;
        for (int j = 0; j < block; ++j) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = X(static_cast<long>(i), j);
            const std::vector<double> bx = apply_advection(a, PeriodicField(g, 1, x).values());
            double r = 0.0;
            for (double v : bx) r += v * v;
            residuals[j] = std::sqrt(r);
            if (residuals[j] <= cutoff)
                ++small;
            else
                smallest_rejected_ritz =
                    std::min(smallest_rejected_ritz, std::max(es.eigenvalues()(j), 0.0));
        }
        if (small >= std::min(block, dim_bound)) break;
        lo = std::min(0.5 * lam_max,
                      std::max(lo, 0.5 * smallest_rejected_ritz));
    }

    // Keep converged columns, at most dim_bound (residual-sorted order).
    std::vector<int> order(block);
    for (int j = 0; j < block; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return residuals[i] < residuals[j]; });
    std::vector<int> keep;
    for (int j : order)
        if (residuals[j] <= cutoff && static_cast<int>(keep.size()) < dim_bound)
            keep.push_back(j);
    Eigen::MatrixXd V(n, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) V.col(k) = X.col(keep[k]);
    // Re-orthonormalize the kept set.
    if (!keep.empty()) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(V);
        V = qr.householderQ() * Eigen::MatrixXd::Identity(n, keep.size());
    }
    std::vector<double> singulars = {sigma_max};
    return make_basis_from_columns(a, V, singulars, svd_threshold);
}

double subspace_angle_sin(const KernelBasis& A, const KernelBasis& B) {
    if (!(A.grid == B.grid)) throw GridMismatch("subspace_angle_sin");
    if (A.dimension() != B.dimension()) return 1.0;
    if (A.dimension() == 0) return 0.0;
    const std::size_t n = A.grid.points();
    const int k = A.dimension();
    Eigen::MatrixXd M(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            M(i, j) = inner(A.basis[i], B.basis[j]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    double cos_min = svd.singularValues()(k - 1);
    cos_min = std::min(1.0, std::max(-1.0, cos_min));
    (void)n;
    return std::sqrt(std::max(0.0, 1.0 - cos_min * cos_min));
}

ProjectionOperator ProjectionOperator::nullspace(const PeriodicField& a,
                                                 double svd_threshold) {
    return nullspace_from(kernel_basis(a, svd_threshold));
}

ProjectionOperator ProjectionOperator::nullspace_from(KernelBasis basis) {
    ProjectionOperator p;
    p.mode_ = Mode::NullSpace;
    p.grid_ = basis.grid;
    p.basis_ = std::make_shared<KernelBasis>(std::move(basis));
    return p;
}

ProjectionOperator ProjectionOperator::birkhoff(const PeriodicField& a, double horizon,
                                                double step) {
    if (!(horizon > 0.0)) throw Error("ProjectionOperator::birkhoff: horizon > 0 required");
    ProjectionOperator p;
    p.mode_ = Mode::Birkhoff;
    p.grid_ = a.grid();
    p.chars_ = std::make_shared<Characteristics>(a, step);
    p.horizon_ = horizon;
    return p;
}

const KernelBasis& ProjectionOperator::basis() const {
    if (!basis_) throw Error("ProjectionOperator: no basis in Birkhoff mode");
    return *basis_;
}

PeriodicField ProjectionOperator::project(const PeriodicField& f) const {
    if (!(f.grid() == grid_)) throw GridMismatch("ProjectionOperator::project");
    if (f.rank() != 1) throw Error("project: scalar field expected");
    if (mode_ == Mode::Birkhoff) return chars_->birkhoff_average(f, horizon_);
    PeriodicField out(grid_, 1);
    for (const auto& psi : basis_->basis) {
        const double c = inner(f, psi);
        const double* pv = psi.component(0);
        for (std::size_t i = 0; i < out.values().size(); ++i)
            out.values()[i] += c * pv[i];
    }
    return out;
}

PeriodicField ProjectionOperator::project_vector(const PeriodicField& a) const {
    if (!(a.grid() == grid_)) throw GridMismatch("ProjectionOperator::project_vector");
    PeriodicField out(grid_, a.rank());
    for (int c = 0; c < a.rank(); ++c) {
        PeriodicField comp(grid_, 1,
                           std::vector<double>(a.component(c), a.component(c) + a.points()));
        PeriodicField pc = project(comp);
        for (std::size_t i = 0; i < a.points(); ++i)
            out.component(c)[i] = pc.values()[i];
    }
    return out;
}

} // namespace kinhom
