#pragma once

#include <memory>
#include <vector>

#include "kinhom/kernel/characteristics.hpp"
#include "kinhom/torus/field.hpp"

namespace kinhom {

/// Orthonormal basis (discrete L2 inner product) of the null space of the
/// advection operator g -> a . grad_v g on grid samples.
struct KernelBasis {
    TorusGrid grid;
    std::vector<PeriodicField> basis;
    std::vector<double> singular_values; // descending, full list for the dense path
    double sigma_max = 0.0;
    double cutoff = 0.0;        // threshold * sigma_max
    double gap_ratio = 0.0;     // smallest rejected singular value / cutoff
    bool ill_conditioned = false; // gap_ratio < 10: kernel dimension is grid-sensitive

    int dimension() const { return static_cast<int>(basis.size()); }
};

/// Dense route: assemble the operator on grid samples, full SVD, keep right
/// singular vectors below cutoff.  Constants are always in the kernel, so it
/// is never empty.  Grids above max_dense points are rejected (use the
/// matrix-free route).
KernelBasis kernel_basis(const PeriodicField& a, double svd_threshold = 1e-8,
                         std::size_t max_dense = 16384);

/// Matrix-free route for large grids: Chebyshev-filtered subspace iteration
/// on the normal operator, keeping vectors whose advection residual is below
/// cutoff.  dim_bound is an upper bound on the kernel dimension sought.
KernelBasis kernel_basis_matfree(const PeriodicField& a, double svd_threshold,
                                 int dim_bound, int max_rounds = 60,
                                 int cheb_degree = 200);

/// sin of the largest principal angle between the spans of two orthonormal
/// bases on the same grid; 1.0 when the dimensions differ.
double subspace_angle_sin(const KernelBasis& A, const KernelBasis& B);

/// Projection onto ker(a . grad_v), by either route.
class ProjectionOperator {
public:
    enum class Mode { NullSpace, Birkhoff };

    static ProjectionOperator nullspace(const PeriodicField& a,
                                        double svd_threshold = 1e-8);
    static ProjectionOperator nullspace_from(KernelBasis basis);
    static ProjectionOperator birkhoff(const PeriodicField& a, double horizon,
                                       double step = 0.0);

    PeriodicField project(const PeriodicField& f) const; // scalar fields
    /// Componentwise projection of a vector field (e.g. abar = P a).
    PeriodicField project_vector(const PeriodicField& a) const;

    Mode mode() const { return mode_; }
    const KernelBasis& basis() const; // NullSpace mode only
    double horizon() const { return horizon_; }
    const TorusGrid& grid() const { return grid_; }

private:
    ProjectionOperator() = default;
    Mode mode_ = Mode::NullSpace;
    TorusGrid grid_;
    std::shared_ptr<KernelBasis> basis_;
    std::shared_ptr<Characteristics> chars_;
    double horizon_ = 0.0;
};

} // namespace kinhom
