#pragma once

#include <vector>

#include "kinhom/torus/field.hpp"

namespace kinhom {

struct DenseMatrix {
    int n = 0;
    std::vector<double> a;
    explicit DenseMatrix(int n_ = 0) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// Galerkin moments of the effective kinetic equation on a kernel basis:
/// coupling[j](k, n) = <a_j psi_n, psi_k>.  Real weights make every coupling
/// matrix symmetric, so the truncated system is symmetric hyperbolic.
struct MomentSystem {
    int order = 0;
    std::vector<DenseMatrix> coupling; // one per space direction
    double symmetry_defect = 0.0;
};

/// Assemble the order-M truncation on the first M basis fields.  Throws
/// SymmetryViolation when a coupling matrix departs from symmetry beyond
/// 1e-8 (a sign of a bad basis or quadrature).
MomentSystem assemble_moment_system(const std::vector<PeriodicField>& basis,
                                    const PeriodicField& a, int order);

} // namespace kinhom
