#include "kinhom/hyperbolic/moments.hpp"

#include <cmath>

#include "kinhom/core/simd.hpp"
#include "kinhom/core/errors.hpp"

namespace kinhom {

MomentSystem assemble_moment_system(const std::vector<PeriodicField>& basis,
                                    const PeriodicField& a, int order) {
    if (order < 1 || order > static_cast<int>(basis.size()))
        throw Error("assemble_moment_system: order exceeds basis size");
    const TorusGrid& g = a.grid();
    for (const auto& psi : basis) psi.require_same_grid(a);

    const auto& sk = simd::active();
    const std::size_t npts = g.points();
    MomentSystem sys;
    sys.order = order;
    for (int j = 0; j < a.rank(); ++j) {
        DenseMatrix A(order);
        for (int k = 0; k < order; ++k)
            for (int n = 0; n < order; ++n)
                // grouped as a * (psi_n * psi_k): bitwise symmetric in (k, n)
                A.at(k, n) = sk.triple_dot(a.component(j), basis[n].component(0),
                                           basis[k].component(0), npts) /
                             static_cast<double>(npts);
        for (int k = 0; k < order; ++k)
            for (int n = 0; n < order; ++n)
                sys.symmetry_defect =
                    std::max(sys.symmetry_defect, std::abs(A.at(k, n) - A.at(n, k)));
        sys.coupling.push_back(std::move(A));
    }
    if (sys.symmetry_defect > 1e-8) throw SymmetryViolation(sys.symmetry_defect);
    return sys;
}

} // namespace kinhom
