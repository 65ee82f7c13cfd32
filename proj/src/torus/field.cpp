#include "kinhom/torus/field.hpp"

#include <cmath>

#include "kinhom/core/simd.hpp"

namespace kinhom {

PeriodicField::PeriodicField(TorusGrid grid, int rank)
    : grid_(grid), rank_(rank), values_(grid.points() * rank, 0.0) {
    if (rank < 1) throw Error("PeriodicField: rank must be >= 1");
}

PeriodicField::PeriodicField(TorusGrid grid, int rank, std::vector<double> values)
    : grid_(grid), rank_(rank), values_(std::move(values)) {
    if (values_.size() != grid_.points() * static_cast<std::size_t>(rank))
        throw Error("PeriodicField: value array length mismatch");
    if (!finite()) throw Error("PeriodicField: non-finite samples");
}

PeriodicField PeriodicField::sample(const TorusGrid& grid,
                                    const std::function<double(double, double)>& f) {
    PeriodicField out(grid, 1);
    const int n1 = grid.dim == 2 ? grid.n[1] : 1;
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i0 = 0; i0 < grid.n[0]; ++i0) {
            const auto v = grid.node(i0, i1);
            out.at(0, i0, i1) = f(v[0], v[1]);
        }
    if (!out.finite()) throw Error("PeriodicField::sample: non-finite samples");
    return out;
}

PeriodicField PeriodicField::sample_vector(
    const TorusGrid& grid,
    const std::function<std::array<double, 2>(double, double)>& f) {
    PeriodicField out(grid, grid.dim);
    const int n1 = grid.dim == 2 ? grid.n[1] : 1;
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i0 = 0; i0 < grid.n[0]; ++i0) {
            const auto v = grid.node(i0, i1);
            const auto a = f(v[0], v[1]);
            for (int c = 0; c < grid.dim; ++c) out.at(c, i0, i1) = a[c];
        }
    if (!out.finite()) throw Error("PeriodicField::sample_vector: non-finite samples");
    return out;
}

PeriodicField PeriodicField::constant(const TorusGrid& grid, double c) {
    PeriodicField out(grid, 1);
    for (auto& v : out.values_) v = c;
    return out;
}

double PeriodicField::l2_norm() const {
    const auto& k = simd::active();
    const double ss = k.dot(values_.data(), values_.data(), values_.size());
    return std::sqrt(ss / points());
}

double PeriodicField::max_abs() const {
    double m = 0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool PeriodicField::finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

void PeriodicField::require_same_grid(const PeriodicField& o) const {
    if (!(grid_ == o.grid_)) throw GridMismatch("PeriodicField operands");
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& o) {
    require_same_grid(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}
PeriodicField& PeriodicField::operator-=(const PeriodicField& o) {
    require_same_grid(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}
PeriodicField& PeriodicField::operator*=(double s) {
    for (auto& v : values_) v *= s;
    return *this;
}

double inner(const PeriodicField& a, const PeriodicField& b) {
    a.require_same_grid(b);
    const auto& k = simd::active();
    return k.dot(a.values().data(), b.values().data(), a.values().size()) /
           static_cast<double>(a.points());
}

TwoScaleField::TwoScaleField(BoxGrid xgrid, TorusGrid vgrid)
    : xg_(xgrid), vg_(vgrid), values_(xgrid.points() * vgrid.points(), 0.0) {}

TwoScaleField TwoScaleField::sample(
    const BoxGrid& xg, const TorusGrid& vg,
    const std::function<double(std::array<double, 2>, std::array<double, 2>)>& f) {
    TwoScaleField out(xg, vg);
    const int xn1 = xg.dim == 2 ? xg.n[1] : 1;
    const int vn1 = vg.dim == 2 ? vg.n[1] : 1;
    for (int j1 = 0; j1 < xn1; ++j1)
        for (int j0 = 0; j0 < xg.n[0]; ++j0) {
            double* s = out.slice(xg.index(j0, j1));
            const auto x = xg.node(j0, j1);
            for (int i1 = 0; i1 < vn1; ++i1)
                for (int i0 = 0; i0 < vg.n[0]; ++i0)
                    s[vg.index(i0, i1)] = f(x, vg.node(i0, i1));
        }
    if (!out.finite()) throw Error("TwoScaleField::sample: non-finite samples");
    return out;
}

double TwoScaleField::l2_norm() const {
    const auto& k = simd::active();
    const double ss = k.dot(values_.data(), values_.data(), values_.size());
    double vol = xg_.cell_volume();
    return std::sqrt(ss * vol / vg_.points());
}

bool TwoScaleField::finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace kinhom
