#pragma once

#include <functional>
#include <vector>

#include "kinhom/torus/grid.hpp"

namespace kinhom {

/// Real samples on a TorusGrid.  rank 1 for scalars, rank d for vector
/// fields; components are stored as consecutive planes.
class PeriodicField {
public:
    PeriodicField() = default;
    PeriodicField(TorusGrid grid, int rank);
    PeriodicField(TorusGrid grid, int rank, std::vector<double> values);

    /// Sample a callable f(v) at the grid nodes (scalar field).
    static PeriodicField sample(const TorusGrid& grid,
                                const std::function<double(double, double)>& f);
    /// Sample a vector callable componentwise; rank = grid.dim.
    static PeriodicField sample_vector(
        const TorusGrid& grid,
        const std::function<std::array<double, 2>(double, double)>& f);
    static PeriodicField constant(const TorusGrid& grid, double c);

    const TorusGrid& grid() const { return grid_; }
    int rank() const { return rank_; }
    std::size_t points() const { return grid_.points(); }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    const double* component(int c) const { return values_.data() + c * points(); }
    double* component(int c) { return values_.data() + c * points(); }

    double at(int c, int i0, int i1 = 0) const {
        return values_[c * points() + grid_.index(i0, i1)];
    }
    double& at(int c, int i0, int i1 = 0) {
        return values_[c * points() + grid_.index(i0, i1)];
    }

    /// Discrete L2 norm: sqrt(mean of squares), matching the unit torus measure.
    double l2_norm() const;
    double max_abs() const;
    bool finite() const;

    // Elementwise algebra (fields on the same grid, same rank).
    PeriodicField& operator+=(const PeriodicField& o);
    PeriodicField& operator-=(const PeriodicField& o);
    PeriodicField& operator*=(double s);
    friend PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
    friend PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
    friend PeriodicField operator*(double s, PeriodicField a) { return a *= s; }

    void require_same_grid(const PeriodicField& o) const;

private:
    TorusGrid grid_;
    int rank_ = 1;
    std::vector<double> values_;
};

/// Discrete L2 inner product on the torus: mean of pointwise products.
double inner(const PeriodicField& a, const PeriodicField& b);

/// Samples f(x_i, v_j) on a box-times-torus product grid (v index fastest).
class TwoScaleField {
public:
    TwoScaleField() = default;
    TwoScaleField(BoxGrid xgrid, TorusGrid vgrid);

    static TwoScaleField sample(
        const BoxGrid& xg, const TorusGrid& vg,
        const std::function<double(std::array<double, 2>, std::array<double, 2>)>& f);

    const BoxGrid& xgrid() const { return xg_; }
    const TorusGrid& vgrid() const { return vg_; }

    std::size_t points() const { return xg_.points() * vg_.points(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double at(std::size_t xidx, std::size_t vidx) const {
        return values_[xidx * vg_.points() + vidx];
    }
    double& at(std::size_t xidx, std::size_t vidx) {
        return values_[xidx * vg_.points() + vidx];
    }
    const double* slice(std::size_t xidx) const {
        return values_.data() + xidx * vg_.points();
    }
    double* slice(std::size_t xidx) { return values_.data() + xidx * vg_.points(); }

    /// L2 norm with the product measure (box volume x unit torus).
    double l2_norm() const;
    bool finite() const;

private:
    BoxGrid xg_;
    TorusGrid vg_;
    std::vector<double> values_;
};

} // namespace kinhom
