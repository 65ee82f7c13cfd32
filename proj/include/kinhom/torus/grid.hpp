#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "kinhom/core/errors.hpp"

namespace kinhom {

/// Uniform collocation grid on the unit torus T^d, d in {1, 2}.
/// Nodes are x_j = j / n[i], j = 0 .. n[i]-1 (no duplicated endpoint).
struct TorusGrid {
    int dim = 1;
    std::array<int, 2> n = {1, 1};

    TorusGrid() = default;
    explicit TorusGrid(int n0) : dim(1), n{n0, 1} { validate(); }
    TorusGrid(int n0, int n1) : dim(2), n{n0, n1} { validate(); }

    void validate() const {
        if (dim < 1 || dim > 2) throw Error("TorusGrid: dim must be 1 or 2");
        for (int i = 0; i < dim; ++i)
            if (n[i] < 4) throw Error("TorusGrid: resolution must be >= 4");
    }

    std::size_t points() const {
        return static_cast<std::size_t>(n[0]) * (dim == 2 ? n[1] : 1);
    }
    double spacing(int axis) const { return 1.0 / n[axis]; }

    // Flat index: axis 0 fastest.
    std::size_t index(int i0, int i1 = 0) const {
        return static_cast<std::size_t>(i1) * n[0] + i0;
    }
    std::array<double, 2> node(int i0, int i1 = 0) const {
        return {static_cast<double>(i0) / n[0],
                dim == 2 ? static_cast<double>(i1) / n[1] : 0.0};
    }

    bool operator==(const TorusGrid& o) const { return dim == o.dim && n == o.n; }
};

/// Uniform grid on a box in R^d.  Periodic boxes use nodes x_j = lo + j*h
/// (matching the torus convention); compact-support boxes use cell midpoints
/// so no sample sits on the boundary.
struct BoxGrid {
    int dim = 1;
    std::array<double, 2> lo = {0.0, 0.0};
    std::array<double, 2> hi = {1.0, 1.0};
    std::array<int, 2> n = {1, 1};
    bool periodic = true;

    BoxGrid() = default;
    BoxGrid(double lo0, double hi0, int n0, bool periodic_ = true)
        : dim(1), lo{lo0, 0}, hi{hi0, 1}, n{n0, 1}, periodic(periodic_) { validate(); }
    BoxGrid(std::array<double, 2> lo_, std::array<double, 2> hi_, std::array<int, 2> n_,
            bool periodic_ = true)
        : dim(2), lo(lo_), hi(hi_), n(n_), periodic(periodic_) { validate(); }

    void validate() const {
        for (int i = 0; i < dim; ++i) {
            if (!(hi[i] > lo[i])) throw Error("BoxGrid: need hi > lo");
            if (n[i] < 4) throw Error("BoxGrid: resolution must be >= 4");
        }
    }

    std::size_t points() const {
        return static_cast<std::size_t>(n[0]) * (dim == 2 ? n[1] : 1);
    }
    double length(int axis) const { return hi[axis] - lo[axis]; }
    double spacing(int axis) const { return length(axis) / n[axis]; }
    double max_spacing() const {
        double s = spacing(0);
        if (dim == 2 && spacing(1) > s) s = spacing(1);
        return s;
    }
    double cell_volume() const {
        return dim == 2 ? spacing(0) * spacing(1) : spacing(0);
    }

    std::size_t index(int i0, int i1 = 0) const {
        return static_cast<std::size_t>(i1) * n[0] + i0;
    }
    std::array<double, 2> node(int i0, int i1 = 0) const {
        const double off = periodic ? 0.0 : 0.5;
        return {lo[0] + (i0 + off) * spacing(0),
                dim == 2 ? lo[1] + (i1 + off) * spacing(1) : 0.0};
    }

    bool operator==(const BoxGrid& o) const {
        return dim == o.dim && lo == o.lo && hi == o.hi && n == o.n &&
               periodic == o.periodic;
    }
};

} // namespace kinhom
