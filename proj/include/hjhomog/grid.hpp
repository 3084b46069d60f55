#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hjhomog/errors.hpp"
#include "hjhomog/vec2.hpp"

namespace hjh {

struct PeriodicAxis {
    int axis = 1;        ///< 0 or 1
    double period = 1.0; ///< counts * spacing must equal the period
};

/** Uniform 1D/2D grid. Non-periodic axes carry n nodes over
 *  [origin, origin + (n-1) h]; a periodic axis carries n nodes over
 *  [origin, origin + period) with node n identified with node 0. */
struct Grid {
    int dim = 2;
    std::array<double, 2> origin{0.0, 0.0};
    std::array<double, 2> h{1.0, 1.0};
    std::array<int, 2> n{1, 1};
    std::optional<PeriodicAxis> periodic;

    static Grid line(double x0, double x1, int nodes);
    static Grid periodic_line(double x0, double period, int nodes);
    static Grid box(Vec2 lo, Vec2 hi, int n0, int n1);
    /// 2D strip, axis 0 bounded, axis 1 periodic.
    static Grid strip(double x0_lo, double x0_hi, int n0, double x1_lo, double period, int n1);

    int size() const { return dim == 1 ? n[0] : n[0] * n[1]; }
    int index(int i, int j) const { return i * n[1] + j; }
    double coord(int axis, int i) const { return origin[axis] + h[axis] * i; }
    double point1(int i) const { return coord(0, i); }
    Vec2 point2(int i, int j) const { return {coord(0, i), coord(1, j)}; }
    bool axis_periodic(int axis) const { return periodic && periodic->axis == axis; }
    double extent(int axis) const {
        return axis_periodic(axis) ? periodic->period : h[axis] * (n[axis] - 1);
    }

    void validate() const;
};

struct FieldMeta {
    std::string scheme;
    double dt = 0.0;
    double lambda = 0.0;
    double residual = 0.0;
    int iterations = 0;
    double cfl_factor = 0.0;
    double lipschitz = 0.0;   ///< max adjacent difference / spacing
    double value_bound = 0.0; ///< a-priori sup bound ell_max / lambda
};

/** Discrete value function on a grid with scheme metadata. */
struct ValueField {
    Grid grid;
    std::vector<double> values;
    FieldMeta meta;

    double at(int i, int j) const { return values[grid.index(i, j)]; }
    double& at(int i, int j) { return values[grid.index(i, j)]; }

    /// Multilinear interpolation; wraps on the periodic axis, clamps otherwise.
    double interp(Vec2 x) const;
    double interp1(double x) const;

    double max_abs() const;
    double discrete_lipschitz() const;
    /// value at the grid node nearest to x
    double nearest_value(Vec2 x) const;
    int nearest_index(Vec2 x) const;
};

/** Interpolation stencil of a point: up to 4 corners with weights. */
struct Stencil {
    int idx[4] = {0, 0, 0, 0};
    double w[4] = {0.0, 0.0, 0.0, 0.0};
    int count = 0;
};

Stencil make_stencil(const Grid& g, Vec2 x);
Stencil make_stencil1(const Grid& g, double x);

} // namespace hjh
