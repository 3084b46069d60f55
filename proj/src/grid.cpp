#include "hjhomog/grid.hpp"

#include <algorithm>
#include <cmath>

namespace hjh {

Grid Grid::line(double x0, double x1, int nodes) {
    Grid g;
    g.dim = 1;
    g.origin = {x0, 0.0};
    g.n = {nodes, 1};
    g.h = {nodes > 1 ? (x1 - x0) / (nodes - 1) : 1.0, 1.0};
    g.validate();
    return g;
}

Grid Grid::periodic_line(double x0, double period, int nodes) {
    Grid g;
    g.dim = 1;
    g.origin = {x0, 0.0};
    g.n = {nodes, 1};
    g.h = {period / nodes, 1.0};
    g.periodic = PeriodicAxis{0, period};
    g.validate();
    return g;
}

Grid Grid::box(Vec2 lo, Vec2 hi, int n0, int n1) {
    Grid g;
    g.dim = 2;
    g.origin = {lo.x, lo.y};
    g.n = {n0, n1};
    g.h = {(hi.x - lo.x) / (n0 - 1), (hi.y - lo.y) / (n1 - 1)};
    g.validate();
    return g;
}

Grid Grid::strip(double x0_lo, double x0_hi, int n0, double x1_lo, double period, int n1) {
    Grid g;
    g.dim = 2;
    g.origin = {x0_lo, x1_lo};
    g.n = {n0, n1};
    g.h = {(x0_hi - x0_lo) / (n0 - 1), period / n1};
    g.periodic = PeriodicAxis{1, period};
    g.validate();
    return g;
}

void Grid::validate() const {
    for (int a = 0; a < dim; ++a) {
        if (!(h[a] > 0.0))
            throw InvalidArguments("grid: spacing must be positive");
        if (n[a] < 2)
            throw InvalidArguments("grid: need at least 2 nodes per axis");
    }
    if (periodic) {
        const int a = periodic->axis;
        if (a < 0 || a >= dim)
            throw InvalidArguments("grid: periodic axis out of range");
        if (std::abs(n[a] * h[a] - periodic->period) > 1e-12 * periodic->period)
            throw InvalidArguments("grid: counts * spacing must equal the period");
    }
}

namespace {

// Base index and weight along one axis (wrap or clamp).
inline void axis_locate(const Grid& g, int axis, double x, int& i0, int& i1, double& w) {
    const double u = (x - g.origin[axis]) / g.h[axis];
    if (g.axis_periodic(axis)) {
        const int n = g.n[axis];
        double uw = std::fmod(u, static_cast<double>(n));
        if (uw < 0.0)
            uw += n;
        int i = static_cast<int>(uw);
        if (i >= n)
            i = n - 1;
        w = uw - i;
        i0 = i;
        i1 = (i + 1) % n;
    } else {
        const int n = g.n[axis];
        double uc = std::clamp(u, 0.0, static_cast<double>(n - 1));
        int i = static_cast<int>(uc);
        if (i >= n - 1)
            i = n - 2;
        w = uc - i;
        i0 = i;
        i1 = i + 1;
    }
}

} // namespace

Stencil make_stencil1(const Grid& g, double x) {
    Stencil s;
    int i0, i1;
    double w;
    axis_locate(g, 0, x, i0, i1, w);
    s.idx[0] = i0;
    s.w[0] = 1.0 - w;
    s.idx[1] = i1;
    s.w[1] = w;
    s.count = 2;
    return s;
}

Stencil make_stencil(const Grid& g, Vec2 x) {
    if (g.dim == 1)
        return make_stencil1(g, x.x);
    Stencil s;
    int i0, i1, j0, j1;
    double wi, wj;
    axis_locate(g, 0, x.x, i0, i1, wi);
    axis_locate(g, 1, x.y, j0, j1, wj);
    s.idx[0] = g.index(i0, j0);
    s.w[0] = (1.0 - wi) * (1.0 - wj);
    s.idx[1] = g.index(i1, j0);
    s.w[1] = wi * (1.0 - wj);
    s.idx[2] = g.index(i0, j1);
    s.w[2] = (1.0 - wi) * wj;
    s.idx[3] = g.index(i1, j1);
    s.w[3] = wi * wj;
    s.count = 4;
    return s;
}

double ValueField::interp(Vec2 x) const {
    const Stencil s = make_stencil(grid, x);
    double v = 0.0;
    for (int k = 0; k < s.count; ++k)
        v += s.w[k] * values[s.idx[k]];
    return v;
}

double ValueField::interp1(double x) const {
    const Stencil s = make_stencil1(grid, x);
    return s.w[0] * values[s.idx[0]] + s.w[1] * values[s.idx[1]];
}

double ValueField::max_abs() const {
    double m = 0.0;
    for (double v : values)
        m = std::max(m, std::abs(v));
    return m;
}

double ValueField::discrete_lipschitz() const {
    double lip = 0.0;
    if (grid.dim == 1) {
        for (int i = 0; i + 1 < grid.n[0]; ++i)
            lip = std::max(lip, std::abs(values[i + 1] - values[i]) / grid.h[0]);
        if (grid.axis_periodic(0))
            lip = std::max(lip, std::abs(values[0] - values[grid.n[0] - 1]) / grid.h[0]);
        return lip;
    }
    for (int i = 0; i < grid.n[0]; ++i)
        for (int j = 0; j < grid.n[1]; ++j) {
            if (i + 1 < grid.n[0])
                lip = std::max(lip, std::abs(at(i + 1, j) - at(i, j)) / grid.h[0]);
            if (j + 1 < grid.n[1])
                lip = std::max(lip, std::abs(at(i, j + 1) - at(i, j)) / grid.h[1]);
            else if (grid.axis_periodic(1))
                lip = std::max(lip, std::abs(at(i, 0) - at(i, j)) / grid.h[1]);
        }
    return lip;
}

int ValueField::nearest_index(Vec2 x) const {
    const auto near_axis = [&](int axis, double v) {
        double u = (v - grid.origin[axis]) / grid.h[axis];
        if (grid.axis_periodic(axis)) {
            const int n = grid.n[axis];
            double uw = std::fmod(u, static_cast<double>(n));
            if (uw < 0.0)
                uw += n;
            int i = static_cast<int>(std::lround(uw));
            return i % n;
        }
        return static_cast<int>(std::clamp(std::lround(u), 0L, static_cast<long>(grid.n[axis] - 1)));
    };
    if (grid.dim == 1)
        return near_axis(0, x.x);
    return grid.index(near_axis(0, x.x), near_axis(1, x.y));
}

double ValueField::nearest_value(Vec2 x) const { return values[nearest_index(x)]; }

} // namespace hjh
