#include "hjhomog/effective_solver.hpp"

#include <algorithm>
#include <cmath>

#include "hjhomog/junction1d.hpp"
#include "hjhomog/value_iteration.hpp"

namespace hjh {

namespace {

Junction1DOptions options_for(const EffectiveProblemSpec& spec) {
    Junction1DOptions jo;
    jo.tol = spec.tol * 1e-2;
    if (spec.pair.far_field_cost) {
        const FarFieldCost c = *spec.pair.far_field_cost;
        jo.source = [c](double x) { return -c(x); };
    }
    return jo;
}

ValueField solve_flat(const EffectiveProblemSpec& spec) {
    const double W = spec.window;
    const int n = 2 * static_cast<int>(std::lround(W * spec.nodes_per_unit_1d)) + 1;
    const Grid grid = Grid::line(-W, W, n);
    std::vector<Piece> pieces = {
        {-W, 0.0, hamiltonian_line(spec.pair.left, 0.0)},
        {0.0, W, hamiltonian_line(spec.pair.right, 0.0)},
    };
    const double limiter = std::max(spec.limiter_lm, spec.limiter_mr);
    return junction_solve_1d(pieces, {{0.0, limiter}}, spec.lambda, grid, options_for(spec));
}

ValueField solve_eta_strip(const EffectiveProblemSpec& spec) {
    if (!spec.hm)
        throw InvalidArguments("solve_effective: EtaStrip requires the effective table");
    const double W = spec.window;
    const int npu = spec.nodes_per_unit_1d;
    if (std::abs(spec.eta * npu - std::lround(spec.eta * npu)) > 1e-9)
        throw InvalidArguments("solve_effective: eta must be a multiple of the 1D spacing");
    const int n = 2 * static_cast<int>(std::lround(W * npu)) + 1;
    const Grid grid = Grid::line(-W, W, n);
    std::vector<Piece> pieces = {
        {-W, -spec.eta, hamiltonian_line(spec.pair.left, 0.0)},
        {-spec.eta, spec.eta, spec.hm->line_at(0.0)},
        {spec.eta, W, hamiltonian_line(spec.pair.right, 0.0)},
    };
    const std::vector<Junction> junctions = {{-spec.eta, spec.limiter_lm},
                                             {spec.eta, spec.limiter_mr}};
    return junction_solve_1d(pieces, junctions, spec.lambda, grid, options_for(spec));
}

ValueField solve_direct(const EffectiveProblemSpec& spec) {
    const InterfaceSpec geom{spec.profile, spec.eta, spec.eps};
    geom.validate();
    if (spec.n2_per_period < 8)
        throw ResolutionError("solve_effective: the eta*eps period spans fewer than 8 cells");
    const double W = spec.window;
    double h1 = spec.h1_direct;
    if (h1 <= 0.0)
        h1 = std::clamp(spec.eta / 8.0, 1.0 / 96.0, 1.0 / 16.0);
    const int n1 = 2 * static_cast<int>(std::lround(W / h1)) + 1;
    const double period = spec.eta * spec.eps;
    const Grid grid = Grid::strip(-W, W, n1, 0.0, period, spec.n2_per_period);

    DPProblem prob;
    prob.pair = spec.pair;
    prob.membership = [geom](Vec2 x) { return region_of(geom, x); };
    prob.use_far_field = spec.pair.far_field_cost.has_value();
    prob.lambda = spec.lambda;
    prob.dt = 0.4 * grid.h[0] / std::max(spec.pair.max_speed(), 1e-9);

    SolveOptions so;
    so.tol = spec.tol;
    return value_iteration(prob, grid, so);
}

} // namespace

ValueField solve_effective(const EffectiveProblemSpec& spec) {
    ensure_assumptions(spec.pair);
    switch (spec.kind) {
    case EffectiveKind::FlatLimit:
        return solve_flat(spec);
    case EffectiveKind::EtaStrip:
        return solve_eta_strip(spec);
    case EffectiveKind::Direct:
        return solve_direct(spec);
    }
    throw InvalidArguments("solve_effective: unknown kind");
}

CompareReport compare_fields(const ValueField& a, const ValueField& b,
                             const std::vector<Vec2>& points) {
    const auto check_window = [](const ValueField& f, Vec2 p) {
        for (int axis = 0; axis < f.grid.dim; ++axis) {
            if (f.grid.axis_periodic(axis))
                continue;
            const double v = axis == 0 ? p.x : p.y;
            const double lo = f.grid.origin[axis];
            const double hi = lo + f.grid.extent(axis);
            if (v < lo - 1e-9 || v > hi + 1e-9)
                throw OutOfWindow("compare_fields: sample point outside a field window");
        }
    };
    CompareReport rep;
    for (const Vec2& p : points) {
        check_window(a, p);
        check_window(b, p);
        const double va = a.grid.dim == 1 ? a.interp1(p.x) : a.interp(p);
        const double vb = b.grid.dim == 1 ? b.interp1(p.x) : b.interp(p);
        rep.errors.push_back(std::abs(va - vb));
    }
    for (double e : rep.errors) {
        rep.max_error = std::max(rep.max_error, e);
        rep.mean_error += e;
    }
    if (!rep.errors.empty())
        rep.mean_error /= static_cast<double>(rep.errors.size());
    return rep;
}

} // namespace hjh
