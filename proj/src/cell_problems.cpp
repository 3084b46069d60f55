#include "hjhomog/cell_problems.hpp"

#include <algorithm>
#include <cmath>

namespace hjh {

namespace {

int odd_nodes(double half_width, double h, int cap) {
    int half = std::max(1, static_cast<int>(std::lround(half_width / h)));
    int n = 2 * half + 1;
    if (cap > 0 && n > cap)
        n = cap % 2 == 0 ? cap - 1 : cap;
    return n;
}

std::vector<double> warm_from(const ErgodicResult& prev, const Grid& grid, double lambda_first) {
    std::vector<double> warm(grid.size());
    const double shift = -prev.constant / lambda_first;
    if (grid.dim == 1) {
        for (int i = 0; i < grid.n[0]; ++i)
            warm[i] = prev.corrector.interp1(grid.point1(i)) + shift;
    } else {
        for (int i = 0; i < grid.n[0]; ++i)
            for (int j = 0; j < grid.n[1]; ++j)
                warm[grid.index(i, j)] = prev.corrector.interp(grid.point2(i, j)) + shift;
    }
    return warm;
}

FluxLimiterResult run_rho_schedule(
    const std::function<ErgodicResult(double rho, const std::vector<double>* warm)>& run,
    const std::vector<double>& rho_schedule, double increment_tol,
    const std::function<Grid(double rho)>& grid_of, double lambda_first) {
    if (rho_schedule.size() < 2)
        throw InvalidArguments("flux limiter: rho schedule needs at least two entries");
    if (!std::is_sorted(rho_schedule.begin(), rho_schedule.end()))
        throw InvalidArguments("flux limiter: rho schedule must be increasing");

    FluxLimiterResult res;
    ErgodicResult prev;
    for (size_t k = 0; k < rho_schedule.size(); ++k) {
        const double rho = rho_schedule[k];
        std::vector<double> warm;
        const std::vector<double>* warm_ptr = nullptr;
        if (k > 0) {
            warm = warm_from(prev, grid_of(rho), lambda_first);
            warm_ptr = &warm;
        }
        prev = run(rho, warm_ptr);
        res.rho_schedule.push_back(rho);
        res.rho_values.push_back(prev.constant);
        if (k > 0) {
            res.last_increment = std::abs(res.rho_values[k] - res.rho_values[k - 1]);
            if (res.last_increment < increment_tol) {
                res.converged = true;
                break;
            }
        }
    }
    res.value = res.rho_values.back();
    res.last = std::move(prev);
    return res;
}

} // namespace

ErgodicResult lambda_rho(const MediumPair& pair, const FingerGeometry& fg, double p2, double rho,
                         const CellOptions& opts) {
    ensure_assumptions(pair);
    FingerGeometry geom = fg;
    geom.rho = rho;
    geom.validate();
    if (opts.n2 < 16)
        throw ResolutionError("lambda_rho: need >= 16 nodes per eta in y2");

    const int n1 = odd_nodes(rho, opts.h1, opts.max_n1);
    const Grid grid = Grid::strip(-rho, rho, n1, 0.0, geom.eta, opts.n2);

    DPProblem prob;
    prob.pair = pair;
    prob.pair.far_field_cost.reset();
    prob.membership = [geom](Vec2 y) { return finger_region_of(geom, y); };
    prob.momentum = Vec2{0.0, p2};
    prob.constraint[0] = AxisConstraint{-rho, rho};
    prob.lambda = opts.lambda_schedule.front();
    const double min_h = std::min(grid.h[0], grid.h[1]);
    prob.dt = opts.dt_factor * min_h / std::max(pair.max_speed(), 1e-9);

    SolveOptions so;
    so.tol = opts.tol;
    return ergodic_constant(prob, grid, opts.lambda_schedule, Vec2{0.0, 0.0}, so);
}

MediumPair mirrored_pair_for_lm(const MediumPair& pair) {
    MediumPair m;
    m.left = mirror_x1(pair.right);
    m.left.label = Side::L;
    m.right = mirror_x1(pair.left);
    m.right.label = Side::R;
    return m;
}

FluxLimiterResult flux_limiter(const MediumPair& pair, const FingerGeometry& fg,
                               Orientation orientation, double p2,
                               const std::vector<double>& rho_schedule, const CellOptions& opts) {
    const MediumPair work_pair = orientation == Orientation::MR ? pair : mirrored_pair_for_lm(pair);
    const FingerGeometry work_fg = orientation == Orientation::MR ? fg : mirrored_for_lm(fg);

    const auto grid_of = [&](double rho) {
        const int n1 = odd_nodes(rho, opts.h1, opts.max_n1);
        return Grid::strip(-rho, rho, n1, 0.0, work_fg.eta, opts.n2);
    };
    return run_rho_schedule(
        [&](double rho, const std::vector<double>* warm) {
            CellOptions o = opts;
            SolveOptions so;
            so.tol = opts.tol;
            so.warm_start = warm;
            FingerGeometry geom = work_fg;
            geom.rho = rho;
            geom.validate();
            if (o.n2 < 16)
                throw ResolutionError("flux_limiter: need >= 16 nodes per eta in y2");
            const Grid grid = grid_of(rho);
            DPProblem prob;
            prob.pair = work_pair;
            prob.pair.far_field_cost.reset();
            prob.membership = [geom](Vec2 y) { return finger_region_of(geom, y); };
            prob.momentum = Vec2{0.0, p2};
            prob.constraint[0] = AxisConstraint{-rho, rho};
            prob.lambda = o.lambda_schedule.front();
            prob.dt = o.dt_factor * std::min(grid.h[0], grid.h[1]) /
                      std::max(work_pair.max_speed(), 1e-9);
            return ergodic_constant(prob, grid, o.lambda_schedule, Vec2{0.0, 0.0}, so);
        },
        rho_schedule, opts.increment_tol, grid_of, opts.lambda_schedule.front());
}

FluxLimiterResult flux_limiter_1d(const MediumPair& pair, const EffectiveTable& hm,
                                  double limiter_lm, double limiter_mr, double p2,
                                  const std::vector<double>& rho_schedule,
                                  const CellOptions& opts) {
    ensure_assumptions(pair);
    const int m = opts.nodes_per_unit_1d;

    const auto grid_of = [&](double rho) {
        return Grid::line(-rho, rho, 2 * static_cast<int>(std::lround(rho * m)) + 1);
    };
    return run_rho_schedule(
        [&](double rho, const std::vector<double>* warm) {
            const Grid grid = grid_of(rho);
            std::vector<Piece> pieces(3);
            pieces[0] = Piece{-rho, -1.0, hamiltonian_line(pair.left, p2)};
            pieces[1] = Piece{-1.0, 1.0, hm.line_at(p2)};
            pieces[2] = Piece{1.0, rho, hamiltonian_line(pair.right, p2)};
            const std::vector<Junction> junctions = {{-1.0, limiter_lm}, {1.0, limiter_mr}};
            return ergodic_schedule(
                [&](double lam, const ValueField* w, double shift) {
                    Junction1DOptions jo;
                    jo.tol = opts.tol * 1e-2;
                    if (w) {
                        jo.warm_start = &w->values;
                        jo.warm_shift = shift;
                    } else if (warm) {
                        jo.warm_start = warm;
                    }
                    return junction_solve_1d(pieces, junctions, lam, grid, jo);
                },
                opts.lambda_schedule, Vec2{0.0, 0.0}, 0.0);
        },
        rho_schedule, opts.increment_tol, grid_of, opts.lambda_schedule.front());
}

FluxLimiterResult epsilon_flux_limiter(const MediumPair& pair, const InterfaceSpec& spec, double p2,
                                       const std::vector<double>& rho_schedule,
                                       const CellOptions& opts) {
    ensure_assumptions(pair);
    spec.validate();
    if (std::abs(spec.eta - 1.0) > 1e-12)
        throw InvalidArguments("epsilon_flux_limiter: expects the dilated geometry (eta = 1)");
    if (opts.n2 < 16)
        throw ResolutionError("epsilon_flux_limiter: need >= 16 nodes per eps in y2");

    const auto grid_of = [&](double rho) {
        const int n1 = odd_nodes(rho, opts.h1, opts.max_n1);
        return Grid::strip(-rho, rho, n1, 0.0, spec.eps, opts.n2);
    };
    return run_rho_schedule(
        [&](double rho, const std::vector<double>* warm) {
            const double tips = 1.0 + spec.eps * spec.profile.max_abs_g();
            if (!(rho > tips))
                throw InvalidArguments("epsilon_flux_limiter: rho must exceed the interface");
            const Grid grid = grid_of(rho);
            DPProblem prob;
            prob.pair = pair;
            prob.pair.far_field_cost.reset();
            prob.membership = [spec](Vec2 y) { return region_of(spec, y); };
            prob.momentum = Vec2{0.0, p2};
            prob.constraint[0] = AxisConstraint{-rho, rho};
            prob.lambda = opts.lambda_schedule.front();
            prob.dt = opts.dt_factor * std::min(grid.h[0], grid.h[1]) /
                      std::max(pair.max_speed(), 1e-9);
            SolveOptions so;
            so.tol = opts.tol;
            so.warm_start = warm;
            return ergodic_constant(prob, grid, opts.lambda_schedule, Vec2{0.0, 0.0}, so);
        },
        rho_schedule, opts.increment_tol, grid_of, opts.lambda_schedule.front());
}

SlopeThresholds slope_thresholds(const LineEval& line, double p2, double level, Branch branch,
                                 double level_tol) {
    const MinInfo mi = line_min(line);
    if (level < mi.value - level_tol)
        throw EmptyLevelSet("slope_thresholds: level below E0");
    SlopeThresholds t;
    t.p2 = p2;
    t.level = level;
    if (level <= mi.value + level_tol) {
        t.lo = mi.q_lo;
        t.hi = mi.q_hi;
        t.degenerate = false;
        return t;
    }
    const double q = branch_root(line, mi, branch, level, 1e-8);
    t.lo = t.hi = q;
    t.degenerate = true;
    return t;
}

SlopeThresholds slope_thresholds(const ControlSide& side, double p2, double level, Branch branch,
                                 double level_tol) {
    return slope_thresholds(hamiltonian_line(side, p2), p2, level, branch, level_tol);
}

SlopeThresholds slope_thresholds(const EffectiveTable& table, double p2, double level, Branch branch,
                                 double level_tol) {
    return slope_thresholds(table.line_at(p2), p2, level, branch, level_tol);
}

SlopeCheckReport corrector_slope_check(const CorrectorProfile& profile,
                                       const WedgeThresholds& wedge, double tol, double max_rate) {
    const ValueField& f = profile.field;
    const double s = profile.rescale;
    SlopeCheckReport rep;

    const int n0 = f.grid.n[0];
    const int n1 = f.grid.dim == 2 ? f.grid.n[1] : 1;
    long bad = 0;
    for (int i = 0; i < n0; ++i) {
        const double t = s * (f.grid.coord(0, i) - profile.anchor.x);
        const double lower = (t >= 0.0 ? wedge.right_lo : wedge.left_hi) * t;
        const double upper = (t >= 0.0 ? wedge.right_hi : wedge.left_lo) * t;
        for (int j = 0; j < n1; ++j) {
            const double w = s * f.values[f.grid.dim == 2 ? f.grid.index(i, j) : i];
            const double viol = std::max(lower - tol - w, w - upper - tol);
            if (viol > 0.0) {
                ++bad;
                rep.max_violation = std::max(rep.max_violation, viol + tol);
            }
            ++rep.nodes_checked;
        }
    }
    rep.violation_rate = rep.nodes_checked ? static_cast<double>(bad) / rep.nodes_checked : 0.0;
    rep.pass = rep.violation_rate < max_rate;

    // Growth-bound fit on the outer thirds (Lemma-A.1-shaped diagnostic).
    rep.rho_star = 0.5 * std::max(std::abs(f.grid.coord(0, 0)), std::abs(f.grid.coord(0, n0 - 1)));
    const int stride = std::max(1, static_cast<int>(std::lround(1.0 / f.grid.h[0])));
    for (int j = 0; j < n1; ++j)
        for (int i = 0; i + stride < n0; ++i) {
            const double x_lo = f.grid.coord(0, i);
            const double x_hi = f.grid.coord(0, i + stride);
            const double v_lo = f.grid.dim == 2 ? f.at(i, j) : f.values[i];
            const double v_hi = f.grid.dim == 2 ? f.at(i + stride, j) : f.values[i + stride];
            const double h1 = x_hi - x_lo;
            if (x_lo >= rep.rho_star) {
                const double d = (v_hi - v_lo) - wedge.right_lo * h1;
                rep.m_star_right = std::max(rep.m_star_right, -d);
            }
            if (x_hi <= -rep.rho_star) {
                const double d = (v_lo - v_hi) + wedge.left_hi * h1;
                rep.m_star_left = std::max(rep.m_star_left, -d);
            }
        }
    return rep;
}

} // namespace hjh
