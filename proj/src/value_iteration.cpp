#include "hjhomog/value_iteration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hjh {

DPScheme::DPScheme(const DPProblem& problem, const Grid& grid) : grid_(grid) {
    grid_.validate();
    lambda_ = problem.lambda;
    dt_ = problem.dt;
    if (!(lambda_ > 0.0) || !(dt_ > 0.0) || !(dt_ * lambda_ < 1.0))
        throw InvalidArguments("DPScheme: need lambda > 0, dt > 0, lambda*dt < 1");

    const int nn = grid_.size();
    offsets_.assign(nn + 1, 0);
    node_extra_.assign(nn, 0.0);

    double min_h = grid_.h[0];
    if (grid_.dim == 2)
        min_h = std::min(min_h, grid_.h[1]);
    cfl_factor_ = dt_ * problem.pair.max_speed() / min_h;

    const auto box_ok = [&](int axis, double v) {
        if (!problem.constraint[axis])
            return true;
        const auto& c = *problem.constraint[axis];
        const double tol = 1e-9 * grid_.h[axis];
        return v >= c.lo - tol && v <= c.hi + tol;
    };

    const Side order[2] = {Side::L, Side::R};
    entries_.clear();
    entries_.reserve(static_cast<size_t>(nn) * 4);
    for (int node = 0; node < nn; ++node) {
        const int i = grid_.dim == 2 ? node / grid_.n[1] : node;
        const int j = grid_.dim == 2 ? node % grid_.n[1] : 0;
        const Vec2 x = grid_.dim == 2 ? grid_.point2(i, j) : Vec2{grid_.point1(i), 0.0};
        const Region reg = grid_.dim == 2 ? problem.membership(x) : problem.membership1(x.x);

        for (Side s : order) {
            const bool usable = (reg == Region::OnInterface) ||
                                (s == Side::L && reg == Region::Left) ||
                                (s == Side::R && reg == Region::Right);
            if (!usable)
                continue;
            for (const Control& a : problem.pair.side(s).controls) {
                Entry e{};
                e.cost = dt_ * (a.cost + problem.momentum.dot(a.velocity));
                ell_max_ = std::max(ell_max_, std::abs(a.cost + problem.momentum.dot(a.velocity)));
                if (grid_.dim == 2) {
                    Vec2 target = x + dt_ * a.velocity;
                    if (!box_ok(0, target.x) || !box_ok(1, target.y))
                        continue;
                    if (problem.constraint[0])
                        target.x = std::clamp(target.x, problem.constraint[0]->lo,
                                              problem.constraint[0]->hi);
                    if (problem.constraint[1])
                        target.y = std::clamp(target.y, problem.constraint[1]->lo,
                                              problem.constraint[1]->hi);
                    const Stencil st = make_stencil(grid_, target);
                    for (int k = 0; k < 4; ++k) {
                        e.idx[k] = k < st.count ? st.idx[k] : 0;
                        e.w[k] = k < st.count ? st.w[k] : 0.0;
                    }
                } else {
                    double target = x.x + dt_ * a.velocity.dot(problem.projection);
                    if (!box_ok(0, target))
                        continue;
                    if (problem.constraint[0])
                        target = std::clamp(target, problem.constraint[0]->lo,
                                            problem.constraint[0]->hi);
                    const Stencil st = make_stencil1(grid_, target);
                    e.idx[0] = st.idx[0];
                    e.w[0] = st.w[0];
                    e.idx[1] = st.idx[1];
                    e.w[1] = st.w[1];
                    e.idx[2] = e.idx[3] = 0;
                    e.w[2] = e.w[3] = 0.0;
                }
                entries_.push_back(e);
            }
        }
        offsets_[node + 1] = static_cast<int>(entries_.size());
        if (offsets_[node + 1] == offsets_[node]) {
            std::ostringstream msg;
            msg << "no admissible control at node (" << x.x << ", " << x.y
                << "): dt too large for the constraint box";
            throw NoAdmissibleControl(msg.str());
        }
        if (problem.use_far_field && problem.pair.far_field_cost)
            node_extra_[node] = dt_ * (*problem.pair.far_field_cost)(x.x);
    }
    if (problem.use_far_field && problem.pair.far_field_cost)
        ell_max_ += problem.pair.far_field_cost->cap;
}

void DPScheme::sweep(const std::vector<double>& in, std::vector<double>& out,
                     double lambda) const {
    const double gamma = 1.0 - lambda * dt_;
    const int nn = grid_.size();
    out.resize(nn);
    for (int node = 0; node < nn; ++node) {
        double best = std::numeric_limits<double>::infinity();
        for (int e = offsets_[node]; e < offsets_[node + 1]; ++e) {
            const Entry& en = entries_[e];
            const double interp = en.w[0] * in[en.idx[0]] + en.w[1] * in[en.idx[1]] +
                                  en.w[2] * in[en.idx[2]] + en.w[3] * in[en.idx[3]];
            const double v = en.cost + gamma * interp;
            if (v < best)
                best = v;
        }
        out[node] = best + node_extra_[node];
    }
}

std::vector<double> DPScheme::sweep(const std::vector<double>& in) const {
    std::vector<double> out;
    sweep(in, out, lambda_);
    return out;
}

ValueField DPScheme::solve_with_lambda(double lambda, const SolveOptions& opts) const {
    const double gamma = 1.0 - lambda * dt_;
    const double corr = gamma / (1.0 - gamma);
    const int nn = grid_.size();

    std::vector<double> v(nn, 0.0);
    if (opts.warm_start) {
        v = *opts.warm_start;
        for (double& x : v)
            x += opts.warm_shift;
    }
    std::vector<double> vn(nn), w(nn), w_prev(nn, 0.0);

    double delta = 0.0;
    int it = 0;
    int quiet = 0;
    bool have_prev = false;
    for (it = 1; it <= opts.max_sweeps; ++it) {
        sweep(v, vn, lambda);
        delta = 0.0;
        for (int k = 0; k < nn; ++k)
            delta = std::max(delta, std::abs(vn[k] - v[k]));
        if (delta == 0.0) {
            w = vn;
            break;
        }
        double wchange = 0.0;
        for (int k = 0; k < nn; ++k) {
            w[k] = vn[k] + corr * (vn[k] - v[k]);
            if (have_prev)
                wchange = std::max(wchange, std::abs(w[k] - w_prev[k]));
        }
        std::swap(w_prev, w);
        v.swap(vn);
        if (have_prev && it >= opts.min_sweeps) {
            quiet = wchange <= opts.tol ? quiet + 1 : 0;
            if (quiet >= 2)
                break;
        }
        have_prev = true;
    }
    if (it > opts.max_sweeps)
        throw NonConvergence("value_iteration: maximum sweep count reached");

    ValueField field;
    field.grid = grid_;
    field.values = std::move(w_prev);
    if (delta == 0.0)
        field.values = v; // exact fixed point reached
    field.meta.scheme = "semi-lagrangian jacobi";
    field.meta.dt = dt_;
    field.meta.lambda = lambda;
    field.meta.iterations = it;
    field.meta.residual = corr * delta;
    field.meta.cfl_factor = cfl_factor_;
    field.meta.value_bound = ell_max_ / lambda;
    field.meta.lipschitz = field.discrete_lipschitz();
    return field;
}

ValueField DPScheme::solve(const SolveOptions& opts) const { return solve_with_lambda(lambda_, opts); }

ValueField value_iteration(const DPProblem& problem, const Grid& grid, const SolveOptions& opts) {
    return DPScheme(problem, grid).solve(opts);
}

ErgodicResult ergodic_schedule(
    const std::function<ValueField(double lambda, const ValueField* warm, double shift)>& solve,
    const std::vector<double>& schedule, Vec2 anchor, double ergodic_stop) {
    if (schedule.size() < 2)
        throw InvalidArguments("ergodic_schedule: need at least two discounts");
    ErgodicResult res;
    ValueField last;
    for (size_t k = 0; k < schedule.size(); ++k) {
        const double lam = schedule[k];
        double shift = 0.0;
        const ValueField* warm = nullptr;
        if (k > 0) {
            warm = &last;
            shift = -res.constants.back() * (1.0 / lam - 1.0 / schedule[k - 1]);
        }
        last = solve(lam, warm, shift);
        const double c = -lam * last.nearest_value(anchor);
        res.constants.push_back(c);
        res.schedule.push_back(lam);
        if (k >= 1) {
            const double l0 = schedule[k - 1], l1 = lam;
            res.extrapolants.push_back((l0 * res.constants[k] - l1 * res.constants[k - 1]) /
                                       (l0 - l1));
        }
        if (k >= 2) {
            const double g1 = std::abs(res.constants[k] - res.constants[k - 1]);
            const double g0 = std::abs(res.constants[k - 1] - res.constants[k - 2]);
            if (g1 > 10.0 * g0 + 1e-12)
                throw ExtrapolationUnstable("ergodic extraction: discount gaps diverge");
        }
        if (res.extrapolants.size() >= 2) {
            res.extrapolant_gap = std::abs(res.extrapolants.back() -
                                           res.extrapolants[res.extrapolants.size() - 2]);
            if (res.extrapolant_gap < ergodic_stop)
                break;
        }
    }
    res.constant = res.extrapolants.back();
    if (res.constants.size() >= 2)
        res.last_gap = std::abs(res.constants.back() - res.constants[res.constants.size() - 2]);
    const double anchor_val = last.nearest_value(anchor);
    res.corrector = std::move(last);
    for (double& v : res.corrector.values)
        v -= anchor_val;
    return res;
}

ErgodicResult ergodic_constant(const DPProblem& problem, const Grid& grid,
                               const std::vector<double>& schedule, Vec2 anchor,
                               const SolveOptions& opts) {
    DPScheme scheme(problem, grid);
    return ergodic_schedule(
        [&](double lam, const ValueField* warm, double shift) {
            SolveOptions o = opts;
            if (warm) { // keep any caller-provided warm start for the first discount
                o.warm_start = &warm->values;
                o.warm_shift = shift;
            }
            return scheme.solve_with_lambda(lam, o);
        },
        schedule, anchor, opts.ergodic_stop);
}

} // namespace hjh
