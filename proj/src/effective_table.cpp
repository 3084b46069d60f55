#include "hjhomog/effective_table.hpp"

#include <algorithm>
#include <cmath>

namespace hjh {

namespace {

// Cell index with unclamped fractional weight: linear extension outside.
inline void locate(const std::vector<double>& nodes, double x, int& i, double& w) {
    const int n = static_cast<int>(nodes.size());
    const double h = nodes[1] - nodes[0];
    double u = (x - nodes[0]) / h;
    i = static_cast<int>(std::clamp(std::floor(u), 0.0, static_cast<double>(n - 2)));
    w = u - i;
}

} // namespace

double EffectiveTable::value(Vec2 p) const {
    const int np2 = static_cast<int>(p2_nodes.size());
    int i, j;
    double wi, wj;
    locate(p1_nodes, p.x, i, wi);
    locate(p2_nodes, p.y, j, wj);
    const double v00 = values[i * np2 + j];
    const double v10 = values[(i + 1) * np2 + j];
    const double v01 = values[i * np2 + j + 1];
    const double v11 = values[(i + 1) * np2 + j + 1];
    return (1.0 - wi) * ((1.0 - wj) * v00 + wj * v01) + wi * ((1.0 - wj) * v10 + wj * v11);
}

LineEval EffectiveTable::line_at(double p2) const {
    LineEval line;
    line.f = [this, p2](double q) { return value(Vec2{q, p2}); };
    const double span = std::max(std::abs(p1_nodes.front()), std::abs(p1_nodes.back()));
    line.q_lo = -(span + 16.0);
    line.q_hi = span + 16.0;
    return line;
}

E0Result EffectiveTable::e0_at(double p2) const {
    const MinInfo mi = line_min(line_at(p2));
    return E0Result{mi.value, mi.q_lo, mi.q_hi};
}

double EffectiveTable::midpoint_convexity_violation() const {
    const int n1 = static_cast<int>(p1_nodes.size());
    const int n2 = static_cast<int>(p2_nodes.size());
    double worst = 0.0;
    const auto at = [&](int i, int j) { return values[i * n2 + j]; };
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j + 2 < n2; ++j)
            worst = std::max(worst, at(i, j + 1) - 0.5 * (at(i, j) + at(i, j + 2)));
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i + 2 < n1; ++i)
            worst = std::max(worst, at(i + 1, j) - 0.5 * (at(i, j) + at(i + 2, j)));
    return worst;
}

ErgodicResult effective_hm_ergodic(const MediumPair& pair, const ToothProfile& profile, double eta,
                                   Vec2 p, const HmOptions& opts) {
    ensure_assumptions(pair);
    DPProblem prob;
    prob.pair = pair;
    prob.pair.far_field_cost.reset();
    prob.membership1 = [profile, eta](double y) { return band_region(profile, eta, y); };
    prob.momentum = p;
    prob.projection = e2;
    prob.lambda = opts.lambda_schedule.front();
    const double h = eta / opts.cell_nodes;
    prob.dt = opts.dt_factor * h / std::max(pair.max_speed(), 1e-9);
    const Grid grid = Grid::periodic_line(0.0, eta, opts.cell_nodes);
    SolveOptions so;
    so.tol = opts.tol;
    return ergodic_constant(prob, grid, opts.lambda_schedule, Vec2{0.0, 0.0}, so);
}

double effective_hm(const MediumPair& pair, const ToothProfile& profile, double eta, Vec2 p,
                    const HmOptions& opts) {
    return effective_hm_ergodic(pair, profile, eta, p, opts).constant;
}

double effective_hm_oracle(const MediumPair& pair, const ToothProfile& profile, Vec2 p) {
    ensure_assumptions(pair);
    const double mL = profile.b - profile.a;
    const double mR = 1.0 - mL;

    const auto make_line = [&](const ControlSide& side) {
        const E0Result r = e0_along(side, p, e2);
        const double span = (side.max_cost() + p.norm() * side.max_speed() + std::abs(r.value) + 8.0) /
                                std::max(side.delta0, 0.05) +
                            8.0;
        LineEval line;
        line.f = [&side, p](double q) { return hamiltonian(side, p + q * e2); };
        line.q_lo = -span;
        line.q_hi = span;
        line.exact_min = r.value;
        return line;
    };
    const LineEval lineL = make_line(pair.left);
    const LineEval lineR = make_line(pair.right);
    const MinInfo miL = line_min(lineL);
    const MinInfo miR = line_min(lineR);

    double lo = std::max(miL.value, miR.value);
    double hi = std::max(hamiltonian(pair.left, p), hamiltonian(pair.right, p));
    if (hi <= lo + 1e-13 * (1.0 + std::abs(lo)))
        return lo;

    const auto feasible = [&](double lam) {
        const double qLm = branch_root(lineL, miL, Branch::Minus, lam, 1e-10);
        const double qLp = branch_root(lineL, miL, Branch::Plus, lam, 1e-10);
        const double qRm = branch_root(lineR, miR, Branch::Minus, lam, 1e-10);
        const double qRp = branch_root(lineR, miR, Branch::Plus, lam, 1e-10);
        const double lo_sum = mL * qLm + mR * qRm;
        const double hi_sum = mL * qLp + mR * qRp;
        return lo_sum <= 0.0 && 0.0 <= hi_sum;
    };
    if (feasible(lo))
        return lo;
    while (hi - lo > 1e-11 * (1.0 + std::abs(hi))) {
        const double m = 0.5 * (lo + hi);
        (feasible(m) ? hi : lo) = m;
    }
    return hi;
}

EffectiveTable build_effective_table(const MediumPair& pair, const ToothProfile& profile,
                                     const std::vector<double>& p1_nodes,
                                     const std::vector<double>& p2_nodes) {
    EffectiveTable t;
    t.p1_nodes = p1_nodes;
    t.p2_nodes = p2_nodes;
    t.values.resize(p1_nodes.size() * p2_nodes.size());
    for (size_t i = 0; i < p1_nodes.size(); ++i)
        for (size_t j = 0; j < p2_nodes.size(); ++j)
            t.values[i * p2_nodes.size() + j] =
                effective_hm_oracle(pair, profile, Vec2{p1_nodes[i], p2_nodes[j]});
    return t;
}

} // namespace hjh
