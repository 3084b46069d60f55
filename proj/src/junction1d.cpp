#include "hjhomog/junction1d.hpp"

#include <algorithm>
#include <cmath>

namespace hjh {

namespace {

struct NodePlan {
    int left_piece = -1;  // piece used for D-u (plus branch)
    int right_piece = -1; // piece used for D+u (minus branch)
    double limiter = -std::numeric_limits<double>::infinity();
};

// Root of a nondecreasing scalar map by bracket expansion + bisection.
double solve_monotone(const std::function<double(double)>& phi, double guess, double tol) {
    double lo = guess, hi = guess;
    double flo = phi(lo), fhi = flo;
    double step = 1.0;
    while (flo > 0.0) {
        lo -= step;
        step *= 2.0;
        flo = phi(lo);
        if (step > 1e12)
            throw NonConvergence("junction_solve_1d: bracket expansion failed (low)");
    }
    step = 1.0;
    while (fhi < 0.0) {
        hi += step;
        step *= 2.0;
        fhi = phi(hi);
        if (step > 1e12)
            throw NonConvergence("junction_solve_1d: bracket expansion failed (high)");
    }
    for (int k = 0; k < 200 && hi - lo > tol * (1.0 + std::abs(lo) + std::abs(hi)); ++k) {
        const double m = 0.5 * (lo + hi);
        (phi(m) <= 0.0 ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

} // namespace

ValueField junction_solve_1d(const std::vector<Piece>& pieces, const std::vector<Junction>& junctions,
                             double lambda, const Grid& grid, const Junction1DOptions& opts) {
    if (grid.dim != 1 || grid.periodic)
        throw InvalidArguments("junction_solve_1d: needs a bounded 1D grid");
    if (!(lambda > 0.0))
        throw InvalidArguments("junction_solve_1d: lambda must be positive");
    if (pieces.empty())
        throw InvalidArguments("junction_solve_1d: no pieces");

    const int n = grid.n[0];
    const double h = grid.h[0];

    std::vector<MinInfo> mi(pieces.size());
    for (size_t k = 0; k < pieces.size(); ++k) {
        if (!coercive_probe(pieces[k].H))
            throw NonCoerciveHamiltonian("junction_solve_1d: piece evaluator fails the coercivity probe");
        mi[k] = line_min(pieces[k].H);
    }

    const auto piece_at = [&](double x) {
        for (size_t k = 0; k < pieces.size(); ++k)
            if (x >= pieces[k].xa - 1e-9 * h && x <= pieces[k].xb + 1e-9 * h)
                return static_cast<int>(k);
        throw InvalidArguments("junction_solve_1d: pieces do not tile the grid");
    };

    // Assign pieces per node: D-u uses the piece left of the node, D+u the
    // piece right of it; at junction nodes these differ.
    std::vector<NodePlan> plan(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.point1(i);
        plan[i].left_piece = i > 0 ? piece_at(x - 0.5 * h) : -1;
        plan[i].right_piece = i + 1 < n ? piece_at(x + 0.5 * h) : -1;
    }
    for (const auto& jn : junctions) {
        const int i = static_cast<int>(std::lround((jn.pos - grid.origin[0]) / h));
        if (i < 0 || i >= n || std::abs(grid.point1(i) - jn.pos) > 1e-9 * (1.0 + std::abs(jn.pos)))
            throw InvalidArguments("junction_solve_1d: junction position is not a grid node");
        plan[i].limiter = jn.limiter;
    }

    std::vector<double> src(n, 0.0);
    if (opts.source)
        for (int i = 0; i < n; ++i)
            src[i] = opts.source(grid.point1(i));

    std::vector<double> u(n, 0.0);
    if (opts.warm_start && static_cast<int>(opts.warm_start->size()) == n) {
        u = *opts.warm_start;
        for (double& v : u)
            v += opts.warm_shift;
    }
    const auto update = [&](int i) {
        const NodePlan& p = plan[i];
        const auto phi = [&](double ui) {
            double ham = p.limiter;
            if (p.left_piece >= 0) {
                const double qm = (ui - u[i - 1]) / h;
                ham = std::max(ham, branch_plus(pieces[p.left_piece].H, mi[p.left_piece], qm));
            }
            if (p.right_piece >= 0) {
                const double qp = (u[i + 1] - ui) / h;
                ham = std::max(ham, branch_minus(pieces[p.right_piece].H, mi[p.right_piece], qp));
            }
            return lambda * ui + ham + src[i];
        };
        return solve_monotone(phi, u[i], 1e-13);
    };

    int sweeps = 0;
    for (sweeps = 1; sweeps <= opts.max_sweeps; ++sweeps) {
        double change = 0.0;
        for (int i = 0; i < n; ++i) {
            const double un = update(i);
            change = std::max(change, std::abs(un - u[i]));
            u[i] = un;
        }
        for (int i = n - 1; i >= 0; --i) {
            const double un = update(i);
            change = std::max(change, std::abs(un - u[i]));
            u[i] = un;
        }
        if (change <= opts.tol)
            break;
    }
    if (sweeps > opts.max_sweeps)
        throw NonConvergence("junction_solve_1d: maximum sweep count reached");

    ValueField field;
    field.grid = grid;
    field.values = std::move(u);
    field.meta.scheme = "godunov junction gauss-seidel";
    field.meta.lambda = lambda;
    field.meta.iterations = sweeps;
    field.meta.residual = opts.tol;
    field.meta.lipschitz = field.discrete_lipschitz();
    field.meta.value_bound = 0.0;
    return field;
}

} // namespace hjh
