#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "hjhomog/convex1d.hpp"
#include "hjhomog/grid.hpp"

namespace hjh {

/** One Hamiltonian piece of the 1D junction problem on [xa, xb]. */
struct Piece {
    double xa = 0.0;
    double xb = 0.0;
    LineEval H;
};

/** Flux-limited junction at a grid node shared by two pieces. A limiter of
 *  -infinity turns the node into a plain Godunov interface. */
struct Junction {
    double pos = 0.0;
    double limiter = -std::numeric_limits<double>::infinity();
};

struct Junction1DOptions {
    double tol = 1e-11;
    int max_sweeps = 50000;
    /// additive node term: the scheme solves lambda u + Ham + source(x) = 0
    /// (pass -far_field_cost(x) for cost terms)
    std::function<double(double)> source;
    const std::vector<double>* warm_start = nullptr;
    double warm_shift = 0.0;
};

/** Fixed point of the monotone upwind scheme
 *    interior:  lambda u + max(H^+(D-u), H^-(D+u)) + src = 0   (Godunov)
 *    junction:  lambda u + max(limiter, H^+_left(D-u), H^-_right(D+u)) + src = 0
 *    ends:      one-sided interior stencil (state-constrained closure:
 *               lambda u + H^-(D+u) + src = 0 on the left, mirrored right)
 *  solved by Gauss-Seidel sweeps with per-node bisection (each nodal equation
 *  is nondecreasing in its unknown). */
ValueField junction_solve_1d(const std::vector<Piece>& pieces, const std::vector<Junction>& junctions,
                             double lambda, const Grid& grid, const Junction1DOptions& opts = {});

} // namespace hjh
