#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "hjhomog/control_model.hpp"
#include "hjhomog/geometry.hpp"
#include "hjhomog/grid.hpp"

namespace hjh {

struct AxisConstraint {
    double lo = 0.0;
    double hi = 0.0;
};

/** Discounted dynamic-programming problem for the semi-Lagrangian scheme.
 *  The running cost of control a at x is
 *  ell(a) + momentum·f(a) + far_field(x1) (the last two when configured);
 *  momentum (0, p2) realizes the tangential term of the cell problems.
 *  A control of side i is admissible at a node x when the region oracle puts
 *  x in side i or on the interface, and (state constraints) when the Euler
 *  step stays inside the constraint box. */
struct DPProblem {
    MediumPair pair;
    std::function<Region(Vec2)> membership;    // dim 2
    std::function<Region(double)> membership1; // dim 1
    Vec2 momentum{0.0, 0.0};
    Vec2 projection{0.0, 1.0}; // dim 1: the state advances by dt * f·projection
    std::array<std::optional<AxisConstraint>, 2> constraint{};
    bool use_far_field = false;
    double lambda = 1.0;
    double dt = 0.01;
};

struct SolveOptions {
    double tol = 1e-9;
    int max_sweeps = 400000;
    int min_sweeps = 12;
    const std::vector<double>* warm_start = nullptr;
    double warm_shift = 0.0;
    /// schedule early-stop once successive ergodic extrapolants agree this well
    double ergodic_stop = 5e-3;
};

/** Precomputed Jacobi update operator: per node, the admissible
 *  (side, control) entries with Euler-step interpolation stencils. */
class DPScheme {
  public:
    DPScheme(const DPProblem& problem, const Grid& grid);

    /// One Jacobi sweep of the dynamic-programming update (exposed for the
    /// monotonicity/contraction property tests).
    void sweep(const std::vector<double>& in, std::vector<double>& out, double lambda) const;
    std::vector<double> sweep(const std::vector<double>& in) const;

    /** Fixed point of the update. Iterates the Jacobi sweep and returns the
     *  geometric-tail-corrected iterate V + gamma/(1-gamma) (V - V_prev):
     *  once the argmin policy freezes the iteration is affine with stochastic
     *  interpolation weights, so the correction removes the dominant
     *  (constant-mode) error exactly and the corrected iterate converges at
     *  the mixing rate instead of O(1/(lambda dt)). The recorded residual is
     *  the guaranteed contraction bound gamma/(1-gamma) * |delta|_inf. */
    ValueField solve(const SolveOptions& opts = {}) const;
    ValueField solve_with_lambda(double lambda, const SolveOptions& opts) const;

    const Grid& grid() const { return grid_; }
    double lambda() const { return lambda_; }
    double dt() const { return dt_; }
    double ell_max() const { return ell_max_; }

  private:
    Grid grid_;
    double lambda_ = 1.0;
    double dt_ = 0.0;
    double ell_max_ = 0.0;
    double cfl_factor_ = 0.0;
    struct Entry {
        double cost; // dt * (ell + momentum·f)
        int idx[4];
        double w[4]; // stencil weights, sum 1
    };
    std::vector<Entry> entries_;
    std::vector<int> offsets_; // size() + 1
    std::vector<double> node_extra_;
};

ValueField value_iteration(const DPProblem& problem, const Grid& grid,
                           const SolveOptions& opts = {});

/** Ergodic constant plus corrector with convergence diagnostics.
 *  Sign convention: `constant` is the level E such that H(Du + p2 e2) = E
 *  admits the corrector, equal to -lim lambda V_lambda(anchor). */
struct ErgodicResult {
    double constant = 0.0;
    ValueField corrector; ///< anchored to 0 at the node nearest `anchor`
    std::vector<double> schedule;
    std::vector<double> constants;     ///< -lambda_k V_k(anchor)
    std::vector<double> extrapolants;  ///< Richardson in lambda
    double last_gap = 0.0;             ///< |c_last - c_prev|
    double extrapolant_gap = 0.0;
};

ErgodicResult ergodic_constant(const DPProblem& problem, const Grid& grid,
                               const std::vector<double>& schedule, Vec2 anchor,
                               const SolveOptions& opts = {});

/** Schedule-driven ergodic extraction over an arbitrary discounted solver
 *  (shared by the 2D engine and the 1D junction scheme). */
ErgodicResult ergodic_schedule(
    const std::function<ValueField(double lambda, const ValueField* warm, double shift)>& solve,
    const std::vector<double>& schedule, Vec2 anchor, double ergodic_stop = 5e-3);

} // namespace hjh
