#pragma once

#include <vector>

#include "hjhomog/control_model.hpp"
#include "hjhomog/geometry.hpp"
#include "hjhomog/value_iteration.hpp"

namespace hjh {

/** Tabulated effective mid-strip Hamiltonian H^M on a momentum grid.
 *  Bilinear inside the table; outside, linear extension with the edge-cell
 *  slopes (which preserves convexity and coercivity). */
struct EffectiveTable {
    std::vector<double> p1_nodes;
    std::vector<double> p2_nodes;
    std::vector<double> values; // [i1 * np2 + i2]

    double value(Vec2 p) const;
    /// q -> H^M(q e1 + p2 e2) as a convex line evaluator
    LineEval line_at(double p2) const;
    /// numerical minimum over the tabulated q-axis (refined); the E0 of a table operand
    E0Result e0_at(double p2) const;

    double midpoint_convexity_violation() const;
};

struct HmOptions {
    int cell_nodes = 128; ///< 1D nodes per period (multiple of 4 recommended)
    std::vector<double> lambda_schedule = {0.02, 0.01, 0.005};
    double dt_factor = 0.4;
    double tol = 1e-9;
};

/** Effective Hamiltonian of the fast-vertical 1D cell problem: alternating
 *  media H^L on (eta a, eta b) mod eta and H^R elsewhere, with the junction
 *  max-conditions realized through DP admissibility. Ergodic solver with
 *  Richardson extrapolation over the discount schedule. */
double effective_hm(const MediumPair& pair, const ToothProfile& profile, double eta, Vec2 p,
                    const HmOptions& opts = {});

/// Full ergodic result (corrector and diagnostics) of the same problem.
ErgodicResult effective_hm_ergodic(const MediumPair& pair, const ToothProfile& profile, double eta,
                                   Vec2 p, const HmOptions& opts = {});

/** Independent branch-selection oracle: H^M(p) is the smallest level lam such
 *  that 0 lies between the measure-weighted sums of the monotone-branch roots
 *  of H^i(p + q e2) = lam, with weights (b-a) and 1-(b-a). Bisection to 1e-11. */
double effective_hm_oracle(const MediumPair& pair, const ToothProfile& profile, Vec2 p);

/// Oracle-built table (exact convexity up to bisection tolerance).
EffectiveTable build_effective_table(const MediumPair& pair, const ToothProfile& profile,
                                     const std::vector<double>& p1_nodes,
                                     const std::vector<double>& p2_nodes);

} // namespace hjh
