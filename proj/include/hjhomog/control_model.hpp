#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hjhomog/convex1d.hpp"
#include "hjhomog/errors.hpp"
#include "hjhomog/vec2.hpp"

namespace hjh {

enum class Side { L, R };

/** One admissible control: a drift vector and a running cost per unit time. */
struct Control {
    Vec2 velocity;
    double cost = 0.0;
};

/** Finite control set of one medium. All optimizations are linear in
 *  (velocity, cost), so maximizing over this set equals maximizing over its
 *  convex hull — except for the half-Hamiltonians, which add the zero-crossing
 *  mixtures explicitly (see half_hamiltonian). */
struct ControlSide {
    Side label = Side::L;
    std::vector<Control> controls;
    /// Radius of the largest ball about the origin inside the velocity hull
    /// (0 when the origin is not strictly interior, i.e. [H3] fails).
    double delta0 = 0.0;

    double max_speed() const;
    double max_cost() const;

    static ControlSide make(Side label, std::vector<Control> controls);
};

/** Additive running cost depending on x1 only, identically zero on
 *  |x1| < onset and saturating at cap: min((|x1| - onset)^+, cap). */
struct FarFieldCost {
    double onset = 1.0;
    double cap = 2.0;

    double operator()(double x1) const;
};

struct MediumPair {
    ControlSide left;
    ControlSide right;
    std::optional<FarFieldCost> far_field_cost;

    const ControlSide& side(Side s) const { return s == Side::L ? left : right; }
    double max_speed() const;
    double max_cost() const;
};

/// H(p) = max over controls of (-p·f - ell). Convex piecewise-linear,
/// coercive with slope >= delta0.
double hamiltonian(const ControlSide& side, Vec2 p);

/** Monotone part of the Hamiltonian along axis (1 or 2).
 *  Minus: max over the hull cut {f·e_axis >= 0} (nonincreasing in p_axis);
 *  Plus:  over {f·e_axis <= 0} (nondecreasing). The cut-hull maximum is the
 *  finite-set maximum plus the pairwise mixtures with f·e_axis = 0. */
double half_hamiltonian(const ControlSide& side, Vec2 p, int axis, Branch branch);

/// Same, along an arbitrary unit direction (used with interface normals).
double half_hamiltonian_dir(const ControlSide& side, Vec2 p, Vec2 dir, Branch branch);

/** Interface Hamiltonian max(H^{+,L}(pL), H^{-,R}(pR)) relative to the given
 *  unit normal (oriented left-to-right). pL - pR must be colinear to the
 *  normal within 1e-12 * (|pL| + |pR| + 1). */
double interface_hamiltonian(const MediumPair& pair, Vec2 pL, Vec2 pR, Vec2 normal);

/** min over q of H(side, (q, p2)) with the argmin interval endpoints
 *  (the thresholds p1_0^- and p1_0^+). Exact for finite control sets;
 *  interval endpoints located by bisection on the monotone branches. */
struct E0Result {
    double value = 0.0;
    double q_lo = 0.0;
    double q_hi = 0.0;
};

E0Result e0(const ControlSide& side, double p2);

/// min over q of H(p0 + q * dir); shared by e0 (dir = e1) and the
/// branch-selection oracle (dir = e2).
E0Result e0_along(const ControlSide& side, Vec2 p0, Vec2 dir);

/// max of the two E0 values; either operand may be any convex line evaluator
/// (a control side at fixed p2, or an effective-table row).
double e0_pair(const LineEval& a, const LineEval& b);
double e0_pair(const ControlSide& a, const ControlSide& b, double p2);

/// q -> H(side, (q, p2)) as a line evaluator with exact minimum attached.
LineEval hamiltonian_line(const ControlSide& side, double p2);

/// Side with first velocity components negated (reflection x1 -> -x1).
ControlSide mirror_x1(const ControlSide& side);

struct SideReport {
    bool h0 = false; ///< nonempty, finite data
    bool h1 = false; ///< costs bounded
    bool h2 = true;  ///< hull of a finite set is closed and convex
    bool h3 = false; ///< B(0, delta0) inside the velocity hull
    double delta0 = 0.0;
    double chebyshev_radius = 0.0; ///< largest inscribed ball anywhere (LP over hull facets)
};

struct AssumptionReport {
    double M_f = 0.0;
    double M_ell = 0.0;
    SideReport left;
    SideReport right;
    bool pass = false;
    std::vector<std::string> failures;
};

AssumptionReport check_assumptions(const MediumPair& pair);

/// Throws AssumptionViolation listing the failed clauses.
void ensure_assumptions(const MediumPair& pair);

/** Plain-text control file: side header lines `[left]` / `[right]`, one
 *  record per control with fields `fx fy cost`. '#' starts a comment. */
MediumPair load_medium_file(const std::string& path);

/// Canonical instances used throughout the tests and the acceptance suite.
ControlSide make_c5(Side label, double speed_scale = 1.0, double cost = 1.0);
MediumPair make_pair_c5();     ///< identical media
MediumPair make_pair_asym();   ///< left = C5 with doubled velocities, right = C5

} // namespace hjh
