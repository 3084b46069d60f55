#pragma once

#include <functional>
#include <optional>

#include "hjhomog/errors.hpp"

namespace hjh {

/** A convex coercive function of one real variable, with a search bracket
 *  known to contain the whole argmin set and every level set of interest. */
struct LineEval {
    std::function<double(double)> f;
    double q_lo = -64.0;
    double q_hi = 64.0;
    /// Exact minimum when the caller knows it (piecewise-linear Hamiltonians).
    std::optional<double> exact_min;

    double operator()(double q) const { return f(q); }
};

/** Minimum of a convex function plus the endpoints of its argmin interval. */
struct MinInfo {
    double value = 0.0;
    double q_lo = 0.0; ///< left endpoint of the argmin interval
    double q_hi = 0.0; ///< right endpoint
};

enum class Branch { Plus, Minus };

/// Argmin interval endpoints are located by bisection on the monotone
/// branches (tolerance `qtol`); the minimum value is `exact_min` when given,
/// otherwise golden-section refinement of a coarse scan.
MinInfo line_min(const LineEval& line, double qtol = 1e-10);

/// Nonincreasing part of a convex function: f on the decreasing branch,
/// the minimum elsewhere.
double branch_minus(const LineEval& line, const MinInfo& mi, double q);
/// Nondecreasing part.
double branch_plus(const LineEval& line, const MinInfo& mi, double q);

/// Godunov numerical Hamiltonian of a convex function:
/// max(plus-branch at the backward difference, minus-branch at the forward one).
double godunov(const LineEval& line, const MinInfo& mi, double q_minus, double q_plus);

/** Root of f = level on one monotone branch (Minus: decreasing branch left of
 *  the argmin; Plus: increasing branch right of it), by bisection to `qtol`.
 *  level below the minimum (beyond `level_tol`) raises EmptyLevelSet;
 *  level within `level_tol` of the minimum returns the argmin endpoint. */
double branch_root(const LineEval& line, const MinInfo& mi, Branch branch, double level,
                   double qtol = 1e-8, double level_tol = 1e-9);

/// Simple coercivity probe: both end slopes bounded away from zero.
bool coercive_probe(const LineEval& line, double min_slope = 1e-9);

} // namespace hjh
