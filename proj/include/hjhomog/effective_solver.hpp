#pragma once

#include <vector>

#include "hjhomog/cell_problems.hpp"
#include "hjhomog/control_model.hpp"
#include "hjhomog/effective_table.hpp"
#include "hjhomog/geometry.hpp"
#include "hjhomog/grid.hpp"

namespace hjh {

enum class EffectiveKind { EtaStrip, FlatLimit, Direct };

/** One interface for the three solvable problems of the x2-invariant regime:
 *  the eta-strip effective problem, the flat-interface limit problem, and the
 *  direct eps-scale problem on the oscillatory geometry. Junction limiters
 *  are the flux-limiter values at tangential momentum 0. */
struct EffectiveProblemSpec {
    EffectiveKind kind = EffectiveKind::FlatLimit;
    MediumPair pair;
    ToothProfile profile;
    double eta = 0.2;
    double eps = 0.2;
    const EffectiveTable* hm = nullptr; ///< required for EtaStrip
    double limiter_lm = 0.0;
    double limiter_mr = 0.0;
    double lambda = 1.0;
    double window = 6.0;
    int nodes_per_unit_1d = 80;
    int n2_per_period = 12; ///< Direct: x2 nodes per eta*eps period
    double h1_direct = 0.0; ///< 0 -> eta/8 (clamped to [1/96, 1/16])
    double tol = 1e-9;
};

ValueField solve_effective(const EffectiveProblemSpec& spec);

struct CompareReport {
    std::vector<double> errors;
    double max_error = 0.0;
    double mean_error = 0.0;
};

/// Pointwise |a - b| at the sample points (with interpolation); throws
/// OutOfWindow when a point is outside either field.
CompareReport compare_fields(const ValueField& a, const ValueField& b,
                             const std::vector<Vec2>& points);

} // namespace hjh
