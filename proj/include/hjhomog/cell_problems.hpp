#pragma once

#include <utility>
#include <vector>

#include "hjhomog/control_model.hpp"
#include "hjhomog/effective_table.hpp"
#include "hjhomog/geometry.hpp"
#include "hjhomog/junction1d.hpp"
#include "hjhomog/value_iteration.hpp"

namespace hjh {

enum class Orientation { MR, LM };

struct CellOptions {
    std::vector<double> lambda_schedule = {0.02, 0.01, 0.005};
    double increment_tol = 5e-3; ///< rho-schedule convergence threshold
    double dt_factor = 0.4;
    int n2 = 64;          ///< nodes per period in y2 (>= 16 per eta required)
    double h1 = 1.0 / 16; ///< target y1 spacing
    int max_n1 = 0;       ///< cap on y1 nodes (0 = none)
    double tol = 1e-8;    ///< inner fixed-point tolerance
    int nodes_per_unit_1d = 32;
};

/** Ergodic constant of the state-constrained truncated cell problem on
 *  Y^rho with finger geometry, periodic in y2, tangential momentum p2.
 *  Corrector anchored at the origin. */
ErgodicResult lambda_rho(const MediumPair& pair, const FingerGeometry& fg, double p2, double rho,
                         const CellOptions& opts = {});

struct FluxLimiterResult {
    double value = 0.0;
    bool converged = false;
    double last_increment = 0.0;
    std::vector<double> rho_schedule;
    std::vector<double> rho_values;
    ErgodicResult last; ///< ergodic result at the final rho (corrector etc.)
};

/** Flux limiter E^{M,R} (or E^{L,M}) as the limit of lambda_rho along the
 *  rho-schedule; stops once the increment drops below the tolerance,
 *  otherwise returns the last value flagged unconverged. Orientation LM
 *  mirrors the geometry through x1 -> -x1 and swaps the side roles; same
 *  code path on mirrored inputs. */
FluxLimiterResult flux_limiter(const MediumPair& pair, const FingerGeometry& fg,
                               Orientation orientation, double p2,
                               const std::vector<double>& rho_schedule,
                               const CellOptions& opts = {});

/** E(p2) via the three-piece 1D truncated problem (H^L, H^M, H^R with
 *  flux-limited junctions at -1 and +1, state constraints at +-rho),
 *  discounted junction solves plus extrapolation. */
FluxLimiterResult flux_limiter_1d(const MediumPair& pair, const EffectiveTable& hm,
                                  double limiter_lm, double limiter_mr, double p2,
                                  const std::vector<double>& rho_schedule,
                                  const CellOptions& opts = {});

/** E_eps(p2): truncated ergodic constants on the two-sided truncation with
 *  the full oscillatory interface Gamma_{1,eps} (spec must have eta = 1). */
FluxLimiterResult epsilon_flux_limiter(const MediumPair& pair, const InterfaceSpec& spec, double p2,
                                       const std::vector<double>& rho_schedule,
                                       const CellOptions& opts = {});

/** Extreme slopes at which a Hamiltonian and its monotone branch both meet a
 *  limiter level. lo = hi (degenerate) when the level exceeds E0. */
struct SlopeThresholds {
    double p2 = 0.0;
    double level = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool degenerate = false;
};

SlopeThresholds slope_thresholds(const LineEval& line, double p2, double level, Branch branch,
                                 double level_tol = 1e-6);
SlopeThresholds slope_thresholds(const ControlSide& side, double p2, double level, Branch branch,
                                 double level_tol = 1e-6);
SlopeThresholds slope_thresholds(const EffectiveTable& table, double p2, double level, Branch branch,
                                 double level_tol = 1e-6);

/** Corrector with its rescaling: W(t) = rescale * field(anchor + t/rescale). */
struct CorrectorProfile {
    ValueField field;
    double rescale = 1.0;
    Vec2 anchor{0.0, 0.0};
};

/** Wedge slopes for the two sides of the sandwich
 *  left_hi * t <= W(t) <= left_lo * t (t < 0),
 *  right_lo * t <= W(t) <= right_hi * t (t >= 0). */
struct WedgeThresholds {
    double left_lo = 0.0;
    double left_hi = 0.0;
    double right_lo = 0.0;
    double right_hi = 0.0;
};

struct SlopeCheckReport {
    double max_violation = 0.0;
    double violation_rate = 0.0;
    long nodes_checked = 0;
    bool pass = false;
    // growth-bound fit on the outer regions (diagnostic only)
    double rho_star = 0.0;
    double m_star_left = 0.0;
    double m_star_right = 0.0;
};

/** Verifies the rescaled-corrector slope sandwich nodewise (tolerance `tol`,
 *  pass when the violation rate stays below `max_rate`) and fits the
 *  truncated-corrector growth constants on the outer regions. */
SlopeCheckReport corrector_slope_check(const CorrectorProfile& profile,
                                       const WedgeThresholds& wedge, double tol,
                                       double max_rate = 0.01);

/// Mirrored pair for the LM orientation: sides swapped, first velocity
/// components negated.
MediumPair mirrored_pair_for_lm(const MediumPair& pair);

} // namespace hjh
