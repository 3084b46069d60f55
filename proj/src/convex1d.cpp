#include "hjhomog/convex1d.hpp"

#include <algorithm>
#include <cmath>

namespace hjh {

namespace {

// Coarse scan + golden-section refinement for the minimum of a convex function.
double approx_min(const LineEval& line, double& q_at_min) {
    const int n = 256;
    double best = std::numeric_limits<double>::infinity();
    double qbest = line.q_lo;
    for (int i = 0; i <= n; ++i) {
        const double q = line.q_lo + (line.q_hi - line.q_lo) * i / n;
        const double v = line.f(q);
        if (v < best) {
            best = v;
            qbest = q;
        }
    }
    const double step = (line.q_hi - line.q_lo) / n;
    double a = std::max(line.q_lo, qbest - step);
    double b = std::min(line.q_hi, qbest + step);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = line.f(c), fd = line.f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = line.f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = line.f(d);
        }
    }
    q_at_min = 0.5 * (a + b);
    return std::min(std::min(fc, fd), best);
}

} // namespace

MinInfo line_min(const LineEval& line, double qtol) {
    MinInfo mi;
    double q_at_min = 0.0;
    double vmin = approx_min(line, q_at_min);
    if (line.exact_min)
        vmin = *line.exact_min;
    mi.value = vmin;
    const double flat = 1e-11 * (1.0 + std::abs(vmin));

    // Left endpoint of the argmin interval: smallest q with f(q) <= vmin + flat.
    {
        double hi = q_at_min;
        double lo = std::max(line.q_lo, q_at_min - 1.0);
        while (line.f(lo) <= vmin + flat && lo > line.q_lo)
            lo = std::max(line.q_lo, lo - 2.0 * (q_at_min - lo + 1.0));
        if (line.f(lo) <= vmin + flat) {
            mi.q_lo = lo;
        } else {
            while (hi - lo > qtol) {
                const double m = 0.5 * (lo + hi);
                if (line.f(m) <= vmin + flat)
                    hi = m;
                else
                    lo = m;
            }
            mi.q_lo = hi;
        }
    }
    // Right endpoint, mirrored.
    {
        double lo = q_at_min;
        double hi = std::min(line.q_hi, q_at_min + 1.0);
        while (line.f(hi) <= vmin + flat && hi < line.q_hi)
            hi = std::min(line.q_hi, hi + 2.0 * (hi - q_at_min + 1.0));
        if (line.f(hi) <= vmin + flat) {
            mi.q_hi = hi;
        } else {
            while (hi - lo > qtol) {
                const double m = 0.5 * (lo + hi);
                if (line.f(m) <= vmin + flat)
                    lo = m;
                else
                    hi = m;
            }
            mi.q_hi = lo;
        }
    }
    return mi;
}

double branch_minus(const LineEval& line, const MinInfo& mi, double q) {
    return q <= mi.q_lo ? line.f(q) : mi.value;
}

double branch_plus(const LineEval& line, const MinInfo& mi, double q) {
    return q >= mi.q_hi ? line.f(q) : mi.value;
}

double godunov(const LineEval& line, const MinInfo& mi, double q_minus, double q_plus) {
    return std::max(branch_plus(line, mi, q_minus), branch_minus(line, mi, q_plus));
}

double branch_root(const LineEval& line, const MinInfo& mi, Branch branch, double level,
                   double qtol, double level_tol) {
    if (level < mi.value - level_tol)
        throw EmptyLevelSet("branch_root: level below the minimum of the Hamiltonian");
    if (level <= mi.value + level_tol)
        return branch == Branch::Minus ? mi.q_lo : mi.q_hi;

    double lo, hi;
    if (branch == Branch::Minus) {
        // decreasing branch: f(lo) >= level >= f(hi), lo <= hi <= argmin
        hi = mi.q_lo;
        lo = hi - 1.0;
        while (line.f(lo) < level) {
            lo -= 2.0 * (hi - lo);
            if (lo < line.q_lo - 1e6)
                throw EmptyLevelSet("branch_root: level unreachable on the decreasing branch");
        }
        while (hi - lo > qtol) {
            const double m = 0.5 * (lo + hi);
            (line.f(m) >= level ? lo : hi) = m;
        }
    } else {
        lo = mi.q_hi;
        hi = lo + 1.0;
        while (line.f(hi) < level) {
            hi += 2.0 * (hi - lo);
            if (hi > line.q_hi + 1e6)
                throw EmptyLevelSet("branch_root: level unreachable on the increasing branch");
        }
        while (hi - lo > qtol) {
            const double m = 0.5 * (lo + hi);
            (line.f(m) <= level ? lo : hi) = m;
        }
    }
    return 0.5 * (lo + hi);
}

bool coercive_probe(const LineEval& line, double min_slope) {
    const double d = (line.q_hi - line.q_lo) / 64.0;
    const double s_right = (line.f(line.q_hi) - line.f(line.q_hi - d)) / d;
    const double s_left = (line.f(line.q_lo) - line.f(line.q_lo + d)) / d;
    return s_right > min_slope && s_left > min_slope;
}

} // namespace hjh
