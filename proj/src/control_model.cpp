#include "hjhomog/control_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace hjh {

namespace {

// Andrew monotone chain; returns hull vertices in counter-clockwise order.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    if (pts.size() < 3)
        return pts;
    std::vector<Vec2> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

struct Facet {
    Vec2 a;   // unit outward normal
    double b; // a·x <= b
};

// Facet list of a CCW polygon hull; empty when the hull is degenerate.
std::vector<Facet> hull_facets(const std::vector<Vec2>& hull) {
    std::vector<Facet> out;
    if (hull.size() < 3)
        return out;
    for (size_t i = 0; i < hull.size(); ++i) {
        const Vec2 p = hull[i];
        const Vec2 q = hull[(i + 1) % hull.size()];
        Vec2 n{q.y - p.y, -(q.x - p.x)}; // outward for CCW
        const double len = n.norm();
        if (len < 1e-15)
            continue;
        n = n * (1.0 / len);
        out.push_back({n, n.dot(p)});
    }
    return out;
}

double origin_inscribed_radius(const std::vector<Facet>& facets) {
    if (facets.empty())
        return 0.0;
    double r = std::numeric_limits<double>::infinity();
    for (const auto& f : facets)
        r = std::min(r, f.b);
    return r > 0.0 ? r : 0.0;
}

// Chebyshev radius: max r s.t. a_i·c + r <= b_i, by enumerating vertices of
// the 3-variable LP (all facet triples).
double chebyshev_radius(const std::vector<Facet>& facets) {
    const size_t m = facets.size();
    if (m < 3)
        return 0.0;
    double best = 0.0;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            for (size_t k = j + 1; k < m; ++k) {
                // Solve [a; 1] [c; r] = b for the three active facets.
                const double A[3][3] = {{facets[i].a.x, facets[i].a.y, 1.0},
                                        {facets[j].a.x, facets[j].a.y, 1.0},
                                        {facets[k].a.x, facets[k].a.y, 1.0}};
                const double rhs[3] = {facets[i].b, facets[j].b, facets[k].b};
                const double det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                                   A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                                   A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
                if (std::abs(det) < 1e-14)
                    continue;
                const auto solve = [&](int col) {
                    double M[3][3];
                    for (int r2 = 0; r2 < 3; ++r2)
                        for (int c2 = 0; c2 < 3; ++c2)
                            M[r2][c2] = (c2 == col) ? rhs[r2] : A[r2][c2];
                    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                            M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                            M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])) /
                           det;
                };
                const Vec2 c{solve(0), solve(1)};
                const double r = solve(2);
                if (r <= best)
                    continue;
                bool feasible = true;
                for (const auto& f : facets)
                    if (f.a.dot(c) + r > f.b + 1e-10) {
                        feasible = false;
                        break;
                    }
                if (feasible)
                    best = r;
            }
    return best;
}

std::vector<Facet> velocity_facets(const ControlSide& side) {
    std::vector<Vec2> vel;
    vel.reserve(side.controls.size());
    for (const auto& c : side.controls)
        vel.push_back(c.velocity);
    return hull_facets(convex_hull(std::move(vel)));
}

} // namespace

double ControlSide::max_speed() const {
    double m = 0.0;
    for (const auto& c : controls)
        m = std::max(m, c.velocity.norm());
    return m;
}

double ControlSide::max_cost() const {
    double m = 0.0;
    for (const auto& c : controls)
        m = std::max(m, std::abs(c.cost));
    return m;
}

ControlSide ControlSide::make(Side label, std::vector<Control> controls) {
    ControlSide s;
    s.label = label;
    s.controls = std::move(controls);
    s.delta0 = origin_inscribed_radius(velocity_facets(s));
    return s;
}

double FarFieldCost::operator()(double x1) const {
    return std::min(std::max(std::abs(x1) - onset, 0.0), cap);
}

double MediumPair::max_speed() const { return std::max(left.max_speed(), right.max_speed()); }
double MediumPair::max_cost() const { return std::max(left.max_cost(), right.max_cost()); }

double hamiltonian(const ControlSide& side, Vec2 p) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : side.controls)
        best = std::max(best, -p.dot(c.velocity) - c.cost);
    return best;
}

double half_hamiltonian_dir(const ControlSide& side, Vec2 p, Vec2 dir, Branch branch) {
    // Minus keeps f·dir >= 0, Plus keeps f·dir <= 0.
    const double sign = branch == Branch::Minus ? 1.0 : -1.0;
    double best = -std::numeric_limits<double>::infinity();
    const auto& cs = side.controls;
    for (const auto& c : cs)
        if (sign * c.velocity.dot(dir) >= 0.0)
            best = std::max(best, -p.dot(c.velocity) - c.cost);
    // Mixtures of strictly opposite-signed pairs on the cutting hyperplane
    // f·dir = 0; these are the extra extreme points of the cut hull.
    for (size_t i = 0; i < cs.size(); ++i) {
        const double si = cs[i].velocity.dot(dir);
        if (si <= 0.0)
            continue;
        for (size_t j = 0; j < cs.size(); ++j) {
            const double sj = cs[j].velocity.dot(dir);
            if (sj >= 0.0)
                continue;
            const double theta = -sj / (si - sj); // weight of i, f·dir = 0
            const Vec2 f = theta * cs[i].velocity + (1.0 - theta) * cs[j].velocity;
            const double ell = theta * cs[i].cost + (1.0 - theta) * cs[j].cost;
            best = std::max(best, -p.dot(f) - ell);
        }
    }
    if (best == -std::numeric_limits<double>::infinity())
        throw FeasibilityError("half_hamiltonian: restricted control set is empty");
    return best;
}

double half_hamiltonian(const ControlSide& side, Vec2 p, int axis, Branch branch) {
    if (axis != 1 && axis != 2)
        throw InvalidArguments("half_hamiltonian: axis must be 1 or 2");
    return half_hamiltonian_dir(side, p, axis == 1 ? e1 : e2, branch);
}

double interface_hamiltonian(const MediumPair& pair, Vec2 pL, Vec2 pR, Vec2 normal) {
    const Vec2 d = pL - pR;
    const double cross = d.x * normal.y - d.y * normal.x;
    if (std::abs(cross) > 1e-12 * (pL.norm() + pR.norm() + 1.0))
        throw InvalidArguments("interface_hamiltonian: pL - pR not colinear to the normal");
    if (std::abs(normal.norm() - 1.0) > 1e-9)
        throw InvalidArguments("interface_hamiltonian: normal must be a unit vector");
    const double hl = half_hamiltonian_dir(pair.left, pL, normal, Branch::Plus);
    const double hr = half_hamiltonian_dir(pair.right, pR, normal, Branch::Minus);
    return std::max(hl, hr);
}

E0Result e0_along(const ControlSide& side, Vec2 p0, Vec2 dir) {
    if (side.controls.empty())
        throw FeasibilityError("e0: empty control set");
    // h(q) = max_a (c_a - q s_a) with s_a = f_a·dir, c_a = -p0·f_a - ell_a.
    const size_t n = side.controls.size();
    std::vector<double> s(n), c(n);
    double smin = 0.0, smax = 0.0;
    for (size_t i = 0; i < n; ++i) {
        s[i] = side.controls[i].velocity.dot(dir);
        c[i] = -p0.dot(side.controls[i].velocity) - side.controls[i].cost;
        smin = std::min(smin, s[i]);
        smax = std::max(smax, s[i]);
    }
    if (smax <= 0.0 || smin >= 0.0)
        throw FeasibilityError("e0: Hamiltonian not coercive along the requested direction");

    const auto h = [&](double q) {
        double best = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i)
            best = std::max(best, c[i] - q * s[i]);
        return best;
    };
    // The minimum of the upper envelope of lines is attained at a pairwise
    // crossing; evaluate the envelope at every crossing.
    double vmin = std::numeric_limits<double>::infinity();
    double q_at = 0.0, qspan = 1.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (s[i] == s[j])
                continue;
            const double q = (c[i] - c[j]) / (s[i] - s[j]);
            const double v = h(q);
            qspan = std::max(qspan, std::abs(q));
            if (v < vmin) {
                vmin = v;
                q_at = q;
            }
        }

    LineEval line{h, -(qspan + 2.0), qspan + 2.0, vmin};
    (void)q_at;
    const MinInfo mi = line_min(line, 1e-10);
    return E0Result{vmin, mi.q_lo, mi.q_hi};
}

E0Result e0(const ControlSide& side, double p2) { return e0_along(side, Vec2{0.0, p2}, e1); }

double e0_pair(const LineEval& a, const LineEval& b) {
    return std::max(line_min(a).value, line_min(b).value);
}

double e0_pair(const ControlSide& a, const ControlSide& b, double p2) {
    return std::max(e0(a, p2).value, e0(b, p2).value);
}

LineEval hamiltonian_line(const ControlSide& side, double p2) {
    const E0Result r = e0(side, p2);
    const double qspan = (side.max_cost() + std::abs(p2) * side.max_speed() + std::abs(r.value) + 8.0) /
                             std::max(side.delta0, 0.05) +
                         8.0;
    LineEval line;
    line.f = [side, p2](double q) { return hamiltonian(side, Vec2{q, p2}); };
    line.q_lo = -qspan;
    line.q_hi = qspan;
    line.exact_min = r.value;
    return line;
}

ControlSide mirror_x1(const ControlSide& side) {
    ControlSide out = side;
    for (auto& c : out.controls)
        c.velocity.x = -c.velocity.x;
    out.delta0 = side.delta0; // reflection preserves the inscribed ball
    return out;
}

namespace {

SideReport report_side(const ControlSide& side) {
    SideReport r;
    r.h0 = !side.controls.empty();
    r.h1 = true;
    for (const auto& c : side.controls) {
        if (!std::isfinite(c.velocity.x) || !std::isfinite(c.velocity.y))
            r.h0 = false;
        if (!std::isfinite(c.cost))
            r.h1 = false;
    }
    if (r.h0) {
        const auto facets = velocity_facets(side);
        r.delta0 = origin_inscribed_radius(facets);
        r.chebyshev_radius = chebyshev_radius(facets);
        r.h3 = r.delta0 > 0.0;
    }
    return r;
}

} // namespace

AssumptionReport check_assumptions(const MediumPair& pair) {
    AssumptionReport rep;
    rep.left = report_side(pair.left);
    rep.right = report_side(pair.right);
    rep.M_f = pair.max_speed();
    rep.M_ell = pair.max_cost();
    const auto collect = [&](const SideReport& s, const char* name) {
        if (!s.h0)
            rep.failures.push_back(std::string("[H0] ") + name + ": control set empty or non-finite");
        if (!s.h1)
            rep.failures.push_back(std::string("[H1] ") + name + ": costs unbounded");
        if (!s.h3)
            rep.failures.push_back(std::string("[H3] ") + name +
                                   ": velocity hull has no ball about the origin");
    };
    collect(rep.left, "left");
    collect(rep.right, "right");
    if (pair.far_field_cost) {
        if (!(pair.far_field_cost->onset >= 1.0) || !(pair.far_field_cost->cap >= 0.0) ||
            !std::isfinite(pair.far_field_cost->cap))
            rep.failures.push_back("far_field_cost: must vanish on |x1| < 1 and be bounded");
    }
    rep.pass = rep.failures.empty();
    return rep;
}

void ensure_assumptions(const MediumPair& pair) {
    const AssumptionReport rep = check_assumptions(pair);
    if (!rep.pass) {
        std::string msg = "standing assumptions violated:";
        for (const auto& f : rep.failures)
            msg += " " + f + ";";
        throw AssumptionViolation(msg);
    }
}

MediumPair load_medium_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open medium file: " + path);
    MediumPair pair;
    std::vector<Control>* current = nullptr;
    std::vector<Control> left, right;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first))
            continue;
        if (first == "[left]") {
            current = &left;
            continue;
        }
        if (first == "[right]") {
            current = &right;
            continue;
        }
        if (!current)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": control record before a [left]/[right] header");
        Control c;
        double fy, cost;
        std::istringstream rec(line);
        if (!(rec >> c.velocity.x >> fy >> cost))
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected `fx fy cost` record");
        c.velocity.y = fy;
        c.cost = cost;
        current->push_back(c);
    }
    pair.left = ControlSide::make(Side::L, std::move(left));
    pair.right = ControlSide::make(Side::R, std::move(right));
    return pair;
}

ControlSide make_c5(Side label, double speed_scale, double cost) {
    std::vector<Control> cs = {
        {{0.0, 0.0}, cost},
        {{speed_scale, 0.0}, cost},
        {{-speed_scale, 0.0}, cost},
        {{0.0, speed_scale}, cost},
        {{0.0, -speed_scale}, cost},
    };
    return ControlSide::make(label, std::move(cs));
}

MediumPair make_pair_c5() { return MediumPair{make_c5(Side::L), make_c5(Side::R), std::nullopt}; }

MediumPair make_pair_asym() {
    return MediumPair{make_c5(Side::L, 2.0), make_c5(Side::R, 1.0), std::nullopt};
}

} // namespace hjh
