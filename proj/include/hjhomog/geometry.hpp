#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "hjhomog/errors.hpp"
#include "hjhomog/vec2.hpp"

namespace hjh {

/** Tooth profile: tooth band (a, b) in the unit period and the 1-periodic
 *  graph perturbation g with g(a) = g(b) = 0. Either the closed-form
 *  g(t) = amplitude * sin(2*pi*(t - phase)) or a sampled table
 *  (N uniform samples over one period, linearly interpolated). */
struct ToothProfile {
    double a = 0.25;
    double b = 0.75;
    double amplitude = 0.25;
    double phase = 0.25;
    std::vector<double> samples; // empty -> closed form

    double g(double t) const;
    double dg(double t) const;
    double max_abs_g() const;
    void validate() const;

    static ToothProfile sine(double a, double b, double h);
    static ToothProfile sampled(double a, double b, std::vector<double> samples);
};

/** The oscillatory interface Gamma_{eta,eps}: amplitude eta, tooth period
 *  eta*eps. Threshold of the multivalued graph at t = frac(x2/(eta*eps)):
 *  eta*G(t) + eta*eps*g(t) with G = +1 on (a,b) and -1 outside. */
struct InterfaceSpec {
    ToothProfile profile;
    double eta = 1.0;
    double eps = 0.1;

    void validate() const;
};

/** Rescaled finger geometry Gamma~_eta: the eps -> 0 zoom near one strip
 *  edge. Left fingers occupy the bands t in (a,b) below the graph eta*g(t);
 *  everything else is the connected right region. rho truncates |y1|
 *  (infinity allowed). */
struct FingerGeometry {
    ToothProfile profile;
    double eta = 1.0;
    double rho = std::numeric_limits<double>::infinity();

    void validate() const;
};

enum class Region { Left, Right, OnInterface, OutsideTruncation };

Region region_of(const InterfaceSpec& spec, Vec2 x);
Region finger_region_of(const FingerGeometry& fg, Vec2 y);

/// 1D band membership along the fast vertical variable (the H^M cell
/// problem): Left on (eta*a, eta*b) mod eta, boundaries OnInterface.
Region band_region(const ToothProfile& profile, double eta, double y);

/** Unit normal at an interface point, oriented Left -> Right:
 *  (1+g'(t)^2)^{-1/2} (e1 - g'(t) e2) on graph points, -e2 on caps at t = a,
 *  +e2 at t = b. Throws UndefinedNormal at cap/graph junction corners. */
Vec2 normal(const InterfaceSpec& spec, Vec2 x);
Vec2 normal(const FingerGeometry& fg, Vec2 y);

/** The finger geometry of the opposite (L,M) edge as a canonical geometry:
 *  reflected through x1 -> -x1, which maps to the complementary bands with
 *  g -> -g, re-phased into (0,1). Use together with mirrored control sides. */
FingerGeometry mirrored_for_lm(const FingerGeometry& fg);

} // namespace hjh
