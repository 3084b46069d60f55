#include "hjhomog/geometry.hpp"

#include <cmath>

namespace hjh {

namespace {

constexpr double kSnap = 1e-14;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double frac(double t) { return t - std::floor(t); }

} // namespace

double ToothProfile::g(double t) const {
    t = frac(t);
    if (samples.empty())
        return amplitude * std::sin(kTwoPi * (t - phase));
    const size_t n = samples.size();
    const double u = t * static_cast<double>(n);
    const size_t i = std::min(static_cast<size_t>(u), n - 1);
    const double w = u - static_cast<double>(i);
    return samples[i] * (1.0 - w) + samples[(i + 1) % n] * w;
}

double ToothProfile::dg(double t) const {
    t = frac(t);
    if (samples.empty())
        return amplitude * kTwoPi * std::cos(kTwoPi * (t - phase));
    const size_t n = samples.size();
    const size_t i = std::min(static_cast<size_t>(t * static_cast<double>(n)), n - 1);
    return (samples[(i + 1) % n] - samples[i]) * static_cast<double>(n);
}

double ToothProfile::max_abs_g() const {
    if (samples.empty())
        return std::abs(amplitude);
    double m = 0.0;
    for (double s : samples)
        m = std::max(m, std::abs(s));
    return m;
}

void ToothProfile::validate() const {
    if (!(0.0 < a && a < b && b < 1.0))
        throw ConfigError("tooth profile: need 0 < a < b < 1");
    if (std::abs(g(a)) > 1e-9 || std::abs(g(b)) > 1e-9)
        throw ConfigError("tooth profile: g(a) and g(b) must vanish");
}

ToothProfile ToothProfile::sine(double a, double b, double h) {
    ToothProfile p;
    p.a = a;
    p.b = b;
    p.amplitude = h;
    p.phase = a;
    p.validate();
    return p;
}

ToothProfile ToothProfile::sampled(double a, double b, std::vector<double> samples) {
    ToothProfile p;
    p.a = a;
    p.b = b;
    p.amplitude = 0.0;
    p.samples = std::move(samples);
    if (p.samples.size() < 4)
        throw ConfigError("tooth profile: need at least 4 samples");
    p.validate();
    return p;
}

void InterfaceSpec::validate() const {
    profile.validate();
    if (!(eta > 0.0) || !(eps > 0.0))
        throw ConfigError("interface: eta and eps must be positive");
}

void FingerGeometry::validate() const {
    profile.validate();
    if (!(eta > 0.0))
        throw ConfigError("finger geometry: eta must be positive");
    if (std::isfinite(rho) && !(rho > eta * profile.max_abs_g()))
        throw ConfigError("finger geometry: rho must exceed the finger tips");
}

Region region_of(const InterfaceSpec& spec, Vec2 x) {
    const ToothProfile& pr = spec.profile;
    const double period = spec.eta * spec.eps;
    const double t = frac(x.y / period);
    const bool on_a = std::abs(t - pr.a) <= kSnap;
    const bool on_b = std::abs(t - pr.b) <= kSnap;
    if (on_a || on_b) {
        // Vertical cap: the graph takes the whole segment
        // [-eta + eta*eps*g(t), eta + eta*eps*g(t)].
        const double shift = spec.eta * spec.eps * pr.g(t);
        if (x.x >= -spec.eta + shift - kSnap && x.x <= spec.eta + shift + kSnap)
            return Region::OnInterface;
        return x.x > spec.eta + shift ? Region::Right : Region::Left;
    }
    const double G = (t > pr.a && t < pr.b) ? 1.0 : -1.0;
    const double threshold = spec.eta * G + spec.eta * spec.eps * pr.g(t);
    if (std::abs(x.x - threshold) <= kSnap)
        return Region::OnInterface;
    return x.x > threshold ? Region::Right : Region::Left;
}

Region finger_region_of(const FingerGeometry& fg, Vec2 y) {
    if (std::isfinite(fg.rho) && std::abs(y.x) > fg.rho)
        return Region::OutsideTruncation;
    const ToothProfile& pr = fg.profile;
    const double t = frac(y.y / fg.eta);
    const bool on_a = std::abs(t - pr.a) <= kSnap;
    const bool on_b = std::abs(t - pr.b) <= kSnap;
    if (on_a || on_b) {
        // Cap segment (-inf, eta*g(t)], truncated below.
        const double top = fg.eta * pr.g(t);
        return y.x <= top + kSnap ? Region::OnInterface : Region::Right;
    }
    if (!(t > pr.a && t < pr.b))
        return Region::Right; // hypograph empty outside the bands
    const double threshold = fg.eta * pr.g(t);
    if (std::abs(y.x - threshold) <= kSnap)
        return Region::OnInterface;
    return y.x > threshold ? Region::Right : Region::Left;
}

Region band_region(const ToothProfile& profile, double eta, double y) {
    const double t = frac(y / eta);
    if (std::abs(t - profile.a) <= kSnap || std::abs(t - profile.b) <= kSnap)
        return Region::OnInterface;
    return (t > profile.a && t < profile.b) ? Region::Left : Region::Right;
}

namespace {

Vec2 normal_at(const ToothProfile& pr, double t, bool on_cap_a, bool on_cap_b) {
    if (on_cap_a)
        return Vec2{0.0, -1.0};
    if (on_cap_b)
        return Vec2{0.0, 1.0};
    const double d = pr.dg(t);
    const double s = 1.0 / std::sqrt(1.0 + d * d);
    return Vec2{s, -d * s};
}

} // namespace

Vec2 normal(const InterfaceSpec& spec, Vec2 x) {
    if (region_of(spec, x) != Region::OnInterface)
        throw InvalidArguments("normal: point is not on the interface");
    const ToothProfile& pr = spec.profile;
    const double t = frac(x.y / (spec.eta * spec.eps));
    const bool on_a = std::abs(t - pr.a) <= kSnap;
    const bool on_b = std::abs(t - pr.b) <= kSnap;
    if (on_a || on_b) {
        const double shift = spec.eta * spec.eps * pr.g(t);
        if (std::abs(x.x - (spec.eta + shift)) <= kSnap ||
            std::abs(x.x - (-spec.eta + shift)) <= kSnap)
            throw UndefinedNormal("normal: cap/graph junction corner");
    }
    return normal_at(pr, t, on_a, on_b);
}

Vec2 normal(const FingerGeometry& fg, Vec2 y) {
    if (finger_region_of(fg, y) != Region::OnInterface)
        throw InvalidArguments("normal: point is not on the interface");
    const ToothProfile& pr = fg.profile;
    const double t = frac(y.y / fg.eta);
    const bool on_a = std::abs(t - pr.a) <= kSnap;
    const bool on_b = std::abs(t - pr.b) <= kSnap;
    if ((on_a || on_b) && std::abs(y.x - fg.eta * pr.g(t)) <= kSnap)
        throw UndefinedNormal("normal: cap/graph junction corner");
    return normal_at(pr, t, on_a, on_b);
}

FingerGeometry mirrored_for_lm(const FingerGeometry& fg) {
    const ToothProfile& pr = fg.profile;
    const double s = 0.5 * (pr.a + pr.b); // phase shift mapping the complement bands into (0,1)
    ToothProfile out;
    out.a = 0.5 * (pr.b - pr.a);
    out.b = 1.0 - 0.5 * (pr.b - pr.a);
    if (pr.samples.empty()) {
        out.amplitude = pr.amplitude;
        // -g(t + s) = amplitude * sin(2*pi*(t - (phase - s - 1/2)))
        out.phase = pr.phase - s + 0.5;
        out.phase -= std::floor(out.phase);
    } else {
        const size_t n = pr.samples.size();
        out.samples.resize(n);
        for (size_t k = 0; k < n; ++k)
            out.samples[k] = -pr.g(static_cast<double>(k) / static_cast<double>(n) + s);
    }
    out.validate();
    return FingerGeometry{out, fg.eta, fg.rho};
}

} // namespace hjh
