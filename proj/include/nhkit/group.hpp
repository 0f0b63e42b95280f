#pragma once

#include <cmath>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "vec2.hpp"

namespace nhkit {

enum class Variant { Oscillating, Expanding };

inline std::string_view to_string(Variant v) { return v == Variant::Oscillating ? "oscillating" : "expanding"; }

inline Variant variant_from_string(std::string_view s)
{
    if (s == "oscillating") return Variant::Oscillating;
    if (s == "expanding") return Variant::Expanding;
    throw std::invalid_argument("unknown variant");
}

// (s, c) = (sin, cos) or (sinh, cosh); eps = +1 / -1 carries the sign flips of the law
template <class T>
struct Trig {
    T s, c, eps;
};

template <class T>
Trig<T> trig(Variant v, T x)
{
    if (v == Variant::Oscillating) return {std::sin(x), std::cos(x), T(1)};
    return {std::sinh(x), std::cosh(x), T(-1)};
}

template <class T>
struct GroupElement {
    T alpha{};
    T theta{};
    T b{};
    Vec2<T> a{};
    Vec2<T> v{};
    T phi{};
    Variant variant = Variant::Oscillating;
    T tau = T(1);

    static GroupElement identity(T tau = T(1), Variant variant = Variant::Oscillating)
    {
        GroupElement g;
        g.tau = tau;
        g.variant = variant;
        return g;
    }

    // drop the central coordinates
    GroupElement unextended() const
    {
        GroupElement g = *this;
        g.alpha = T(0);
        g.theta = T(0);
        return g;
    }
};

using GroupElementd = GroupElement<double>;

template <class T>
void check_compatible(const GroupElement<T>& g1, const GroupElement<T>& g2)
{
    if (g1.variant != g2.variant || g1.tau != g2.tau) throw std::invalid_argument("group elements differ in variant or tau");
}

template <class T>
GroupElement<T> compose(const GroupElement<T>& g1, const GroupElement<T>& g)
{
    check_compatible(g1, g);
    const T tau = g.tau;
    const auto [s, c, eps] = trig(g.variant, g.b / tau);
    const Vec2<T>& a1 = g1.a;
    const Vec2<T>& v1 = g1.v;
    const Vec2<T> ar = rot(g.a, g1.phi);
    const Vec2<T> vr = rot(g.v, g1.phi);

    GroupElement<T> out;
    out.variant = g.variant;
    out.tau = tau;
    out.alpha = g1.alpha + g.alpha + eps / (T(2) * tau * tau) * cross(a1 * c + v1 * (tau * s), ar)
                + T(0.5) * cross(a1 * (-eps * s / tau) + v1 * c, vr);
    out.theta = g1.theta + g.theta + T(0.5) * (tau * norm2(v1) - eps * norm2(a1) / tau) * s * c
                - eps * dot(a1, v1) * s * s + dot(v1, ar) * c - eps * dot(a1, ar) / tau * s;
    out.b = g1.b + g.b;
    out.a = a1 * c + v1 * (tau * s) + ar;
    out.v = v1 * c - a1 * (eps * s / tau) + vr;
    out.phi = g1.phi + g.phi;
    return out;
}

template <class T>
GroupElement<T> inverse(const GroupElement<T>& g)
{
    const T tau = g.tau;
    const auto [s, c, eps] = trig(g.variant, g.b / tau);
    GroupElement<T> out;
    out.variant = g.variant;
    out.tau = tau;
    out.alpha = -g.alpha;
    out.theta = -g.theta - T(0.5) * (tau * norm2(g.v) - eps * norm2(g.a) / tau) * s * c + dot(g.a, g.v) * c * c;
    out.b = -g.b;
    out.a = rot(g.v * (tau * s) - g.a * c, -g.phi);
    out.v = rot(-g.v * c - g.a * (eps * s / tau), -g.phi);
    out.phi = -g.phi;
    return out;
}

template <class T>
std::pair<T, Vec2<T>> act_spacetime(const GroupElement<T>& g, T t, const Vec2<T>& x)
{
    const auto [s, c, eps] = trig(g.variant, t / g.tau);
    (void)eps;
    return {t + g.b, rot(x, g.phi) + g.v * (g.tau * s) + g.a * c};
}

// componentwise sup-distance; relative = true divides by max(1, |x|, |y|) per component
template <class T>
T distance(const GroupElement<T>& x, const GroupElement<T>& y, bool relative = false)
{
    const T xs[8] = {x.alpha, x.theta, x.b, x.a.x1, x.a.x2, x.v.x1, x.v.x2, x.phi};
    const T ys[8] = {y.alpha, y.theta, y.b, y.a.x1, y.a.x2, y.v.x1, y.v.x2, y.phi};
    T d = T(0);
    for (int i = 0; i < 8; ++i) {
        T e = std::fabs(xs[i] - ys[i]);
        if (relative) e /= std::fmax(T(1), std::fmax(std::fabs(xs[i]), std::fabs(ys[i])));
        d = std::fmax(d, e);
    }
    return d;
}

// one-parameter subgroups exp(t X) in these coordinates
template <class T>
GroupElement<T> one_parameter(int generator, T t, T tau = T(1), Variant variant = Variant::Oscillating)
{
    auto g = GroupElement<T>::identity(tau, variant);
    switch (generator) {
    case 0: g.alpha = t; break;
    case 1: g.theta = t; break;
    case 2: g.b = t; break;
    case 3: g.a.x1 = t; break;
    case 4: g.a.x2 = t; break;
    case 5: g.v.x1 = t; break;
    case 6: g.v.x2 = t; break;
    case 7: g.phi = t; break;
    default: throw std::invalid_argument("generator index out of range");
    }
    return g;
}

}  // namespace nhkit
