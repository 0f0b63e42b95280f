#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "group.hpp"
#include "vec2.hpp"

namespace nhkit {

template <class T>
struct DualPoint {
    T f{};
    T m{};
    T h{};
    Vec2<T> p{};
    Vec2<T> k{};
    T j{};
    T tau = T(1);

    std::array<T, 8> coords() const { return {f, m, h, p.x1, p.x2, k.x1, k.x2, j}; }
};

using DualPointd = DualPoint<double>;

// The displayed primed formulas satisfy coad(g1 g2) = coad(g1) coad(g2) as written,
// so no inversion of the argument is applied.
inline constexpr bool coad_uses_inverse = false;

template <class T>
DualPoint<T> coad(const GroupElement<T>& g, const DualPoint<T>& xi)
{
    if (g.variant != Variant::Oscillating) throw std::invalid_argument("coadjoint action is implemented for the oscillating variant only");
    if (g.tau != xi.tau) throw std::invalid_argument("tau mismatch between group element and dual point");
    const GroupElement<T> h = coad_uses_inverse ? inverse(g) : g;
    const T tau = xi.tau, f = xi.f, m = xi.m;
    const T c = std::cos(h.b / tau), s = std::sin(h.b / tau);
    const Vec2<T> pp = rot(xi.p, h.phi), kp = rot(xi.k, h.phi);
    const Vec2<T>& a = h.a;
    const Vec2<T>& v = h.v;
    const T sq = norm2(a) / (tau * tau) + norm2(v);

    DualPoint<T> out = xi;
    out.p = pp * c - kp * (s / tau) - (perp(a) * c - perp(v) * (tau * s)) * (f / (tau * tau))
            - (v * (tau * c) + a * s) * (m / tau);
    out.k = pp * (tau * s) + kp * c - (perp(v) * (tau * c) + perp(a) * s) * (f / tau) + (a * c - v * (tau * s)) * m;
    out.h = xi.h - dot(v, pp) + dot(a, kp) / (tau * tau) + f / (tau * tau) * dot(v, perp(a)) + m / T(2) * sq;
    out.j = xi.j + dot(perp(a), pp) + dot(perp(v), kp) - f / T(2) * sq - m * dot(v, perp(a));
    return out;
}

enum class OrbitTag { A, B, C, D, E, F, G, H, I, J, K };

inline constexpr std::array<OrbitTag, 11> all_orbit_tags{OrbitTag::A, OrbitTag::B, OrbitTag::C, OrbitTag::D,
                                                        OrbitTag::E, OrbitTag::F, OrbitTag::G, OrbitTag::H,
                                                        OrbitTag::I, OrbitTag::J, OrbitTag::K};

inline char to_char(OrbitTag t) { return static_cast<char>('A' + static_cast<int>(t)); }

inline OrbitTag orbit_tag_from_char(char c)
{
    if (c >= 'a' && c <= 'k') c = static_cast<char>(c - 'a' + 'A');
    if (c < 'A' || c > 'K') throw std::invalid_argument("orbit class must be one of A..K");
    return static_cast<OrbitTag>(c - 'A');
}

inline int orbit_dimension(OrbitTag t)
{
    switch (t) {
    case OrbitTag::D:
    case OrbitTag::E:
    case OrbitTag::I:
    case OrbitTag::J: return 2;
    case OrbitTag::K: return 0;
    default: return 4;
    }
}

// topology reported as metadata only
inline std::string_view orbit_topology(OrbitTag t)
{
    switch (t) {
    case OrbitTag::A:
    case OrbitTag::F:
    case OrbitTag::G: return "R^4";
    case OrbitTag::B:
    case OrbitTag::C: return "R^3 x S^1";
    case OrbitTag::D:
    case OrbitTag::E: return "R^2";
    case OrbitTag::H: return "R^2 x S^1 x S^1";
    case OrbitTag::I:
    case OrbitTag::J: return "R x S^1";
    case OrbitTag::K: return "point";
    }
    return "";
}

struct OrbitClass {
    OrbitTag tag = OrbitTag::K;
    int dimension = 0;
};

template <class T>
struct InvariantSet {
    std::optional<T> C1, C2, C3, C4, C3p, C4p, C5, C5p;
    // class K keeps the point itself
    std::optional<T> h, j;
};

namespace detail {

template <class T>
T pk_norm(const DualPoint<T>& xi)
{
    return norm2(xi.p) + norm2(xi.k) / (xi.tau * xi.tau);
}

template <class T>
InvariantSet<T> invariants_for(OrbitTag tag, const DualPoint<T>& xi)
{
    const T tau = xi.tau, f = xi.f, m = xi.m;
    const T q = pk_norm(xi);
    const T pxk = cross(xi.p, xi.k);
    InvariantSet<T> I;
    switch (tag) {
    case OrbitTag::A:
        I.C1 = q - T(2) * m * xi.h + T(2) / (tau * tau) * f * xi.j;
        I.C2 = pxk + m * xi.j - f * xi.h;
        break;
    case OrbitTag::B:
    case OrbitTag::D:
        I.C3 = q - T(2) / tau * pxk;
        I.C4 = q + T(2) / tau * pxk - T(4) * f / tau * (xi.h - xi.j / tau);
        if (tag == OrbitTag::D) I.C5 = xi.h + xi.j / tau;
        break;
    case OrbitTag::C:
    case OrbitTag::E:
        I.C3p = q + T(2) / tau * pxk;
        I.C4p = q - T(2) / tau * pxk + T(4) * f / tau * (xi.h + xi.j / tau);
        if (tag == OrbitTag::E) I.C5p = xi.h - xi.j / tau;
        break;
    case OrbitTag::F:
        I.C1 = q - T(2) * m * xi.h;
        I.C2 = pxk + m * xi.j;
        break;
    case OrbitTag::G:
        I.C1 = q + T(2) / (tau * tau) * f * xi.j;
        I.C2 = pxk - f * xi.h;
        break;
    case OrbitTag::H:
        I.C1 = q;
        I.C2 = pxk;
        break;
    case OrbitTag::I:
        I.C1 = q;
        I.C2 = pxk;
        I.C5 = xi.h + xi.j / tau;
        break;
    case OrbitTag::J:
        I.C1 = q;
        I.C2 = pxk;
        I.C5p = xi.h - xi.j / tau;
        break;
    case OrbitTag::K:
        I.C1 = q;
        I.C2 = pxk;
        I.h = xi.h;
        I.j = xi.j;
        break;
    }
    return I;
}

}  // namespace detail

// Stratum of (f, m) only; the finer split inside a stratum is classify's job.
template <class T>
InvariantSet<T> invariants(const DualPoint<T>& xi, T tol = T(1e-8))
{
    const T tau = xi.tau;
    const bool f0 = std::fabs(xi.f) <= tol, m0 = std::fabs(xi.m) <= tol;
    const T scale = std::fmax(std::fabs(xi.f), std::fabs(xi.m) * tau);
    if (!f0 && !m0) {
        if (std::fabs(xi.f - xi.m * tau) <= tol * scale) return detail::invariants_for(OrbitTag::D, xi);
        if (std::fabs(xi.f + xi.m * tau) <= tol * scale) return detail::invariants_for(OrbitTag::E, xi);
        return detail::invariants_for(OrbitTag::A, xi);
    }
    if (f0 && !m0) return detail::invariants_for(OrbitTag::F, xi);
    if (!f0 && m0) return detail::invariants_for(OrbitTag::G, xi);
    auto I = detail::invariants_for(OrbitTag::H, xi);
    I.C5 = xi.h + xi.j / tau;
    I.C5p = xi.h - xi.j / tau;
    return I;
}

template <class T>
std::pair<OrbitClass, InvariantSet<T>> classify(const DualPoint<T>& xi, T tol = T(1e-8))
{
    const T tau = xi.tau;
    const bool f0 = std::fabs(xi.f) <= tol, m0 = std::fabs(xi.m) <= tol;
    const T scale = std::fmax(std::fabs(xi.f), std::fabs(xi.m) * tau);
    const T q = detail::pk_norm(xi);
    const T pxk = cross(xi.p, xi.k);
    OrbitTag tag;
    if (!f0 && !m0) {
        if (std::fabs(xi.f - xi.m * tau) <= tol * scale) {
            const T C3 = q - T(2) / tau * pxk;
            tag = C3 > tol * q ? OrbitTag::B : OrbitTag::D;
        } else if (std::fabs(xi.f + xi.m * tau) <= tol * scale) {
            const T C3p = q + T(2) / tau * pxk;
            tag = C3p > tol * q ? OrbitTag::C : OrbitTag::E;
        } else {
            tag = OrbitTag::A;
        }
    } else if (f0 && !m0) {
        tag = OrbitTag::F;
    } else if (!f0 && m0) {
        tag = OrbitTag::G;
    } else {
        const T C1 = q, C2 = pxk;
        if (C1 <= tol) tag = OrbitTag::K;
        else if (std::fabs(C2 - tau / T(2) * C1) <= tol * C1) tag = OrbitTag::I;
        else if (std::fabs(C2 + tau / T(2) * C1) <= tol * C1) tag = OrbitTag::J;
        else tag = OrbitTag::H;
    }
    return {OrbitClass{tag, orbit_dimension(tag)}, detail::invariants_for(tag, xi)};
}

}  // namespace nhkit
