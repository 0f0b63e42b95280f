#pragma once

#include <cmath>

namespace nhkit {

template <class T>
struct Vec2 {
    T x1{};
    T x2{};

    constexpr Vec2 operator+(const Vec2& o) const { return {x1 + o.x1, x2 + o.x2}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x1 - o.x1, x2 - o.x2}; }
    constexpr Vec2 operator-() const { return {-x1, -x2}; }
    constexpr Vec2 operator*(T s) const { return {x1 * s, x2 * s}; }
    constexpr Vec2 operator/(T s) const { return {x1 / s, x2 / s}; }
    constexpr Vec2& operator+=(const Vec2& o) { x1 += o.x1; x2 += o.x2; return *this; }
    constexpr bool operator==(const Vec2&) const = default;
};

template <class T>
constexpr Vec2<T> operator*(T s, const Vec2<T>& u) { return u * s; }

template <class T>
constexpr T dot(const Vec2<T>& u, const Vec2<T>& v) { return u.x1 * v.x1 + u.x2 * v.x2; }

template <class T>
constexpr T norm2(const Vec2<T>& u) { return dot(u, u); }

// u1 v2 - u2 v1
template <class T>
constexpr T cross(const Vec2<T>& u, const Vec2<T>& v) { return u.x1 * v.x2 - u.x2 * v.x1; }

// u^{pi/2}: counterclockwise quarter turn, so that perp(u).v == cross(u, v)
template <class T>
constexpr Vec2<T> perp(const Vec2<T>& u) { return {-u.x2, u.x1}; }

// u^r = (-u1, u2)
template <class T>
constexpr Vec2<T> reversed(const Vec2<T>& u) { return {-u.x1, u.x2}; }

template <class T>
Vec2<T> rot(const Vec2<T>& u, T phi)
{
    const T c = std::cos(phi), s = std::sin(phi);
    return {c * u.x1 - s * u.x2, s * u.x1 + c * u.x2};
}

template <class T>
T max_abs(const Vec2<T>& u) { return std::fmax(std::fabs(u.x1), std::fabs(u.x2)); }

using Vec2d = Vec2<double>;

}  // namespace nhkit
