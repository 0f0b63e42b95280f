#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "coadjoint.hpp"
#include "group.hpp"
#include "vec2.hpp"

namespace nhkit {

// Canonical coordinates q = k/m, p on an orbit with f = 0, m != 0.
template <class T>
struct PhasePoint {
    Vec2<T> q{};
    Vec2<T> p{};
    T m = T(1);
    T tau = T(1);
    T C1{};
    T C2{};
};

using PhasePointd = PhasePoint<double>;

template <class T>
PhasePoint<T> evolve(const PhasePoint<T>& x0, T t)
{
    if (x0.m == T(0)) throw std::invalid_argument("evolve needs m != 0");
    const T c = std::cos(t / x0.tau), s = std::sin(t / x0.tau);
    PhasePoint<T> x = x0;
    x.q = x0.p * (x0.tau * s / x0.m) + x0.q * c;
    x.p = x0.p * c - x0.q * (x0.m / x0.tau * s);
    return x;
}

template <class T>
T hamiltonian(const PhasePoint<T>& x)
{
    return norm2(x.p) / (T(2) * x.m) + x.m / (T(2) * x.tau * x.tau) * norm2(x.q) - x.C1 / (T(2) * x.m);
}

template <class T>
T angular_momentum(const PhasePoint<T>& x)
{
    return x.C2 / x.m - cross(x.p, x.q);
}

template <class T>
PhasePoint<T> integrate_reference(const PhasePoint<T>& x0, T t, T dt)
{
    if (!(dt > T(0))) throw std::invalid_argument("dt must be positive");
    using S = std::array<T, 4>;
    const T m = x0.m, w2 = T(1) / (x0.tau * x0.tau);
    auto rhs = [&](const S& y) { return S{y[2] / m, y[3] / m, -m * w2 * y[0], -m * w2 * y[1]}; };
    auto axpy = [](const S& y, T h, const S& k) { return S{y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]}; };

    S y{x0.q.x1, x0.q.x2, x0.p.x1, x0.p.x2};
    const long steps = static_cast<long>(std::ceil(std::fabs(t) / dt - T(1e-9)));
    const T h = steps > 0 ? t / static_cast<T>(steps) : T(0);
    for (long n = 0; n < steps; ++n) {
        const S k1 = rhs(y);
        const S k2 = rhs(axpy(y, h / 2, k1));
        const S k3 = rhs(axpy(y, h / 2, k2));
        const S k4 = rhs(axpy(y, h, k3));
        for (int i = 0; i < 4; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    PhasePoint<T> x = x0;
    x.q = {y[0], y[1]};
    x.p = {y[2], y[3]};
    return x;
}

// Linear flow map on (q1, q2, p1, p2).
template <class T>
Eigen::Matrix<T, 4, 4> flow_matrix(T m, T tau, T t)
{
    const T c = std::cos(t / tau), s = std::sin(t / tau);
    Eigen::Matrix<T, 4, 4> M = Eigen::Matrix<T, 4, 4>::Zero();
    for (int i = 0; i < 2; ++i) {
        M(i, i) = c;
        M(i, i + 2) = tau * s / m;
        M(i + 2, i) = -m / tau * s;
        M(i + 2, i + 2) = c;
    }
    return M;
}

template <class T>
T symplectic_residual(const Eigen::Matrix<T, 4, 4>& M)
{
    Eigen::Matrix<T, 4, 4> Jm = Eigen::Matrix<T, 4, 4>::Zero();
    Jm.block(0, 2, 2, 2) = Eigen::Matrix<T, 2, 2>::Identity();
    Jm.block(2, 0, 2, 2) = -Eigen::Matrix<T, 2, 2>::Identity();
    return (M.transpose() * Jm * M - Jm).cwiseAbs().maxCoeff();
}

template <class T>
PhasePoint<T> phase_point_from_dual(const DualPoint<T>& xi)
{
    if (xi.f != T(0) || xi.m == T(0)) throw std::invalid_argument("phase coordinates need f = 0, m != 0");
    const auto I = detail::invariants_for(OrbitTag::F, xi);
    return PhasePoint<T>{xi.k / xi.m, xi.p, xi.m, xi.tau, *I.C1, *I.C2};
}

// Orbit point with the given canonical coordinates; h and j fixed by the invariants.
template <class T>
DualPoint<T> dual_from_phase_point(const PhasePoint<T>& x)
{
    DualPoint<T> xi;
    xi.f = T(0);
    xi.m = x.m;
    xi.tau = x.tau;
    xi.p = x.p;
    xi.k = x.q * x.m;
    xi.h = hamiltonian(x);
    xi.j = angular_momentum(x);
    return xi;
}

}  // namespace nhkit
