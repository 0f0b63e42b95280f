#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "funcspace.hpp"
#include "group.hpp"
#include "representations.hpp"
#include "vec2.hpp"

namespace nhkit {

struct PhasePt {
    Vec2d q{};
    Vec2d p{};
};

// Class-F setting: the representation and the kernel share one Hermite basis (lambda^2 = |m| tau).
class MoyalContext {
public:
    MoyalContext(double m, double tau, int N, double C1 = 0.0, double C2 = 0.0) : rep_(labels(m, tau, C1, C2), N) {}

    double m() const { return rep_.labels().m; }
    double tau() const { return rep_.labels().tau; }
    int N() const { return rep_.basis()->N(); }
    const BasisPtr<2>& basis() const { return rep_.basis(); }
    const Rep2D& rep() const { return rep_; }

    // Omega on one axis: 2 exp(i(-2 m q y + 2 (p/m) (-i d/dy))) Pi
    Eigen::MatrixXcd axis_kernel(int axis, double q, double p) const
    {
        const Frame<2>& fr = basis()->frame();
        const double lam = fr.lambda(axis);
        const double mm = m();
        const double alpha = -2 * mm * q / lam;  // coefficient of the frame coordinate x = lambda y
        const double beta = 2 * p / mm * lam;     // coefficient of -i d/dx
        Eigen::MatrixXcd O = 2.0 * exact_displacement_1d(N(), alpha, beta);
        for (int n = 1; n < N(); n += 2) O.col(n) *= -1.0;
        return O;
    }

    std::array<Eigen::MatrixXcd, 2> kernel_axes(const PhasePt& u) const
    {
        return {axis_kernel(0, u.q.x1, u.p.x1), axis_kernel(1, u.q.x2, u.p.x2)};
    }

private:
    static RepLabels labels(double m, double tau, double C1, double C2)
    {
        RepLabels L;
        L.orbit_class = OrbitTag::F;
        L.f = 0.0;
        L.m = m;
        L.tau = tau;
        L.C1 = C1;
        L.C2 = C2;
        return L;
    }

    Rep2D rep_;
};

// g_{qp} = (0, 0, 0, q, -p/m, 0)
inline GroupElementd group_element_for(const PhasePt& u, double m, double tau = 1.0)
{
    if (m == 0.0) throw std::invalid_argument("group_element_for needs m != 0");
    auto g = GroupElementd::identity(tau);
    g.a = u.q;
    g.v = u.p * (-1.0 / m);
    return g;
}

namespace detail {

inline Eigen::VectorXcd apply_axes(const std::array<Eigen::MatrixXcd, 2>& A, const Eigen::VectorXcd& x)
{
    const int N = static_cast<int>(A[0].rows());
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> C(x.data(), N, N);
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> R = A[0] * C * A[1].transpose();
    return Eigen::Map<Eigen::VectorXcd>(R.data(), N * N);
}

}  // namespace detail

inline HermiteState<2> kernel_apply(const MoyalContext& ctx, const PhasePt& u, const HermiteState<2>& psi)
{
    return psi.with(detail::apply_axes(ctx.kernel_axes(u), psi.coeffs));
}

// ||Omega(q,p) psi - U(g) Omega(0,0) U(g)^{-1} psi||
inline double covariance_residual(const MoyalContext& ctx, const PhasePt& u, const HermiteState<2>& psi,
                                  const GroupElementd* mover = nullptr)
{
    const GroupElementd g = mover ? *mover : group_element_for(u, ctx.m(), ctx.tau());
    const auto& rep = ctx.rep();
    const auto lhs = kernel_apply(ctx, u, psi);
    const auto rhs = rep.apply(g, kernel_apply(ctx, PhasePt{}, rep.apply(inverse(g), psi)));
    return distance(lhs, rhs);
}

// ||[Omega(0,0), U(gamma)] psi|| for an isotropy element
inline double isotropy_residual(const MoyalContext& ctx, const GroupElementd& gamma, const HermiteState<2>& psi)
{
    const auto& rep = ctx.rep();
    const auto a = kernel_apply(ctx, PhasePt{}, rep.apply(gamma, psi));
    const auto b = rep.apply(gamma, kernel_apply(ctx, PhasePt{}, psi));
    return distance(a, b);
}

// ------------------------------------------------------------------ traces

// Plain truncated trace Tr[Omega(u) Omega(u')]
inline cplx pair_trace(const MoyalContext& ctx, const PhasePt& u, const PhasePt& v)
{
    const auto A = ctx.kernel_axes(u), B = ctx.kernel_axes(v);
    return (A[0] * B[0]).trace() * (A[1] * B[1]).trace();
}

inline Eigen::VectorXd mode_window(int N, double L)
{
    Eigen::VectorXd w(N);
    for (int n = 0; n < N; ++n) w(n) = std::exp(-(n / L) * (n / L));
    return w;
}

// Trace with the Gaussian mode weight exp(-(n/L)^2) on each axis.
inline cplx pair_trace_windowed(const MoyalContext& ctx, const PhasePt& u, const PhasePt& v, double L)
{
    const auto A = ctx.kernel_axes(u), B = ctx.kernel_axes(v);
    const Eigen::VectorXd w = mode_window(ctx.N(), L);
    cplx t = 1.0;
    for (int k = 0; k < 2; ++k) t *= (w.cast<cplx>().asDiagonal() * (A[k] * B[k])).diagonal().sum();
    return t;
}

inline cplx tri_kernel_plain(const MoyalContext& ctx, const PhasePt& u, const PhasePt& v, const PhasePt& w)
{
    const auto A = ctx.kernel_axes(u), B = ctx.kernel_axes(v), C = ctx.kernel_axes(w);
    return (A[0] * B[0] * C[0]).trace() * (A[1] * B[1] * C[1]).trace();
}

inline cplx tri_kernel_windowed(const MoyalContext& ctx, const PhasePt& u, const PhasePt& v, const PhasePt& w, double L)
{
    const auto A = ctx.kernel_axes(u), B = ctx.kernel_axes(v), C = ctx.kernel_axes(w);
    const Eigen::VectorXd wt = mode_window(ctx.N(), L);
    cplx t = 1.0;
    for (int k = 0; k < 2; ++k) t *= (wt.cast<cplx>().asDiagonal() * (A[k] * B[k] * C[k])).diagonal().sum();
    return t;
}

// Abel-regularized Tr[Omega Omega' Omega'']. Per axis the product is c R_F, R_F the reflection about
// F = u - u' + u''; c is read off on the coherent state centred at F and Tr R_F = 1/2.
inline cplx tri_kernel(const MoyalContext& ctx, const PhasePt& u, const PhasePt& v, const PhasePt& w)
{
    const auto A = ctx.kernel_axes(u), B = ctx.kernel_axes(v), C = ctx.kernel_axes(w);
    const PhasePt F{u.q - v.q + w.q, u.p - v.p + w.p};
    const Frame<2>& fr = ctx.basis()->frame();
    const double m = ctx.m();
    const int N = ctx.N();
    cplx t = 1.0;
    for (int k = 0; k < 2; ++k) {
        const double qk = k == 0 ? F.q.x1 : F.q.x2, pk = k == 0 ? F.p.x1 : F.p.x2;
        // the reflection about (q, p) is Omega(q, p)/2; its ground-state image is the coherent state at (q, p)
        const double lam = fr.lambda(k);
        const Eigen::VectorXcd coh = exact_displacement_1d(N, -m * qk / lam, pk / m * lam).col(0);
        const cplx c = coh.dot(A[k] * (B[k] * (C[k] * coh))) / coh.squaredNorm();
        t *= 0.5 * c;
    }
    return t;
}

// Closed form with the exponent sign that matches the kernel as defined here.
inline cplx tri_kernel_closed_form(const PhasePt& u, const PhasePt& v, const PhasePt& w)
{
    const double s = dot(u.q, v.p - w.p) + dot(v.q, w.p - u.p) + dot(w.q, u.p - v.p);
    return 16.0 * std::exp(-2.0 * I_unit * s);
}

// The closed form with the opposite exponent sign; kept for comparison.
inline cplx tri_kernel_closed_form_conjugate(const PhasePt& u, const PhasePt& v, const PhasePt& w)
{
    return std::conj(tri_kernel_closed_form(u, v, w));
}

// -------------------------------------------------------------- quadrature

struct Quadrature1D {
    std::vector<double> x, w;
};

// Gauss-Legendre nodes on [-L, L]
inline Quadrature1D gauss_legendre(int n, double L)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
    Quadrature1D Q;
    Q.x.resize(n);
    Q.w.resize(n);
    // P_n(z) and P_n'(z) by the three-term recurrence
    auto legendre = [n](double z) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        return std::pair{p1, n * (z * p1 - p0) / (z * z - 1.0)};
    };
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(z);
            const double dz = p / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        const double dp = legendre(z).second;
        const double wt = 2.0 / ((1.0 - z * z) * dp * dp);
        Q.x[i] = -z * L;
        Q.x[n - 1 - i] = z * L;
        Q.w[i] = Q.w[n - 1 - i] = wt * L;
    }
    return Q;
}

// Product grid over one axis's phase plane (q_k, p_k); index iq * n + ip.
struct AxisGrid {
    Quadrature1D rule;
    // node coordinates are (sq x, sp y) for rule nodes x, y
    double sq = 1.0, sp = 1.0;
    int size() const { return static_cast<int>(rule.x.size() * rule.x.size()); }
    double q(int idx) const { return sq * rule.x[idx / rule.x.size()]; }
    double p(int idx) const { return sp * rule.x[idx % rule.x.size()]; }
    // weight of the invariant measure dq dp / (2 pi)
    double weight(int idx) const { return sq * sp * rule.w[idx / rule.w.size()] * rule.w[idx % rule.w.size()] / (2 * M_PI); }
    // squared radius in the rule coordinates
    double radius2(int idx) const { return std::pow(q(idx) / sq, 2) + std::pow(p(idx) / sp, 2); }
};

inline AxisGrid make_axis_grid(int nodes, double L) { return AxisGrid{gauss_legendre(nodes, L)}; }

// box of half-width L in the reduced coordinates (m q / lambda, lambda p / m), where the kernel is m-independent
inline AxisGrid make_axis_grid(const MoyalContext& ctx, int nodes, double L)
{
    const double lam = ctx.basis()->frame().lambda(0), m = std::fabs(ctx.m());
    return AxisGrid{gauss_legendre(nodes, L), lam / m, m / lam};
}

// ------------------------------------------------------------ Weyl symbols

// Separable operator A0 (x) A1 on the two frame axes
struct SeparableOperator {
    Eigen::MatrixXcd A[2];
};

inline SeparableOperator operator*(const SeparableOperator& X, const SeparableOperator& Y)
{
    return SeparableOperator{{X.A[0] * Y.A[0], X.A[1] * Y.A[1]}};
}

inline double frobenius(const SeparableOperator& X) { return X.A[0].norm() * X.A[1].norm(); }

inline double frobenius_distance(const SeparableOperator& X, const SeparableOperator& Y)
{
    auto ip = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a.adjoint() * b).trace(); };
    const double xx = frobenius(X) * frobenius(X), yy = frobenius(Y) * frobenius(Y);
    const cplx xy = ip(X.A[0], Y.A[0]) * ip(X.A[1], Y.A[1]);
    return std::sqrt(std::fmax(0.0, xx + yy - 2 * xy.real()));
}

// W(u) = W_0(q1, p1) W_1(q2, p2)
struct SymbolField {
    Eigen::VectorXcd f[2];
    cplx operator()(int i0, int i1) const { return f[0](i0) * f[1](i1); }
};

// W_A on one axis: Tr[A Omega_k(q, p)] over the axis grid
inline Eigen::VectorXcd axis_symbol(const MoyalContext& ctx, int axis, const Eigen::MatrixXcd& A, const AxisGrid& G)
{
    Eigen::VectorXcd out(G.size());
    for (int i = 0; i < G.size(); ++i) out(i) = (A * ctx.axis_kernel(axis, G.q(i), G.p(i))).trace();
    return out;
}

inline SymbolField weyl_symbol(const MoyalContext& ctx, const SeparableOperator& A, const AxisGrid& G)
{
    return SymbolField{{axis_symbol(ctx, 0, A.A[0], G), axis_symbol(ctx, 1, A.A[1], G)}};
}

// W_A at one point for a general operator on the 2D space
inline cplx weyl_symbol_at(const MoyalContext& ctx, const Eigen::MatrixXcd& A, const PhasePt& u)
{
    const auto K = ctx.kernel_axes(u);
    const int N = ctx.N();
    // Tr[A (K0 x K1)] = sum A[(a b),(c d)] K0[c a] K1[d b]
    cplx s = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d) s += A(a * N + b, c * N + d) * K[0](c, a) * K[1](d, b);
    return s;
}

// A' = int W_A Omega dmu, per axis
inline SeparableOperator reconstruct(const MoyalContext& ctx, const SymbolField& W, const AxisGrid& G)
{
    SeparableOperator out;
    for (int k = 0; k < 2; ++k) {
        out.A[k] = Eigen::MatrixXcd::Zero(ctx.N(), ctx.N());
        for (int i = 0; i < G.size(); ++i) out.A[k] += G.weight(i) * W.f[k](i) * ctx.axis_kernel(k, G.q(i), G.p(i));
    }
    return out;
}

inline double round_trip_error(const MoyalContext& ctx, const SeparableOperator& A, const AxisGrid& G)
{
    const auto Ap = reconstruct(ctx, weyl_symbol(ctx, A, G), G);
    return frobenius_distance(Ap, A) / frobenius(A);
}

// (a * b)(u) on one axis with the per-axis closed-form tri-kernel 4 exp(-2i(...))
inline Eigen::VectorXcd axis_twisted_product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, const AxisGrid& G,
                                             const std::vector<int>& at)
{
    const int n = G.size();
    Eigen::VectorXd Q(n), P(n), W(n);
    for (int i = 0; i < n; ++i) {
        Q(i) = G.q(i);
        P(i) = G.p(i);
        W(i) = G.weight(i);
    }
    // C[u', u''] = exp(-2i (q' p'' - q'' p'))
    Eigen::MatrixXcd C(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) C(i, j) = std::exp(-2.0 * I_unit * (Q(i) * P(j) - Q(j) * P(i)));
    Eigen::VectorXcd out(at.size());
    for (std::size_t s = 0; s < at.size(); ++s) {
        const double q = Q(at[s]), p = P(at[s]);
        Eigen::VectorXcd ma(n), mb(n);
        for (int i = 0; i < n; ++i) {
            ma(i) = a(i) * W(i) * std::exp(-2.0 * I_unit * (q * P(i) - Q(i) * p));
            mb(i) = b(i) * W(i) * std::exp(-2.0 * I_unit * (Q(i) * p - q * P(i)));
        }
        out(s) = 4.0 * (ma.transpose() * C * mb)(0, 0);
    }
    return out;
}

// evaluation points: grid nodes inside the disc of radius r in the rule coordinates
inline std::vector<int> interior_nodes(const AxisGrid& G, double r)
{
    std::vector<int> at;
    for (int i = 0; i < G.size(); ++i)
        if (G.radius2(i) < r * r) at.push_back(i);
    return at;
}

inline SymbolField twisted_product(const SymbolField& a, const SymbolField& b, const AxisGrid& G, const std::vector<int>& at)
{
    return SymbolField{{axis_twisted_product(a.f[0], b.f[0], G, at), axis_twisted_product(a.f[1], b.f[1], G, at)}};
}

inline SymbolField restrict(const SymbolField& a, const std::vector<int>& at)
{
    SymbolField out;
    for (int k = 0; k < 2; ++k) {
        out.f[k].resize(at.size());
        for (std::size_t s = 0; s < at.size(); ++s) out.f[k](s) = a.f[k](at[s]);
    }
    return out;
}

inline double field_norm(const SymbolField& a) { return a.f[0].norm() * a.f[1].norm(); }

inline double field_distance(const SymbolField& a, const SymbolField& b)
{
    const double aa = std::pow(field_norm(a), 2), bb = std::pow(field_norm(b), 2);
    const cplx ab = a.f[0].dot(b.f[0]) * a.f[1].dot(b.f[1]);
    return std::sqrt(std::fmax(0.0, aa + bb - 2 * ab.real()));
}

inline SymbolField identity_symbol(const AxisGrid& G)
{
    return SymbolField{{Eigen::VectorXcd::Ones(G.size()), Eigen::VectorXcd::Ones(G.size())}};
}

// operators built from frame-axis vectors
inline SeparableOperator rank_one(const Eigen::VectorXcd& a0, const Eigen::VectorXcd& a1, const Eigen::VectorXcd& b0,
                                  const Eigen::VectorXcd& b1)
{
    return SeparableOperator{{a0 * b0.adjoint(), a1 * b1.adjoint()}};
}

// coherent state of one axis centred at phase-space point (q, p)
inline Eigen::VectorXcd axis_coherent(const MoyalContext& ctx, int axis, double q, double p)
{
    const double lam = ctx.basis()->frame().lambda(axis), m = ctx.m();
    return exact_displacement_1d(ctx.N(), -m * q / lam, p / m * lam).col(0);
}

}  // namespace nhkit
