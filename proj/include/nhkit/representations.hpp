#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coadjoint.hpp"
#include "funcspace.hpp"
#include "group.hpp"
#include "vec2.hpp"

namespace nhkit {

// Generator convention: X^ = -i dU(exp(eps X))/d eps, so [X^, Y^] = -i [X, Y]^.
struct RepLabels {
    OrbitTag orbit_class = OrbitTag::F;
    double f = 0.0;
    double m = 1.0;
    double tau = 1.0;
    double C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0, C3p = 0.0, C4p = 0.0, C5 = 0.0, C5p = 0.0;
    double kappa1 = 0.0, kappa2 = 0.0;
    Vec2d rho{}, kappa_vec{};
    double h = 0.0, j = 0.0;
    int n = 0, n_prime = 0;
    // nilpotent label x (case B) or y (case C); |x_vec|^2 is C3 or C3'
    Vec2d x_vec{};
};

inline void validate(const RepLabels& L, double tol = 1e-9)
{
    auto fail = [](const std::string& msg) { throw std::invalid_argument("labels: " + msg); };
    if (!(L.tau > 0.0)) fail("tau must be positive");
    const double f = L.f, m = L.m, tau = L.tau;
    const double scale = std::fmax(1.0, std::fmax(std::fabs(f), std::fabs(m) * tau));
    const bool f0 = std::fabs(f) <= tol, m0 = std::fabs(m) <= tol;
    switch (L.orbit_class) {
    case OrbitTag::A:
        if (f0 || m0) fail("class A needs f m != 0");
        if (std::fabs(f - m * tau) <= tol * scale || std::fabs(f + m * tau) <= tol * scale) fail("class A needs f != +-m tau");
        break;
    case OrbitTag::B:
    case OrbitTag::D:
        if (f0 || std::fabs(f - m * tau) > tol * scale) fail("classes B, D need f = m tau != 0");
        break;
    case OrbitTag::C:
    case OrbitTag::E:
        if (f0 || std::fabs(f + m * tau) > tol * scale) fail("classes C, E need f = -m tau != 0");
        break;
    case OrbitTag::F:
        if (!f0 || m0) fail("class F needs f = 0, m != 0");
        break;
    case OrbitTag::G:
        if (f0 || !m0) fail("class G needs m = 0, f != 0");
        break;
    default:
        if (!f0 || !m0) fail("classes H..K need f = m = 0");
    }
    const double x2 = norm2(L.x_vec);
    if ((L.orbit_class == OrbitTag::B || L.orbit_class == OrbitTag::C) && !(x2 > tol)) fail("classes B, C need a nonzero nilpotent label");
    const double rk = std::sqrt(norm2(L.rho) + norm2(L.kappa_vec));
    if (L.orbit_class == OrbitTag::I && norm2(L.rho + perp(L.kappa_vec) / tau) > tol * tol * (1.0 + rk * rk))
        fail("class I needs rho + kappa^{pi/2}/tau = 0");
    if (L.orbit_class == OrbitTag::J && norm2(L.rho - perp(L.kappa_vec) / tau) > tol * tol * (1.0 + rk * rk))
        fail("class J needs rho - kappa^{pi/2}/tau = 0");
    if (L.orbit_class == OrbitTag::H && !(norm2(L.rho) + norm2(L.kappa_vec) / (tau * tau) > tol)) fail("class H needs a nonzero character");
}

// ---------------------------------------------------------------- generators

template <int D>
struct GeneratorSet {
    LinearForm<D> P[2], K[2];
    QuadraticOperator<D> H, J;
};

namespace detail {

template <int D>
QuadraticOperator<D> sq(const LinearForm<D>& a) { return a * a; }

template <int D>
QuadraticOperator<D> pk_square(const GeneratorSet<D>& G, double tau)
{
    return sq(G.P[0]) + sq(G.P[1]) + (sq(G.K[0]) + sq(G.K[1])) * cplx(1.0 / (tau * tau));
}

template <int D>
QuadraticOperator<D> pk_cross(const GeneratorSet<D>& G)
{
    return G.P[0] * G.K[1] - G.P[1] * G.K[0];
}

inline LinearForm<2> y2(int i, double s) { return LinearForm<2>::coord(i, s); }
inline LinearForm<2> d2(int i, cplx s) { return LinearForm<2>::deriv(i, s); }

}  // namespace detail

// Differential generators for cases A, F, G on L^2(R^2).
inline GeneratorSet<2> generators(const RepLabels& L)
{
    using detail::d2;
    using detail::y2;
    const double f = L.f, m = L.m, tau = L.tau;
    GeneratorSet<2> G;
    switch (L.orbit_class) {
    case OrbitTag::A:
    case OrbitTag::G: {
        const double mm = L.orbit_class == OrbitTag::G ? 0.0 : m;
        G.P[0] = y2(1, -f / (2 * tau)) + y2(0, -mm) + d2(0, I_unit / tau);
        G.P[1] = y2(0, -f / (2 * tau)) + y2(1, -mm) + d2(1, -I_unit / tau);
        G.K[0] = y2(1, f / 2) + d2(0, I_unit);
        G.K[1] = y2(0, -f / 2) + d2(1, I_unit);
        const auto q = detail::pk_square(G, tau);
        const auto x = detail::pk_cross(G);
        if (L.orbit_class == OrbitTag::A) {
            const double r = 2 * f / (tau * tau * m);
            const double C = L.C1 - r * L.C2;
            G.H = (q - x * cplx(r) - cplx(C)) * cplx(tau * tau * m / (2 * (tau * tau * m * m - f * f)));
            G.J = (QuadraticOperator<2>::scalar(L.C2) - x + G.H * cplx(f)) * cplx(1.0 / m);
        } else {
            G.H = (x - cplx(L.C2)) * cplx(1.0 / f);
            G.J = (QuadraticOperator<2>::scalar(L.C1) - q) * cplx(tau * tau / (2 * f));
        }
        break;
    }
    case OrbitTag::F:
        G.P[0] = y2(0, -m);
        G.P[1] = y2(1, -m);
        G.K[0] = d2(0, I_unit);
        G.K[1] = d2(1, I_unit);
        G.H = (detail::pk_square(G, tau) - cplx(L.C1)) * cplx(1.0 / (2 * m));
        G.J = (detail::pk_cross(G) - cplx(L.C2)) * cplx(-1.0 / m);
        break;
    default: throw std::invalid_argument("generators: case must be A, F or G");
    }
    return G;
}

// Frame in which the case's Hamiltonian is close to a diagonal oscillator.
inline Frame<2> adapted_frame(const RepLabels& L)
{
    Frame<2> fr;
    const double f = L.f, m = L.m, tau = L.tau;
    switch (L.orbit_class) {
    case OrbitTag::A: {
        const double k = f / (tau * m);
        const double r = 1.0 / std::sqrt(2.0);
        fr.R << r, r, r, -r;
        fr.Q << -m * tau / 2, 0.0, 0.0, m * tau / 2;
        fr.lambda << std::sqrt(std::fabs(m * (1 + k)) * tau / 2), std::sqrt(std::fabs(m * (1 - k)) * tau / 2);
        break;
    }
    case OrbitTag::F: fr.lambda.setConstant(std::sqrt(std::fabs(m) * tau)); break;
    case OrbitTag::G: fr.lambda.setConstant(std::sqrt(std::fabs(f) / 2)); break;
    default: throw std::invalid_argument("adapted_frame: case must be A, F or G");
    }
    return fr;
}

// 1D frame centred on the minimum of a positive quadratic symbol a y^2 + 2 b y p + c p^2 + l_y y + l_p p.
inline Frame<1> oscillator_frame_1d(const QuadraticOperator<1>& Q)
{
    const double a = Q.quad_yy(0, 0).real();
    const double c = Q.quad_dd(0, 0).real();
    const double b = 0.5 * (I_unit * Q.quad_yd(0, 0)).real();
    const double ly = Q.linear_y(0).real();
    const double lp = (I_unit * Q.linear_d(0)).real();
    const double det = a * c - b * b;
    if (!(det > 0)) throw std::invalid_argument("oscillator_frame_1d: symbol is not definite");
    const double yc = -(c * ly - b * lp) / (2 * det);
    const double pc = -(a * lp - b * ly) / (2 * det);
    Frame<1> fr;
    const double chirp = -b / c;
    fr.Q(0, 0) = chirp;
    fr.y0(0) = yc;
    fr.k0(0) = pc - chirp * yc;
    fr.lambda(0) = std::pow(det / (c * c), 0.25);
    return fr;
}

// ------------------------------------------------------------- nilpotent part

// D(n) = e^{i c0} e^{i beta.y} psi(y - s)
template <int D>
struct NilpotentAction {
    double c0 = 0.0;
    RVec<D> beta = RVec<D>::Zero();
    RVec<D> s = RVec<D>::Zero();
};

inline void require_nilpotent(const GroupElementd& n)
{
    if (std::fabs(n.b) > 1e-12 || std::fabs(n.phi) > 1e-12) throw std::invalid_argument("nilpotent element needs b = phi = 0");
}

inline NilpotentAction<2> nilpotent_action_2d(const RepLabels& L, const GroupElementd& n)
{
    require_nilpotent(n);
    const double f = L.f, tau = L.tau;
    NilpotentAction<2> act;
    if (L.orbit_class == OrbitTag::F) {
        const double m = L.m;
        act.c0 = m * n.theta;
        act.beta << -m * n.a.x1, -m * n.a.x2;
        act.s << n.v.x1, n.v.x2;
        return act;
    }
    if (L.orbit_class != OrbitTag::A && L.orbit_class != OrbitTag::G)
        throw std::invalid_argument("nilpotent_action_2d: case must be A, F or G");
    const double m = L.orbit_class == OrbitTag::G ? 0.0 : L.m;
    const Vec2d a = n.a, v = n.v, ar = reversed(n.a);
    act.c0 = f * (n.alpha + cross(v, ar) / (2 * tau)) + m * (n.theta - dot(ar, a) / (2 * tau));
    act.beta << -f / 2 * v.x2 - f / (2 * tau) * ar.x2 - m * a.x1, f / 2 * v.x1 + f / (2 * tau) * ar.x1 - m * a.x2;
    const Vec2d s = v - ar / tau;
    act.s << s.x1, s.x2;
    return act;
}

// D_{f,x} (classes B, D) and D_{f,y} (classes C, E) on L^2(R)
inline NilpotentAction<1> nilpotent_action_1d(const RepLabels& L, const GroupElementd& n)
{
    require_nilpotent(n);
    const double f = L.f, tau = L.tau, m = L.m;
    const Vec2d a = n.a, v = n.v;
    const bool withx = L.orbit_class == OrbitTag::B || L.orbit_class == OrbitTag::C;
    const Vec2d x = withx ? L.x_vec : Vec2d{};
    NilpotentAction<1> act;
    if (L.orbit_class == OrbitTag::B || L.orbit_class == OrbitTag::D) {
        act.c0 = f * (n.alpha - 0.5 * (v.x1 * v.x1 + v.x1 * v.x2 + (a.x2 * a.x2 - a.x1 * a.x2) / (tau * tau))
                      + v.x1 / tau * (a.x2 - a.x1));
        act.beta(0) = f * (v.x1 - a.x2 / tau);
        act.s(0) = v.x1 + v.x2 + a.x1 / tau - a.x2 / tau;
    } else if (L.orbit_class == OrbitTag::C || L.orbit_class == OrbitTag::E) {
        act.c0 = f * (n.alpha + 0.5 * (v.x1 * v.x1 - v.x1 * v.x2 + (a.x2 * a.x2 + a.x1 * a.x2) / (tau * tau))
                      + v.x1 / tau * (a.x1 + a.x2));
        act.beta(0) = -f * (v.x1 + a.x2 / tau);
        act.s(0) = v.x1 - v.x2 + (a.x1 + a.x2) / tau;
    } else {
        throw std::invalid_argument("nilpotent_action_1d: case must be B, C, D or E");
    }
    // the central M character is not displayed for these cases; it is needed for a representation
    act.c0 += dot(x, a) + m * n.theta;
    return act;
}

// e^{i beta.y} T_s = e^{i beta.s/2} exp(i (beta.y + i s.d)), one exact displacement per frame axis
template <int D>
HermiteState<D> apply_nilpotent(const NilpotentAction<D>& act, const HermiteState<D>& psi)
{
    LinearForm<D> L;
    for (int i = 0; i < D; ++i) {
        L.y(i) = act.beta(i);
        L.d(i) = I_unit * act.s(i);
    }
    const LinearExp<D> E(psi.basis, L, 1.0, LinearExp<D>::Mode::ExactBlock);
    const cplx ph = std::exp(I_unit * (act.c0 + 0.5 * act.beta.dot(act.s)));
    return psi.with(ph * E.apply(psi.coeffs));
}

// Linear-generator matrices of case B..E in one dimension.
inline GeneratorSet<1> generators_1d(const RepLabels& L)
{
    const double f = L.f, tau = L.tau;
    const bool withx = L.orbit_class == OrbitTag::B || L.orbit_class == OrbitTag::C;
    const Vec2d x = withx ? L.x_vec : Vec2d{};
    using LF = LinearForm<1>;
    GeneratorSet<1> G;
    if (L.orbit_class == OrbitTag::B || L.orbit_class == OrbitTag::D) {
        G.P[0] = LF::constant(x.x1) + LF::deriv(0, I_unit / tau);
        G.P[1] = LF::coord(0, -f / tau) + LF::constant(x.x2) + LF::deriv(0, -I_unit / tau);
        G.K[0] = LF::coord(0, f) + LF::deriv(0, I_unit);
        G.K[1] = LF::deriv(0, I_unit);
    } else if (L.orbit_class == OrbitTag::C || L.orbit_class == OrbitTag::E) {
        G.P[0] = LF::constant(x.x1) + LF::deriv(0, I_unit / tau);
        G.P[1] = LF::coord(0, -f / tau) + LF::constant(x.x2) + LF::deriv(0, I_unit / tau);
        G.K[0] = LF::coord(0, -f) + LF::deriv(0, I_unit);
        G.K[1] = LF::deriv(0, -I_unit);
    } else {
        throw std::invalid_argument("generators_1d: case must be B, C, D or E");
    }
    return G;
}

// Generator of the W factor: B, D give H - J/tau; C, E give H + J/tau.
inline QuadraticOperator<1> w_generator(const RepLabels& L)
{
    const GeneratorSet<1> G = generators_1d(L);
    const double tau = L.tau;
    const auto q = detail::pk_square(G, tau);
    const auto x = detail::pk_cross(G);
    const bool minus = L.orbit_class == OrbitTag::B || L.orbit_class == OrbitTag::D;
    const double C4 = minus ? L.C4 : L.C4p;
    const double sgn = minus ? 1.0 : -1.0;
    return (q + x * cplx(sgn * 2.0 / tau) - cplx(C4)) * cplx(1.0 / (4 * L.m));
}

// ------------------------------------------------------------ probe states

template <int D>
HermiteState<D> random_low_state(const BasisPtr<D>& basis, std::mt19937_64& rng, int modes = 4)
{
    std::normal_distribution<double> nd;
    HermiteState<D> psi(basis);
    const int N = basis->N();
    if constexpr (D == 1) {
        for (int i = 0; i < modes; ++i) psi.coeffs(i) = cplx(nd(rng), nd(rng));
    } else {
        for (int i = 0; i < modes; ++i)
            for (int k = 0; k < modes; ++k) psi.coeffs(i * N + k) = cplx(nd(rng), nd(rng));
    }
    psi.coeffs.normalize();
    return psi;
}

// ------------------------------------------------------------- cases A, F, G

class Rep2D {
public:
    Rep2D(const RepLabels& labels, int N) : labels_(labels)
    {
        validate(labels_);
        if (labels_.orbit_class != OrbitTag::A && labels_.orbit_class != OrbitTag::F && labels_.orbit_class != OrbitTag::G)
            throw std::invalid_argument("Rep2D: case must be A, F or G");
        gen_ = generators(labels_);
        basis_ = make_basis<2>(N, adapted_frame(labels_));
        expH_ = SpectralExp(basis_->matrix(gen_.H));
        expJ_ = SpectralExp(basis_->matrix(gen_.J));
    }

    const RepLabels& labels() const { return labels_; }
    const BasisPtr<2>& basis() const { return basis_; }
    const GeneratorSet<2>& generator_set() const { return gen_; }

    HermiteState<2> nilpotent(const GroupElementd& n, const HermiteState<2>& psi) const
    {
        return apply_nilpotent(nilpotent_action_2d(labels_, n), psi);
    }

    HermiteState<2> time(double b, const HermiteState<2>& psi) const { return psi.with(expH_.apply(b, psi.coeffs)); }
    HermiteState<2> rotation(double phi, const HermiteState<2>& psi) const { return psi.with(expJ_.apply(phi, psi.coeffs)); }

    // U(g) = W(b) D(n') W(phi) with g = T(b) n' R(phi)
    HermiteState<2> apply(const GroupElementd& g, const HermiteState<2>& psi) const
    {
        check_tau(g);
        const auto Tm = one_parameter<double>(2, -g.b, labels_.tau);
        const auto Rm = one_parameter<double>(7, -g.phi, labels_.tau);
        GroupElementd n = compose(compose(Tm, g), Rm);
        n.b = 0.0;
        n.phi = 0.0;
        return time(g.b, nilpotent(n, rotation(g.phi, psi)));
    }

    // matrix of the algebra generator along a one-parameter direction (F, M, H, P1, P2, K1, K2, J)
    Eigen::MatrixXcd generator_matrix(int direction) const
    {
        const int n = basis_->size();
        switch (direction) {
        case 0: return cplx(labels_.orbit_class == OrbitTag::F ? 0.0 : labels_.f) * Eigen::MatrixXcd::Identity(n, n);
        case 1: return cplx(labels_.orbit_class == OrbitTag::G ? 0.0 : labels_.m) * Eigen::MatrixXcd::Identity(n, n);
        case 2: return basis_->matrix(gen_.H);
        case 3: return basis_->matrix(QuadraticOperator<2>::from(gen_.P[0]));
        case 4: return basis_->matrix(QuadraticOperator<2>::from(gen_.P[1]));
        case 5: return basis_->matrix(QuadraticOperator<2>::from(gen_.K[0]));
        case 6: return basis_->matrix(QuadraticOperator<2>::from(gen_.K[1]));
        case 7: return basis_->matrix(gen_.J);
        default: throw std::invalid_argument("generator direction out of range");
        }
    }

private:
    void check_tau(const GroupElementd& g) const
    {
        if (g.tau != labels_.tau || g.variant != Variant::Oscillating) throw std::invalid_argument("group element does not match labels");
    }

    RepLabels labels_;
    GeneratorSet<2> gen_;
    BasisPtr<2> basis_;
    SpectralExp expH_, expJ_;
};

inline HermiteState<2> full_rep_apply(const Rep2D& rep, const GroupElementd& g, const HermiteState<2>& psi)
{
    return rep.apply(g, psi);
}

inline HermiteState<2> nilpotent_rep_apply(const Rep2D& rep, const GroupElementd& n, const HermiteState<2>& psi)
{
    return rep.nilpotent(n, psi);
}

// relative central-difference residual of dU/d eps = i X psi
inline double generator_check(const Rep2D& rep, int direction, const HermiteState<2>& psi, double eps = 1e-4)
{
    const double tau = rep.labels().tau;
    const auto up = rep.apply(one_parameter<double>(direction, eps, tau), psi);
    const auto dn = rep.apply(one_parameter<double>(direction, -eps, tau), psi);
    const Eigen::VectorXcd fd = (up.coeffs - dn.coeffs) / (2 * eps);
    const Eigen::VectorXcd ex = I_unit * (rep.generator_matrix(direction) * psi.coeffs);
    return (fd - ex).norm() / std::fmax(1.0, ex.norm());
}

// ------------------------------------------------------------- cases D, E

class RepDE {
public:
    RepDE(const RepLabels& labels, int N) : labels_(labels)
    {
        validate(labels_);
        if (labels_.orbit_class != OrbitTag::D && labels_.orbit_class != OrbitTag::E)
            throw std::invalid_argument("RepDE: case must be D or E");
        Q_ = w_generator(labels_);
        basis_ = make_basis<1>(N, oscillator_frame_1d(Q_));
        expQ_ = SpectralExp(basis_->matrix(Q_));
    }

    const RepLabels& labels() const { return labels_; }
    const BasisPtr<1>& basis() const { return basis_; }
    const QuadraticOperator<1>& w_operator() const { return Q_; }

    // W(b, phi): scalar part from C5 (C5'), quadratic part at the complementary combination
    HermiteState<1> w(double b, double phi, const HermiteState<1>& psi) const
    {
        const double tau = labels_.tau;
        const bool d = labels_.orbit_class == OrbitTag::D;
        const double scal = d ? 0.5 * (b + tau * phi) * labels_.C5 : 0.5 * (b - tau * phi) * labels_.C5p;
        const double quad = d ? 0.5 * (b - tau * phi) : 0.5 * (b + tau * phi);
        return psi.with(std::exp(I_unit * scal) * expQ_.apply(quad, psi.coeffs));
    }

    // U(g) = rho(k) D(n') W(k), g = n' k, k = T(b) R(phi)
    HermiteState<1> apply(const GroupElementd& g, const HermiteState<1>& psi) const
    {
        if (g.tau != labels_.tau || g.variant != Variant::Oscillating) throw std::invalid_argument("group element does not match labels");
        const double tau = labels_.tau;
        auto k = compose(one_parameter<double>(2, g.b, tau), one_parameter<double>(7, g.phi, tau));
        GroupElementd n = compose(g, inverse(k));
        n.b = 0.0;
        n.phi = 0.0;
        const cplx ch = std::exp(I_unit * (g.b * labels_.kappa1 + g.phi * labels_.kappa2));
        auto out = apply_nilpotent(nilpotent_action_1d(labels_, n), w(g.b, g.phi, psi));
        out.coeffs *= ch;
        return out;
    }

private:
    RepLabels labels_;
    QuadraticOperator<1> Q_;
    BasisPtr<1> basis_;
    SpectralExp expQ_;
};

inline HermiteState<1> rep_de_apply(const RepDE& rep, const GroupElementd& g, const HermiteState<1>& psi)
{
    return rep.apply(g, psi);
}

// ------------------------------------------------------------ induced cases

// Uniform periodic grid t_i = i * 2 pi / n; shifts must be whole steps.
inline int grid_shift(double shift, int n, double tol = 1e-9)
{
    const double h = 2 * M_PI / n;
    const double k = shift / h;
    const double r = std::round(k);
    if (std::fabs(k - r) > tol * std::fmax(1.0, std::fabs(k))) throw std::invalid_argument("grid shift is not a whole number of steps");
    return static_cast<int>(r);
}

inline int wrap_index(long i, int n) { return static_cast<int>(((i % n) + n) % n); }

// eta = s(t)^{-1} g s(t') with s(t) = T(tau t); t' is kept unwrapped so eta lies in the stabilizer
inline GroupElementd induction_element(const GroupElementd& g, double t, double tprime)
{
    const double tau = g.tau;
    return compose(compose(one_parameter<double>(2, -tau * t, tau), g), one_parameter<double>(2, tau * tprime, tau));
}

// projection onto the coset coordinate: b/tau + phi for B, J; b/tau - phi for C, I
inline double coset_sign(OrbitTag tag)
{
    switch (tag) {
    case OrbitTag::B:
    case OrbitTag::J: return 1.0;
    case OrbitTag::C:
    case OrbitTag::I: return -1.0;
    default: throw std::invalid_argument("coset_sign: induced case expected");
    }
}

struct TGrid1D {
    int n = 16;
    std::vector<Eigen::VectorXcd> values;
};

class RepBC {
public:
    RepBC(const RepLabels& labels, int N, int grid) : labels_(labels), grid_(grid)
    {
        validate(labels_);
        if (labels_.orbit_class != OrbitTag::B && labels_.orbit_class != OrbitTag::C)
            throw std::invalid_argument("RepBC: case must be B or C");
        if (grid % 8 != 0 || grid <= 0) throw std::invalid_argument("t-grid size must be a positive multiple of 8");
        Q_ = w_generator(labels_);
        basis_ = make_basis<1>(N, oscillator_frame_1d(Q_));
        expQ_ = SpectralExp(basis_->matrix(Q_));
    }

    const BasisPtr<1>& basis() const { return basis_; }
    int grid() const { return grid_; }
    double t(int i) const { return 2 * M_PI * i / grid_; }

    // Upsilon(eta) for eta in N x L: character e^{i b C} with C = kappa1, then D(n') W(l)
    Eigen::VectorXcd upsilon(const GroupElementd& eta, const Eigen::VectorXcd& x) const
    {
        const double tau = labels_.tau;
        const double bl = eta.b;
        auto l = compose(one_parameter<double>(2, bl, tau), one_parameter<double>(7, eta.phi, tau));
        GroupElementd n = compose(eta, inverse(l));
        n.b = 0.0;
        n.phi = 0.0;
        const HermiteState<1> w(basis_, expQ_.apply(bl, x));
        const auto out = apply_nilpotent(nilpotent_action_1d(labels_, n), w);
        return std::exp(I_unit * bl * labels_.kappa1) * out.coeffs;
    }

    TGrid1D apply(const GroupElementd& g, const TGrid1D& psi) const
    {
        if (psi.n != grid_ || static_cast<int>(psi.values.size()) != grid_) throw std::invalid_argument("t-grid size mismatch");
        const double shift = g.b / labels_.tau + coset_sign(labels_.orbit_class) * g.phi;
        const int k = grid_shift(shift, grid_);
        TGrid1D out;
        out.n = grid_;
        out.values.resize(grid_);
        for (int i = 0; i < grid_; ++i) {
            const double ti = t(i);
            const GroupElementd eta = induction_element(g, ti, ti - shift);
            out.values[i] = upsilon(eta, psi.values[wrap_index(static_cast<long>(i) - k, grid_)]);
        }
        return out;
    }

    TGrid1D random_state(std::mt19937_64& rng, int modes = 4) const
    {
        TGrid1D psi;
        psi.n = grid_;
        for (int i = 0; i < grid_; ++i) psi.values.push_back(random_low_state<1>(basis_, rng, modes).coeffs);
        double s = 0.0;
        for (auto& v : psi.values) s += v.squaredNorm();
        for (auto& v : psi.values) v /= std::sqrt(s);
        return psi;
    }

private:
    RepLabels labels_;
    int grid_;
    QuadraticOperator<1> Q_;
    BasisPtr<1> basis_;
    SpectralExp expQ_;
};

inline double norm(const TGrid1D& psi)
{
    double s = 0.0;
    for (const auto& v : psi.values) s += v.squaredNorm();
    return std::sqrt(s);
}

inline double distance(const TGrid1D& a, const TGrid1D& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += (a.values[i] - b.values[i]).squaredNorm();
    return std::sqrt(s);
}

inline TGrid1D rep_bc_apply(const RepBC& rep, const GroupElementd& g, const TGrid1D& psi) { return rep.apply(g, psi); }

// Scalar grids for H (2-torus, t1 in [0, 2 pi tau), t2 in [0, 2 pi)) and I, J (circle).
struct ScalarGrid {
    int n1 = 16, n2 = 1;
    Eigen::VectorXcd values;  // index i1 * n2 + i2
};

class RepHIJ {
public:
    RepHIJ(const RepLabels& labels, int grid) : labels_(labels), grid_(grid)
    {
        validate(labels_);
        const auto c = labels_.orbit_class;
        if (c != OrbitTag::H && c != OrbitTag::I && c != OrbitTag::J) throw std::invalid_argument("RepHIJ: case must be H, I or J");
        if (grid % 8 != 0 || grid <= 0) throw std::invalid_argument("grid size must be a positive multiple of 8");
    }

    int n1() const { return grid_; }
    int n2() const { return labels_.orbit_class == OrbitTag::H ? grid_ : 1; }

    cplx character(const GroupElementd& n) const
    {
        return std::exp(I_unit * (dot(labels_.rho, n.a) + dot(labels_.kappa_vec, n.v)));
    }

    ScalarGrid apply(const GroupElementd& g, const ScalarGrid& psi) const
    {
        const double tau = labels_.tau;
        ScalarGrid out = psi;
        const int N1 = n1(), N2 = n2();
        if (psi.n1 != N1 || psi.n2 != N2 || psi.values.size() != N1 * N2) throw std::invalid_argument("grid size mismatch");
        if (labels_.orbit_class == OrbitTag::H) {
            const int k1 = grid_shift(g.b / tau, N1), k2 = grid_shift(g.phi, N2);
            auto s = [tau](double t1, double t2) {
                return compose(one_parameter<double>(2, t1, tau), one_parameter<double>(7, t2, tau));
            };
            for (int i1 = 0; i1 < N1; ++i1)
                for (int i2 = 0; i2 < N2; ++i2) {
                    const double t1 = 2 * M_PI * tau * i1 / N1, t2 = 2 * M_PI * i2 / N2;
                    const auto eta = compose(compose(inverse(s(t1, t2)), g), s(t1 - g.b, t2 - g.phi));
                    out.values(i1 * N2 + i2) =
                        character(eta) * psi.values(wrap_index(i1 - k1, N1) * N2 + wrap_index(i2 - k2, N2));
                }
            return out;
        }
        const double shift = g.b / tau + coset_sign(labels_.orbit_class) * g.phi;
        const int k = grid_shift(shift, N1);
        const double C5 = labels_.orbit_class == OrbitTag::I ? labels_.C5 : labels_.C5p;
        for (int i = 0; i < N1; ++i) {
            const double ti = 2 * M_PI * i / N1;
            const auto eta = induction_element(g, ti, ti - shift);
            auto l = compose(one_parameter<double>(2, eta.b, tau), one_parameter<double>(7, eta.phi, tau));
            const auto n = compose(eta, inverse(l));
            out.values(i) = character(n) * std::exp(I_unit * eta.b * C5) * psi.values(wrap_index(i - k, N1));
        }
        return out;
    }

    ScalarGrid random_state(std::mt19937_64& rng) const
    {
        std::normal_distribution<double> nd;
        ScalarGrid psi;
        psi.n1 = n1();
        psi.n2 = n2();
        psi.values.resize(psi.n1 * psi.n2);
        for (int i = 0; i < psi.values.size(); ++i) psi.values(i) = cplx(nd(rng), nd(rng));
        psi.values.normalize();
        return psi;
    }

private:
    RepLabels labels_;
    int grid_;
};

inline ScalarGrid rep_hij_apply(const RepHIJ& rep, const GroupElementd& g, const ScalarGrid& psi) { return rep.apply(g, psi); }

inline cplx rep_k(const RepLabels& L, const GroupElementd& g)
{
    return std::exp(I_unit * g.b * L.h) * std::exp(I_unit * g.phi * L.j);
}

}  // namespace nhkit
