#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "coadjoint.hpp"
#include "dynamics.hpp"
#include "group.hpp"
#include "moyal.hpp"
#include "representations.hpp"

namespace nhkit::verify {

struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    // "<=", ">=" or "==" against bound
    std::string relation = "<=";
    bool pass = false;
};

inline Check le(std::string name, double value, double bound)
{
    return {std::move(name), value, bound, "<=", std::isfinite(value) && value <= bound};
}

inline Check ge(std::string name, double value, double bound)
{
    return {std::move(name), value, bound, ">=", std::isfinite(value) && value >= bound};
}

inline Check eq(std::string name, double value, double expected)
{
    return {std::move(name), value, expected, "==", value == expected};
}

inline Check flag(std::string name, bool ok) { return {std::move(name), ok ? 1.0 : 0.0, 1.0, "==", ok}; }

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    // informational numbers, not pass/fail
    std::map<std::string, double> notes;

    bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

// values that only need to stop improving once they reach the floating-point floor
inline bool non_increasing(const std::vector<double>& v, double floor = 1e-10)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > std::fmax(v[i - 1], floor) * (1 + 1e-9)) return false;
    return true;
}

// ----------------------------------------------------------------- sampling

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double uniform(double r) { return uniform(-r, r); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    Vec2d vec(double r) { return {uniform(r), uniform(r)}; }

    Vec2d disk(double r)
    {
        Vec2d v;
        do v = vec(1.0);
        while (norm2(v) > 1.0);
        return v * r;
    }

    GroupElementd element(double tau, double r = 2.0, Variant var = Variant::Oscillating)
    {
        GroupElementd g;
        g.tau = tau;
        g.variant = var;
        g.alpha = uniform(r);
        g.theta = uniform(r);
        g.b = uniform(r);
        g.a = vec(r);
        g.v = vec(r);
        g.phi = uniform(r);
        return g;
    }

    // element whose coset shift b/tau + sign phi is a whole number of grid steps
    GroupElementd on_grid(double tau, double sign, int grid, double r = 0.5)
    {
        auto g = element(tau, r);
        const int k = integer(-2, 2);
        g.phi = sign * (k * 2 * M_PI / grid - g.b / tau);
        return g;
    }

    // case H: b on the t1 lattice (period 2 pi tau), phi on the t2 lattice
    GroupElementd on_torus(double tau, int grid, double r = 0.5)
    {
        auto g = element(tau, r);
        g.b = tau * integer(-3, 3) * 2 * M_PI / grid;
        g.phi = integer(-3, 3) * 2 * M_PI / grid;
        return g;
    }

    DualPointd dual(OrbitTag tag, double tau)
    {
        DualPointd x;
        x.tau = tau;
        x.h = uniform(2.0);
        x.j = uniform(2.0);
        x.p = vec(1.5);
        x.k = vec(1.5);
        auto nonzero = [&](double r) {
            double s = 0.0;
            while (std::fabs(s) < 0.2) s = uniform(r);
            return s;
        };
        switch (tag) {
        case OrbitTag::A:
            x.m = nonzero(2.0);
            do x.f = nonzero(2.0);
            while (std::fabs(std::fabs(x.f) - std::fabs(x.m) * tau) < 0.2);
            break;
        case OrbitTag::B:
        case OrbitTag::D:
            x.m = nonzero(2.0);
            x.f = x.m * tau;
            if (tag == OrbitTag::D) x.k = perp(x.p) * tau;
            else
                while (norm2(x.k / tau - perp(x.p)) < 0.05) x.k = vec(1.5);
            break;
        case OrbitTag::C:
        case OrbitTag::E:
            x.m = nonzero(2.0);
            x.f = -x.m * tau;
            if (tag == OrbitTag::E) x.k = -perp(x.p) * tau;
            else
                while (norm2(x.k / tau + perp(x.p)) < 0.05) x.k = vec(1.5);
            break;
        case OrbitTag::F: x.m = nonzero(2.0); break;
        case OrbitTag::G: x.f = nonzero(2.0); break;
        case OrbitTag::H:
            while (norm2(x.k / tau - perp(x.p)) < 0.05 || norm2(x.k / tau + perp(x.p)) < 0.05) x.k = vec(1.5);
            break;
        case OrbitTag::I:
            while (norm2(x.p) < 0.05) x.p = vec(1.5);
            x.k = perp(x.p) * tau;
            break;
        case OrbitTag::J:
            while (norm2(x.p) < 0.05) x.p = vec(1.5);
            x.k = -perp(x.p) * tau;
            break;
        case OrbitTag::K:
            x.p = {};
            x.k = {};
            break;
        }
        return x;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// --------------------------------------------------------- 1: group axioms

template <class T>
GroupElement<T> cast_element(const GroupElementd& g)
{
    GroupElement<T> h;
    h.alpha = g.alpha;
    h.theta = g.theta;
    h.b = g.b;
    h.a = {g.a.x1, g.a.x2};
    h.v = {g.v.x1, g.v.x2};
    h.phi = g.phi;
    h.variant = g.variant;
    h.tau = g.tau;
    return h;
}

struct AxiomResiduals {
    double assoc = 0, ident = 0, inv = 0, invol = 0, proj = 0;
};

template <class T>
void accumulate_axioms(AxiomResiduals& r, const GroupElementd& d1, const GroupElementd& d2, const GroupElementd& d3)
{
    const auto g1 = cast_element<T>(d1), g2 = cast_element<T>(d2), g3 = cast_element<T>(d3);
    auto upd = [](double& a, T b) { a = std::fmax(a, static_cast<double>(b)); };
    upd(r.assoc, distance(compose(compose(g1, g2), g3), compose(g1, compose(g2, g3))));
    const auto e = GroupElement<T>::identity(g1.tau, g1.variant);
    upd(r.ident, std::fmax(distance(compose(e, g1), g1), distance(compose(g1, e), g1)));
    upd(r.inv, std::fmax(distance(compose(g1, inverse(g1)), e), distance(compose(inverse(g1), g1), e)));
    upd(r.invol, distance(inverse(inverse(g1)), g1));
    // dropping alpha, theta commutes with composition
    auto h1 = g1, h2 = g2;
    h1.alpha = h1.theta = h2.alpha = h2.theta = T(0);
    auto p = compose(g1, g2), q = compose(h1, h2);
    p.alpha = p.theta = q.alpha = q.theta = T(0);
    upd(r.proj, distance(p, q));
}

// The expanding law carries cosh^2(b/tau) up to e^8 on this range, so its identities are
// evaluated in extended precision; the double-precision figures are kept as notes.
inline Criterion group_axioms(std::uint64_t seed, int samples = 10000,
                              std::vector<Variant> variants = {Variant::Oscillating, Variant::Expanding})
{
    Sampler S(seed);
    Criterion c{1, "group axioms", {}, {}};
    AxiomResiduals osc, exp_ld, exp_d;
    for (const double tau : {0.5, 1.0, 2.0})
        for (const Variant var : variants)
            for (int s = 0; s < samples; ++s) {
                const auto g1 = S.element(tau, 2.0, var), g2 = S.element(tau, 2.0, var), g3 = S.element(tau, 2.0, var);
                if (var == Variant::Oscillating) {
                    accumulate_axioms<double>(osc, g1, g2, g3);
                } else {
                    accumulate_axioms<long double>(exp_ld, g1, g2, g3);
                    accumulate_axioms<double>(exp_d, g1, g2, g3);
                }
            }
    for (const Variant var : variants) {
        const std::string tag(to_string(var));
        const AxiomResiduals& r = var == Variant::Oscillating ? osc : exp_ld;
        c.checks.push_back(le("associativity " + tag, r.assoc, 1e-10));
        c.checks.push_back(le("identity " + tag, r.ident, 1e-10));
        c.checks.push_back(le("inverse " + tag, r.inv, 1e-10));
        c.checks.push_back(le("inverse involution " + tag, r.invol, 1e-10));
        c.checks.push_back(le("unextended projection " + tag, r.proj, 1e-10));
    }
    if (std::find(variants.begin(), variants.end(), Variant::Expanding) != variants.end()) {
        c.notes["expanding associativity in double"] = exp_d.assoc;
        c.notes["expanding inverse in double"] = exp_d.inv;
        c.notes["expanding involution in double"] = exp_d.invol;
    }
    return c;
}

// ---------------------------------------------------- 2: space-time action

inline Criterion spacetime_action(std::uint64_t seed, int samples = 10000,
                                  std::vector<Variant> variants = {Variant::Oscillating, Variant::Expanding})
{
    Sampler S(seed);
    Criterion c{2, "space-time left action, extension-blind", {}, {}};
    double left_osc = 0, left_exp = 0, blind = 0;
    for (const Variant var : variants)
        for (int s = 0; s < samples; ++s) {
            const double tau = std::array<double, 3>{0.5, 1.0, 2.0}[s % 3];
            const auto g1 = S.element(tau, 2.0, var), g2 = S.element(tau, 2.0, var);
            const double t = S.uniform(2.0);
            const Vec2d x = S.vec(2.0);
            const auto [t2, x2] = act_spacetime(g2, t, x);
            const auto [ta, xa] = act_spacetime(g1, t2, x2);
            const auto [tb, xb] = act_spacetime(compose(g1, g2), t, x);
            double d = std::fmax(std::fabs(ta - tb), std::fmax(std::fabs(xa.x1 - xb.x1), std::fabs(xa.x2 - xb.x2)));
            if (var == Variant::Oscillating) {
                left_osc = std::fmax(left_osc, d);
            } else {
                const double sc = std::fmax(1.0, std::fmax(std::fabs(xa.x1), std::fabs(xa.x2)));
                left_exp = std::fmax(left_exp, d / sc);
            }
            auto g3 = g1;
            g3.alpha = S.uniform(5.0);
            g3.theta = S.uniform(5.0);
            const auto [tc, xc] = act_spacetime(g3, t, x);
            const auto [td, xd] = act_spacetime(g1, t, x);
            blind = std::fmax(blind, std::fmax(std::fabs(tc - td), std::fmax(std::fabs(xc.x1 - xd.x1), std::fabs(xc.x2 - xd.x2))));
        }
    for (const Variant var : variants)
        c.checks.push_back(var == Variant::Oscillating ? le("left action oscillating", left_osc, 1e-11)
                                                       : le("left action expanding (relative)", left_exp, 1e-11));
    c.checks.push_back(le("central parameters ignored", blind, 1e-11));
    return c;
}

// -------------------------------------------------------- 3: coadjoint action

inline double invariant_drift(const InvariantSet<double>& a, const InvariantSet<double>& b)
{
    double d = 0.0;
    auto cmp = [&](const std::optional<double>& x, const std::optional<double>& y) {
        if (x && y) d = std::fmax(d, std::fabs(*x - *y) / (1.0 + std::fabs(*x)));
        else if (x.has_value() != y.has_value()) d = INFINITY;
    };
    cmp(a.C1, b.C1);
    cmp(a.C2, b.C2);
    cmp(a.C3, b.C3);
    cmp(a.C4, b.C4);
    cmp(a.C3p, b.C3p);
    cmp(a.C4p, b.C4p);
    cmp(a.C5, b.C5);
    cmp(a.C5p, b.C5p);
    cmp(a.h, b.h);
    cmp(a.j, b.j);
    return d;
}

inline double dual_distance(const DualPointd& a, const DualPointd& b)
{
    const auto x = a.coords(), y = b.coords();
    double d = 0.0;
    for (int i = 0; i < 8; ++i) d = std::fmax(d, std::fabs(x[i] - y[i]) / std::fmax(1.0, std::fabs(x[i])));
    return d;
}

inline Criterion coadjoint_action(std::uint64_t seed, int samples = 10000)
{
    Sampler S(seed);
    Criterion c{3, "coadjoint action, invariants, orbit-constant classification", {}, {}};
    const double tau = 1.0;
    double action = 0, drift = 0, constraint = 0;
    long fm_changed = 0, class_changed = 0;
    const int per_class = std::max(1, samples / static_cast<int>(all_orbit_tags.size()));
    for (const OrbitTag tag : all_orbit_tags) {
        const DualPointd xi = S.dual(tag, tau);
        const auto [cls, inv] = classify(xi);
        if (cls.tag != tag) ++class_changed;
        for (int s = 0; s < per_class; ++s) {
            const auto g1 = S.element(tau, 1.0), g2 = S.element(tau, 1.0);
            const auto y = coad(g1, coad(g2, xi));
            action = std::fmax(action, dual_distance(coad(compose(g1, g2), xi), y));
            const auto x1 = coad(g1, xi);
            if (x1.f != xi.f || x1.m != xi.m) ++fm_changed;
            drift = std::fmax(drift, invariant_drift(detail::invariants_for(tag, x1), inv));
            if (classify(x1).first.tag != tag) ++class_changed;
            if (tag == OrbitTag::I) constraint = std::fmax(constraint, std::sqrt(norm2(x1.k - perp(x1.p) * tau)));
            if (tag == OrbitTag::J) constraint = std::fmax(constraint, std::sqrt(norm2(x1.k + perp(x1.p) * tau)));
        }
    }
    c.checks.push_back(le("action property", action, 1e-10));
    c.checks.push_back(eq("f, m changed (count)", static_cast<double>(fm_changed), 0));
    c.checks.push_back(le("invariant drift (relative)", drift, 1e-9));
    c.checks.push_back(eq("classification changed (count)", static_cast<double>(class_changed), 0));
    c.checks.push_back(le("class I/J constraint", constraint, 1e-9));
    return c;
}

// ------------------------------------------------------- 4: orbit dimensions

inline Criterion orbit_dimensions(std::uint64_t seed, int per_class = 1000)
{
    Sampler S(seed);
    Criterion c{4, "Kirillov rank equals orbit dimension", {}, {}};
    long bad_rank = 0, bad_class = 0, total = 0;
    for (const double tau : {1.0, 0.5}) {
        const auto T = build_table(AlgebraName::NH_minus, true, {1.0, 1.0, tau});
        for (const OrbitTag tag : all_orbit_tags)
            for (int s = 0; s < per_class / 2; ++s) {
                const auto xi = S.dual(tag, tau);
                const auto cls = classify(xi).first;
                if (cls.tag != tag) ++bad_class;
                if (rank(kirillov_matrix(T, xi.coords())) != orbit_dimension(tag)) ++bad_rank;
                ++total;
            }
    }
    c.checks.push_back(eq("rank mismatches", static_cast<double>(bad_rank), 0));
    c.checks.push_back(eq("classification mismatches", static_cast<double>(bad_class), 0));
    c.notes["points"] = static_cast<double>(total);
    return c;
}

// ------------------------------------------------------------ 5: dynamics

inline Criterion dynamics_checks(std::uint64_t seed, int trajectories = 8)
{
    Sampler S(seed);
    Criterion c{5, "classical dynamics", {}, {}};
    double rk = 0, dH = 0, dj = 0, symp = 0, flow = 0, transport = 0;
    for (int s = 0; s < trajectories; ++s) {
        const double tau = std::array<double, 2>{1.0, 0.7}[s % 2];
        PhasePointd x;
        x.m = S.uniform(0.5, 2.0);
        x.tau = tau;
        x.q = S.vec(1.0);
        x.p = S.vec(1.0);
        x.C1 = S.uniform(1.0);
        x.C2 = S.uniform(1.0);
        const auto e = evolve(x, 10 * tau), r = integrate_reference(x, 10 * tau, 1e-3);
        rk = std::fmax(rk, std::fmax(std::sqrt(norm2(e.q - r.q)), std::sqrt(norm2(e.p - r.p))));
        const double H0 = hamiltonian(x), j0 = angular_momentum(x);
        for (int k = 1; k <= 100; ++k) {
            const auto y = evolve(x, k * tau);
            dH = std::fmax(dH, std::fabs(hamiltonian(y) - H0));
            dj = std::fmax(dj, std::fabs(angular_momentum(y) - j0));
        }
        const double t1 = S.uniform(3.0), t2 = S.uniform(3.0);
        symp = std::fmax(symp, symplectic_residual(flow_matrix(x.m, tau, t1)));
        const auto a = evolve(evolve(x, t1), t2), b = evolve(x, t1 + t2);
        flow = std::fmax(flow, std::fmax(std::sqrt(norm2(a.q - b.q)), std::sqrt(norm2(a.p - b.p))));
        const auto xi = dual_from_phase_point(x);
        const auto moved = phase_point_from_dual(coad(one_parameter<double>(2, t1, tau), xi));
        const auto ev = evolve(x, t1);
        transport = std::fmax(transport, std::fmax(std::sqrt(norm2(moved.q - ev.q)), std::sqrt(norm2(moved.p - ev.p))));
    }
    c.checks.push_back(le("exact flow vs RK4 (dt 1e-3, t 10 tau)", rk, 1e-6));
    c.checks.push_back(le("energy drift over 100 tau", dH, 1e-12));
    c.checks.push_back(le("angular momentum drift over 100 tau", dj, 1e-12));
    c.checks.push_back(le("symplectic residual", symp, 1e-12));
    c.checks.push_back(le("flow property", flow, 1e-12));
    c.checks.push_back(le("coadjoint transport", transport, 1e-10));
    return c;
}

// ----------------------------------------------------------- 6: contraction

inline std::vector<StructureTable> shipped_tables()
{
    std::vector<StructureTable> out;
    for (const double tau : {0.5, 1.0, 2.0}) {
        for (const bool ext : {false, true}) {
            out.push_back(build_table(AlgebraName::NH_minus, ext, {1.0, 1.0, tau}));
            out.push_back(build_table(AlgebraName::NH_plus, ext, {1.0, 1.0, tau}));
        }
    }
    for (const bool ext : {false, true}) {
        out.push_back(build_table(AlgebraName::Galilei, ext));
        out.push_back(build_table(AlgebraName::Poincare, ext, {3.0, 1.0, 1.0}));
        out.push_back(build_table(AlgebraName::dS_minus, ext, {3.0, 2.0, 1.0}));
        out.push_back(build_table(AlgebraName::dS_plus, ext, {3.0, 2.0, 1.0}));
    }
    return out;
}

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]) / n;
        my += std::log(y[i]) / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

inline Criterion contraction_checks()
{
    Criterion c{6, "contraction and Jacobi", {}, {}};
    const std::vector<double> cs{1e2, 1e3, 1e4};
    for (const auto& [ds, nh] : {std::pair{AlgebraName::dS_minus, AlgebraName::NH_minus}, std::pair{AlgebraName::dS_plus, AlgebraName::NH_plus}}) {
        std::vector<double> dev;
        const double tau = 1.0;
        const auto target = build_table(nh, false, {1.0, 1.0, tau});
        for (const double cc : cs) dev.push_back(max_deviation(contract(ds, cc, cc * tau), target));
        const std::string nm(to_string(ds));
        c.checks.push_back(le("slope " + nm + " |s+2|", std::fabs(loglog_slope(cs, dev) + 2.0), 0.1));
        c.checks.push_back(flag("monotone " + nm, dev[1] < dev[0] && dev[2] < dev[1]));
        c.notes["deviation " + nm + " c=1e2"] = dev[0];
        c.notes["deviation " + nm + " c=1e4"] = dev[2];
    }
    double jac = 0;
    bool anti = true;
    for (const auto& t : shipped_tables()) {
        jac = std::fmax(jac, jacobi_residual(t));
        for (int i = 0; i < t.dim; ++i)
            for (int j = 0; j < t.dim; ++j)
                for (int k = 0; k < t.dim; ++k)
                    if (t(i, j, k) != -t(j, i, k)) anti = false;
    }
    c.checks.push_back(le("Jacobi residual (all shipped tables)", jac, 1e-13));
    c.checks.push_back(flag("exact antisymmetry", anti));
    return c;
}

// -------------------------------------------------------- 7: representations

inline RepLabels default_labels(OrbitTag tag, double tau = 1.3)
{
    RepLabels L;
    L.orbit_class = tag;
    L.tau = tau;
    const double f = 0.7;
    switch (tag) {
    case OrbitTag::A:
        L.f = 0.4;
        L.m = 0.8;
        L.C1 = 0.3;
        L.C2 = 0.2;
        break;
    case OrbitTag::F:
        L.f = 0.0;
        L.m = 0.8;
        L.C1 = 0.3;
        L.C2 = 0.2;
        break;
    case OrbitTag::G:
        L.f = 0.7;
        L.m = 0.0;
        L.C1 = 0.3;
        L.C2 = 0.2;
        break;
    case OrbitTag::B:
    case OrbitTag::C:
        L.f = f;
        L.m = tag == OrbitTag::B ? f / tau : -f / tau;
        L.x_vec = {0.4, -0.3};
        if (tag == OrbitTag::B) {
            L.C3 = norm2(L.x_vec);
            L.C4 = 0.3;
        } else {
            L.C3p = norm2(L.x_vec);
            L.C4p = 0.3;
        }
        L.kappa1 = 0.25;
        break;
    case OrbitTag::D:
    case OrbitTag::E:
        L.f = f;
        L.m = tag == OrbitTag::D ? f / tau : -f / tau;
        L.C4 = 0.3;
        L.C4p = 0.3;
        L.C5 = 0.2;
        L.C5p = -0.4;
        L.kappa1 = 0.1;
        L.kappa2 = 0.5;
        break;
    case OrbitTag::H:
    case OrbitTag::I:
    case OrbitTag::J:
        L.f = 0.0;
        L.m = 0.0;
        L.kappa_vec = {0.3, 0.7};
        if (tag == OrbitTag::H) L.rho = {0.5, 0.1};
        if (tag == OrbitTag::I) L.rho = -perp(L.kappa_vec) / tau;
        if (tag == OrbitTag::J) L.rho = perp(L.kappa_vec) / tau;
        L.C1 = norm2(L.rho) + norm2(L.kappa_vec) / (tau * tau);
        L.C2 = cross(L.rho, L.kappa_vec);
        L.C5 = 0.2;
        L.C5p = -0.3;
        break;
    case OrbitTag::K:
        L.f = 0.0;
        L.m = 0.0;
        L.h = 0.6;
        L.j = -1.5;
        break;
    }
    return L;
}

struct RepMetrics {
    OrbitTag tag = OrbitTag::A;
    int N = 0;
    int samples = 0;
    double unitarity_max = 0.0;
    double homomorphism_max = 0.0;
    double nilpotent_max = -1.0;  // 2D cases only
    std::map<std::string, double> generator_residuals;
    double resolution_max = 0.0;
};

inline constexpr int t_grid_size = 16;

// Unitarity, homomorphism and (for A, F, G) generator residuals for one case.
inline RepMetrics rep_metrics(const RepLabels& L, int N, int samples, std::uint64_t seed, bool with_generators = true)
{
    Sampler S(seed);
    RepMetrics out;
    out.tag = L.orbit_class;
    out.N = N;
    out.samples = samples;
    const double tau = L.tau;
    auto upd = [](double& a, double b) { a = std::fmax(a, b); };
    switch (L.orbit_class) {
    case OrbitTag::A:
    case OrbitTag::F:
    case OrbitTag::G: {
        const Rep2D rep(L, N);
        const auto psi = random_low_state<2>(rep.basis(), S.rng());
        out.nilpotent_max = 0.0;
        for (int s = 0; s < samples; ++s) {
            const auto g1 = S.element(tau, 0.5), g2 = S.element(tau, 0.5);
            const auto u2 = rep.apply(g2, psi);
            const auto l = rep.apply(g1, u2);
            const auto r = rep.apply(compose(g1, g2), psi);
            upd(out.homomorphism_max, distance(l, r));
            upd(out.unitarity_max, std::fabs(u2.norm() - psi.norm()));
            upd(out.resolution_max, l.resolution_metric());
            auto n1 = g1, n2 = g2;
            n1.b = n1.phi = n2.b = n2.phi = 0.0;
            upd(out.nilpotent_max, distance(rep.nilpotent(n1, rep.nilpotent(n2, psi)), rep.nilpotent(compose(n1, n2), psi)));
        }
        if (with_generators)
            for (int d = 0; d < 8; ++d) out.generator_residuals[std::string(generator_names[d])] = generator_check(rep, d, psi);
        break;
    }
    case OrbitTag::D:
    case OrbitTag::E: {
        const RepDE rep(L, N);
        const auto psi = random_low_state<1>(rep.basis(), S.rng());
        for (int s = 0; s < samples; ++s) {
            const auto g1 = S.element(tau, 0.5), g2 = S.element(tau, 0.5);
            const auto u2 = rep.apply(g2, psi);
            const auto l = rep.apply(g1, u2);
            upd(out.homomorphism_max, distance(l, rep.apply(compose(g1, g2), psi)));
            upd(out.unitarity_max, std::fabs(u2.norm() - psi.norm()));
            upd(out.resolution_max, l.resolution_metric());
        }
        break;
    }
    case OrbitTag::B:
    case OrbitTag::C: {
        const RepBC rep(L, N, t_grid_size);
        const auto psi = rep.random_state(S.rng());
        const double sg = coset_sign(L.orbit_class);
        for (int s = 0; s < samples; ++s) {
            const auto g1 = S.on_grid(tau, sg, t_grid_size), g2 = S.on_grid(tau, sg, t_grid_size);
            const auto u2 = rep.apply(g2, psi);
            const auto l = rep.apply(g1, u2);
            upd(out.homomorphism_max, distance(l, rep.apply(compose(g1, g2), psi)));
            upd(out.unitarity_max, std::fabs(norm(u2) - norm(psi)));
            for (const auto& v : l.values) upd(out.resolution_max, HermiteState<1>(rep.basis(), v).resolution_metric());
        }
        break;
    }
    case OrbitTag::H:
    case OrbitTag::I:
    case OrbitTag::J: {
        const RepHIJ rep(L, t_grid_size);
        const auto psi = rep.random_state(S.rng());
        const double sg = L.orbit_class == OrbitTag::H ? 0.0 : coset_sign(L.orbit_class);
        for (int s = 0; s < samples; ++s) {
            const auto g1 = L.orbit_class == OrbitTag::H ? S.on_torus(tau, t_grid_size) : S.on_grid(tau, sg, t_grid_size);
            const auto g2 = L.orbit_class == OrbitTag::H ? S.on_torus(tau, t_grid_size) : S.on_grid(tau, sg, t_grid_size);
            const auto u2 = rep.apply(g2, psi);
            const auto l = rep.apply(g1, u2);
            upd(out.homomorphism_max, (l.values - rep.apply(compose(g1, g2), psi).values).norm());
            upd(out.unitarity_max, std::fabs(u2.values.norm() - psi.values.norm()));
        }
        break;
    }
    case OrbitTag::K:
        for (int s = 0; s < samples; ++s) {
            const auto g1 = S.element(tau, 2.0), g2 = S.element(tau, 2.0);
            upd(out.homomorphism_max, std::abs(rep_k(L, g1) * rep_k(L, g2) - rep_k(L, compose(g1, g2))));
            upd(out.unitarity_max, std::fabs(std::abs(rep_k(L, g1)) - 1.0));
        }
        break;
    }
    return out;
}

// Assembled commutators of the linear generators vs the extension brackets, on low modes.
// With X^ = -i dU/d eps: [K^_i, P^_j] = -i delta_ij m, [K^1, K^2] = -i f, [P^1, P^2] = -i f / tau^2.
inline double extension_bracket_residual(const RepLabels& L, int N, std::uint64_t seed)
{
    Sampler S(seed);
    const Rep2D rep(L, N);
    const auto psi = random_low_state<2>(rep.basis(), S.rng());
    const double f = L.orbit_class == OrbitTag::F ? 0.0 : L.f;
    const double m = L.orbit_class == OrbitTag::G ? 0.0 : L.m;
    const double tau = L.tau;
    std::array<Eigen::MatrixXcd, 4> M;  // P1, P2, K1, K2
    for (int i = 0; i < 4; ++i) M[i] = rep.generator_matrix(3 + i);
    auto comm = [&](int a, int b) -> Eigen::VectorXcd { return M[a] * (M[b] * psi.coeffs) - M[b] * (M[a] * psi.coeffs); };
    double r = 0.0;
    auto chk = [&](int a, int b, cplx expected) { r = std::fmax(r, (comm(a, b) - expected * psi.coeffs).norm()); };
    chk(2, 0, -I_unit * m);
    chk(3, 1, -I_unit * m);
    chk(2, 1, 0.0);
    chk(3, 0, 0.0);
    chk(2, 3, -I_unit * f);
    chk(0, 1, -I_unit * f / (tau * tau));
    return r;
}

// Case A invariants recombined from the generator matrices: returns max residual of C1 psi and C2 psi.
inline double casimir_residual(const RepLabels& L, int N, std::uint64_t seed)
{
    Sampler S(seed);
    const Rep2D rep(L, N);
    const auto psi = random_low_state<2>(rep.basis(), S.rng());
    const double f = L.f, m = L.m, tau = L.tau;
    std::array<Eigen::MatrixXcd, 4> M;
    for (int i = 0; i < 4; ++i) M[i] = rep.generator_matrix(3 + i);
    const Eigen::MatrixXcd H = rep.generator_matrix(2), J = rep.generator_matrix(7);
    const Eigen::VectorXcd& x = psi.coeffs;
    auto sq = [&](int i) -> Eigen::VectorXcd { return M[i] * (M[i] * x); };
    const Eigen::VectorXcd q = sq(0) + sq(1) + (sq(2) + sq(3)) / (tau * tau);
    const Eigen::VectorXcd pk = M[0] * (M[3] * x) - M[1] * (M[2] * x);
    const Eigen::VectorXcd c1 = q - 2 * m * (H * x) + 2 * f / (tau * tau) * (J * x);
    const Eigen::VectorXcd c2 = pk + m * (J * x) - f * (H * x);
    return std::fmax((c1 - L.C1 * x).norm(), (c2 - L.C2 * x).norm());
}

struct RepSweep {
    std::map<OrbitTag, std::vector<RepMetrics>> by_case;  // entries per N in {24, 32, 40} where swept
};

inline Criterion representation_checks(std::uint64_t seed, int samples = 200)
{
    Criterion c{7, "representations", {}, {}};
    const std::vector<int> Ns{24, 32, 40};
    double unit = 0;
    double hom_exact = 0, hom_trunc = 0, gen = 0, nil = 0;
    bool mono = true;
    for (const OrbitTag tag : all_orbit_tags) {
        const RepLabels L = default_labels(tag);
        const bool truncated = tag == OrbitTag::A || tag == OrbitTag::B || tag == OrbitTag::C || tag == OrbitTag::D ||
                               tag == OrbitTag::E || tag == OrbitTag::G;
        std::vector<double> hs;
        for (const int N : truncated ? Ns : std::vector<int>{32}) {
            const auto r = rep_metrics(L, N, samples, seed, N == 32);
            unit = std::fmax(unit, r.unitarity_max);
            if (N == 32) {
                (truncated ? hom_trunc : hom_exact) = std::fmax(truncated ? hom_trunc : hom_exact, r.homomorphism_max);
                for (const auto& [k, v] : r.generator_residuals) gen = std::fmax(gen, v);
                if (r.nilpotent_max >= 0) nil = std::fmax(nil, r.nilpotent_max);
            }
            hs.push_back(r.homomorphism_max);
            c.notes[std::string("homomorphism ") + to_char(tag) + " N=" + std::to_string(N)] = r.homomorphism_max;
        }
        if (truncated && !non_increasing(hs)) mono = false;
    }
    const double ext = std::fmax(std::fmax(extension_bracket_residual(default_labels(OrbitTag::A), 32, seed),
                                           extension_bracket_residual(default_labels(OrbitTag::F), 32, seed)),
                                 extension_bracket_residual(default_labels(OrbitTag::G), 32, seed));
    const double cas = casimir_residual(default_labels(OrbitTag::A), 32, seed);
    c.checks.push_back(le("unitarity (all cases)", unit, 1e-10));
    c.checks.push_back(le("homomorphism F, H, I, J, K", hom_exact, 1e-6));
    c.checks.push_back(le("homomorphism nilpotent", nil, 1e-6));
    c.checks.push_back(le("homomorphism A, B, C, D, E, G (N=32)", hom_trunc, 1e-3));
    c.checks.push_back(flag("non-increasing from N=24 to N=40", mono));
    c.checks.push_back(le("generator finite differences", gen, 1e-5));
    c.checks.push_back(le("extension-bracket images", ext, 1e-8));
    c.checks.push_back(le("case A Casimir recombination", cas, 1e-6));
    return c;
}

// --------------------------------------------------------------- 8: Moyal

struct MoyalOptions {
    double m = 1.0;
    double tau = 1.0;
    int N = 32;
    double box = 4.0;
    int nodes = 48;
    int samples = 20;
    std::uint64_t seed = 1;
};

struct MoyalMetrics {
    double self_adjoint_max = 0, square_max = 0, square_wide_max = 0, covariance_max = 0, isotropy_max = 0, mover_change_max = 0;
    std::map<int, double> trikernel_max_err;           // by N
    std::map<int, double> trikernel_windowed_max_err;  // plain-trace method with a mode window, by N
    double trikernel_origin_err = 0, trikernel_cyclic_max = 0;
    double trace_smeared_err = 0, trace_smeared_plain_err = 0, pair_symmetry_max = 0, pair_decay_ratio = 0;
    double roundtrip_err = 0;
    double symbol_imag_ratio = 0;
    double twisted_err = 0, star_unit_err = 0, commutator_norm = 0;
};

// int pair_trace(0, u) G(u) dmu over the product grid, G a unit Gaussian of width sigma in reduced coordinates; exact value G(0) = 1
inline double smeared_traciality(const MoyalContext& ctx, int nodes, double box, double sigma, double window)
{
    const auto G = make_axis_grid(ctx, nodes, box);
    cplx total = 1.0;
    for (int k = 0; k < 2; ++k) {
        cplx s = 0.0;
        const Eigen::MatrixXcd O = ctx.axis_kernel(k, 0.0, 0.0);
        const Eigen::VectorXd w = window > 0 ? mode_window(ctx.N(), window) : Eigen::VectorXd::Ones(ctx.N());
        for (int i = 0; i < G.size(); ++i) {
            const Eigen::MatrixXcd A = O * ctx.axis_kernel(k, G.q(i), G.p(i));
            const cplx tr = (w.cast<cplx>().asDiagonal() * A).diagonal().sum();
            s += G.weight(i) * tr * std::exp(-G.radius2(i) / (2 * sigma * sigma));
        }
        total *= s;
    }
    return std::abs(total - 1.0);
}

inline Eigen::VectorXcd low_vector(Sampler& S, int N, int modes = 4)
{
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N);
    for (int i = 0; i < modes; ++i) v(i) = cplx(nd(S.rng()), nd(S.rng()));
    return v.normalized();
}

inline MoyalMetrics moyal_metrics(const MoyalOptions& o)
{
    Sampler S(o.seed);
    MoyalMetrics r;
    const MoyalContext ctx(o.m, o.tau, o.N);
    auto upd = [](double& a, double b) { a = std::fmax(a, b); };
    for (int s = 0; s < o.samples; ++s) {
        const auto phi = random_low_state<2>(ctx.basis(), S.rng()), psi = random_low_state<2>(ctx.basis(), S.rng());
        const PhasePt u{S.disk(1.0), S.disk(1.0)};
        const auto Op = kernel_apply(ctx, u, psi), Of = kernel_apply(ctx, u, phi);
        upd(r.self_adjoint_max, std::abs(phi.coeffs.dot(Op.coeffs) - Of.coeffs.dot(psi.coeffs)));
        upd(r.square_wide_max, (kernel_apply(ctx, u, Op).coeffs - 16.0 * psi.coeffs).norm());
        const PhasePt uc{S.disk(0.5), S.disk(0.5)};
        upd(r.square_max, (kernel_apply(ctx, uc, kernel_apply(ctx, uc, psi)).coeffs - 16.0 * psi.coeffs).norm());
        const double cov = covariance_residual(ctx, uc, psi);
        upd(r.covariance_max, cov);
        auto gamma = GroupElementd::identity(o.tau);
        gamma.theta = S.uniform(0.5);
        gamma.b = S.uniform(0.5);
        gamma.phi = S.uniform(0.5);
        upd(r.isotropy_max, isotropy_residual(ctx, gamma, psi));
        const auto mover = compose(group_element_for(uc, o.m, o.tau), gamma);
        upd(r.mover_change_max, std::fabs(covariance_residual(ctx, uc, psi, &mover) - cov));
    }
    // tri-kernel against the closed form; N-refinement over {24, 32, 40}
    std::vector<std::array<PhasePt, 3>> triples;
    for (int s = 0; s < 10 * o.samples; ++s)
        triples.push_back({PhasePt{S.disk(1.0), S.disk(1.0)}, PhasePt{S.disk(1.0), S.disk(1.0)}, PhasePt{S.disk(1.0), S.disk(1.0)}});
    std::vector<int> Ns{24, 32, 40};
    if (std::find(Ns.begin(), Ns.end(), o.N) == Ns.end()) Ns.push_back(o.N);
    for (const int N : Ns) {
        const MoyalContext c2(o.m, o.tau, N);
        double e = 0, ew = 0;
        for (const auto& t : triples) {
            const cplx cf = tri_kernel_closed_form(t[0], t[1], t[2]);
            e = std::fmax(e, std::abs(tri_kernel(c2, t[0], t[1], t[2]) - cf) / 16.0);
            ew = std::fmax(ew, std::abs(tri_kernel_windowed(c2, t[0], t[1], t[2], N / 3.0) - cf) / 16.0);
            if (N == o.N) {
                upd(r.trikernel_cyclic_max, std::abs(tri_kernel_plain(c2, t[0], t[1], t[2]) - tri_kernel_plain(c2, t[1], t[2], t[0])));
                upd(r.trikernel_cyclic_max, std::abs(tri_kernel(c2, t[0], t[1], t[2]) - tri_kernel(c2, t[1], t[2], t[0])));
            }
        }
        r.trikernel_max_err[N] = e;
        r.trikernel_windowed_max_err[N] = ew;
    }
    r.trikernel_origin_err = std::abs(tri_kernel(ctx, {}, {}, {}) - 16.0) / 16.0;
    // traces of pairs
    r.trace_smeared_err = smeared_traciality(ctx, 16, 3.0, 1.0, 4.0);
    r.trace_smeared_plain_err = smeared_traciality(ctx, 16, 3.0, 1.0, 0.0);
    for (int s = 0; s < o.samples; ++s) {
        const PhasePt a{S.disk(1.0), S.disk(1.0)}, b{S.disk(1.0), S.disk(1.0)};
        upd(r.pair_symmetry_max, std::abs(pair_trace(ctx, a, b) - std::conj(pair_trace(ctx, b, a))));
    }
    r.pair_decay_ratio = std::abs(pair_trace(ctx, {}, PhasePt{{3.0, 0.0}, {}})) / std::abs(pair_trace(ctx, {}, {}));
    // symbols
    const int N = o.N;
    const auto G = make_axis_grid(ctx, o.nodes, o.box);
    const auto A = rank_one(low_vector(S, N), low_vector(S, N), low_vector(S, N), low_vector(S, N));
    r.roundtrip_err = round_trip_error(ctx, A, G);
    const Eigen::VectorXcd h0 = low_vector(S, N), h1 = low_vector(S, N);
    const auto W = weyl_symbol(ctx, rank_one(h0, h1, h0, h1), G);
    double im = 0, mx = 0;
    for (int i = 0; i < G.size(); ++i)
        for (int j = 0; j < G.size(); ++j) {
            im = std::fmax(im, std::fabs(W(i, j).imag()));
            mx = std::fmax(mx, std::abs(W(i, j)));
        }
    r.symbol_imag_ratio = im / mx;
    // twisted product of two non-commuting rank-one operators built from displaced ground states
    const auto B = rank_one(axis_coherent(ctx, 0, 0.3, 0.2), axis_coherent(ctx, 1, -0.2, 0.1), axis_coherent(ctx, 0, 0.3, 0.2),
                            axis_coherent(ctx, 1, -0.2, 0.1));
    const auto C = rank_one(axis_coherent(ctx, 0, -0.3, 0.1), axis_coherent(ctx, 1, 0.2, 0.1), axis_coherent(ctx, 0, 0.1, -0.2),
                            axis_coherent(ctx, 1, 0.0, 0.3));
    const auto at = interior_nodes(G, 2.0);
    const auto WB = weyl_symbol(ctx, B, G), WC = weyl_symbol(ctx, C, G);
    const auto bc = twisted_product(WB, WC, G, at), cb = twisted_product(WC, WB, G, at);
    const auto ref_bc = restrict(weyl_symbol(ctx, B * C, G), at), ref_cb = restrict(weyl_symbol(ctx, C * B, G), at);
    r.twisted_err = std::fmax(field_distance(bc, ref_bc) / field_norm(ref_bc), field_distance(cb, ref_cb) / field_norm(ref_cb));
    const auto wb = restrict(WB, at);
    r.star_unit_err = field_distance(twisted_product(identity_symbol(G), WB, G, at), wb) / field_norm(wb);
    r.commutator_norm = field_distance(bc, cb) / field_norm(ref_bc);
    return r;
}

inline Criterion moyal_checks(const MoyalMetrics& r, int N = 32)
{
    Criterion c{8, "Moyal quantization", {}, {}};
    c.checks.push_back(le("kernel self-adjoint", r.self_adjoint_max, 1e-10));
    c.checks.push_back(le("kernel square = 16 (|q|,|p| <= 0.5)", r.square_max, 1e-8));
    c.checks.push_back(le("covariance", r.covariance_max, 1e-6));
    c.checks.push_back(le("isotropy commutation", r.isotropy_max, 1e-4));
    c.checks.push_back(le("mover independence", r.mover_change_max, 1e-4));
    c.checks.push_back(le("tri-kernel vs closed form (N=" + std::to_string(N) + ")", r.trikernel_max_err.at(N), 1e-2));
    std::vector<double> tk;
    for (const auto& [n, e] : r.trikernel_max_err) tk.push_back(e);
    c.checks.push_back(flag("tri-kernel N-refinement", non_increasing(tk)));
    c.checks.push_back(le("tri-kernel at origin", r.trikernel_origin_err, 1e-10));
    c.checks.push_back(le("tri-kernel cyclic symmetry", r.trikernel_cyclic_max, 1e-10));
    c.checks.push_back(le("smeared traciality", r.trace_smeared_err, 0.05));
    c.checks.push_back(le("pair trace Hermitian symmetry", r.pair_symmetry_max, 1e-10));
    c.checks.push_back(le("pair trace decay ratio", r.pair_decay_ratio, 1e-2));
    c.checks.push_back(le("symbol round trip", r.roundtrip_err, 0.05));
    c.checks.push_back(le("symbol of self-adjoint operator is real", r.symbol_imag_ratio, 1e-8));
    c.checks.push_back(le("twisted vs operator product", r.twisted_err, 0.10));
    c.checks.push_back(le("identity is the star unit", r.star_unit_err, 0.10));
    c.checks.push_back(ge("noncommutativity witness / error", r.commutator_norm / std::fmax(r.twisted_err, 1e-300), 10.0));
    for (const auto& [n, e] : r.trikernel_windowed_max_err) c.notes["tri-kernel windowed plain trace N=" + std::to_string(n)] = e;
    for (const auto& [n, e] : r.trikernel_max_err) c.notes["tri-kernel N=" + std::to_string(n)] = e;
    c.notes["smeared traciality without window"] = r.trace_smeared_plain_err;
    c.notes["kernel square residual at |q|,|p| <= 1"] = r.square_wide_max;
    return c;
}

}  // namespace nhkit::verify
