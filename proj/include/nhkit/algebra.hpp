#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace nhkit {

enum class AlgebraName { dS_plus, dS_minus, NH_plus, NH_minus, Galilei, Poincare };

// Extended basis ordering; unextended tables drop F and M and shift by two.
enum Gen : int { F = 0, M = 1, H = 2, P1 = 3, P2 = 4, K1 = 5, K2 = 6, J = 7 };

inline constexpr std::array<std::string_view, 8> generator_names{"F", "M", "H", "P1", "P2", "K1", "K2", "J"};

inline std::string_view to_string(AlgebraName n)
{
    switch (n) {
    case AlgebraName::dS_plus: return "dS_plus";
    case AlgebraName::dS_minus: return "dS_minus";
    case AlgebraName::NH_plus: return "NH_plus";
    case AlgebraName::NH_minus: return "NH_minus";
    case AlgebraName::Galilei: return "Galilei";
    case AlgebraName::Poincare: return "Poincare";
    }
    return "?";
}

inline AlgebraName algebra_from_string(std::string_view s)
{
    for (auto n : {AlgebraName::dS_plus, AlgebraName::dS_minus, AlgebraName::NH_plus, AlgebraName::NH_minus,
                   AlgebraName::Galilei, AlgebraName::Poincare})
        if (to_string(n) == s) return n;
    throw std::invalid_argument("unknown algebra name: " + std::string(s));
}

struct TableParams {
    double c = 1.0;
    double R = 1.0;
    double tau = 1.0;
};

struct StructureTable {
    AlgebraName name = AlgebraName::NH_minus;
    bool extended = false;
    // set when an extension was requested for an algebra whose extensions are trivial
    bool extension_trivial = false;
    TableParams params;
    int dim = 6;
    std::vector<double> c;  // c[(i*dim + j)*dim + k]

    double operator()(int i, int j, int k) const { return c[(i * dim + j) * dim + k]; }
    double& at(int i, int j, int k) { return c[(i * dim + j) * dim + k]; }

    // index of an extended-basis generator in this table, -1 when absent
    int index(Gen g) const
    {
        if (extended) return g;
        return (g == F || g == M) ? -1 : g - 2;
    }

    // [X_i, X_j] = value * X_k, antisymmetric partner filled in
    void set(Gen i, Gen j, Gen k, double value)
    {
        const int a = index(i), b = index(j), d = index(k);
        at(a, b, d) = value;
        at(b, a, d) = -value;
    }

    double bracket(Gen i, Gen j, Gen k) const
    {
        const int a = index(i), b = index(j), d = index(k);
        if (a < 0 || b < 0 || d < 0) return 0.0;
        return (*this)(a, b, d);
    }

    std::vector<double> bracket(int i, int j) const
    {
        std::vector<double> out(dim);
        for (int k = 0; k < dim; ++k) out[k] = (*this)(i, j, k);
        return out;
    }
};

namespace detail {

inline void check_positive(double x, const char* what)
{
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string("parameter must be positive: ") + what);
}

}  // namespace detail

inline StructureTable build_table(AlgebraName name, bool extended, TableParams params = {})
{
    using detail::check_positive;
    StructureTable t;
    t.name = name;
    t.params = params;
    const bool nontrivial = name == AlgebraName::NH_minus || name == AlgebraName::NH_plus || name == AlgebraName::Galilei;
    t.extended = extended && nontrivial;
    t.extension_trivial = extended && !nontrivial;
    t.dim = t.extended ? 8 : 6;
    t.c.assign(static_cast<std::size_t>(t.dim * t.dim * t.dim), 0.0);

    // rotations, common to every column
    t.set(J, K1, K2, 1.0);
    t.set(J, K2, K1, -1.0);
    t.set(J, P1, P2, 1.0);
    t.set(J, P2, P1, -1.0);
    t.set(K1, H, P1, 1.0);
    t.set(K2, H, P2, 1.0);

    switch (name) {
    case AlgebraName::dS_plus:
    case AlgebraName::dS_minus: {
        check_positive(params.c, "c");
        check_positive(params.R, "R");
        // upper sign of the table belongs to dS_minus
        const double sgn = name == AlgebraName::dS_minus ? -1.0 : 1.0;
        const double ic2 = 1.0 / (params.c * params.c), iR2 = 1.0 / (params.R * params.R);
        t.set(K1, K2, J, -ic2);
        t.set(K1, P1, H, ic2);
        t.set(K2, P2, H, ic2);
        t.set(P1, P2, J, sgn * iR2);
        t.set(P1, H, K1, sgn * params.c * params.c * iR2);
        t.set(P2, H, K2, sgn * params.c * params.c * iR2);
        break;
    }
    case AlgebraName::NH_plus:
    case AlgebraName::NH_minus: {
        check_positive(params.tau, "tau");
        const double sgn = name == AlgebraName::NH_minus ? -1.0 : 1.0;
        const double it2 = 1.0 / (params.tau * params.tau);
        t.set(P1, H, K1, sgn * it2);
        t.set(P2, H, K2, sgn * it2);
        if (t.extended) {
            t.set(K1, P1, M, 1.0);
            t.set(K2, P2, M, 1.0);
            t.set(K1, K2, F, 1.0);
            // Jacobi with [P_i,H] = -+ K_i/tau^2 forces [P1,P2] = +- F/tau^2
            t.set(P1, P2, F, -sgn * it2);
        }
        break;
    }
    case AlgebraName::Galilei:
        if (t.extended) {
            t.set(K1, P1, M, 1.0);
            t.set(K2, P2, M, 1.0);
            t.set(K1, K2, F, 1.0);
        }
        break;
    case AlgebraName::Poincare:
        t.set(K1, K2, J, -1.0);
        t.set(K1, P1, H, 1.0);
        t.set(K2, P2, H, 1.0);
        break;
    }
    return t;
}

inline double jacobi_residual(const StructureTable& t)
{
    const int n = t.dim;
    double worst = 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int out = 0; out < n; ++out) {
                    // [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y]
                    double s = 0.0;
                    for (int l = 0; l < n; ++l)
                        s += t(x, y, l) * t(l, z, out) + t(y, z, l) * t(l, x, out) + t(z, x, l) * t(l, y, out);
                    worst = std::fmax(worst, std::fabs(s));
                }
    return worst;
}

inline StructureTable contract(AlgebraName ds, double c, double R)
{
    if (ds != AlgebraName::dS_plus && ds != AlgebraName::dS_minus)
        throw std::invalid_argument("contract expects a de Sitter table");
    return build_table(ds, false, {c, R, R / c});
}

inline double max_deviation(const StructureTable& a, const StructureTable& b)
{
    if (a.dim != b.dim) throw std::invalid_argument("table dimensions differ");
    double d = 0.0;
    for (std::size_t i = 0; i < a.c.size(); ++i) d = std::fmax(d, std::fabs(a.c[i] - b.c[i]));
    return d;
}

struct KirillovMatrix {
    Eigen::Matrix<double, 8, 8> B = Eigen::Matrix<double, 8, 8>::Zero();
};

inline KirillovMatrix kirillov_matrix(const StructureTable& t, const std::array<double, 8>& xi)
{
    if (!t.extended) throw std::invalid_argument("kirillov_matrix needs an extended table");
    KirillovMatrix K;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) {
            double s = 0.0;
            for (int k = 0; k < 8; ++k) s += t(i, j, k) * xi[k];
            K.B(i, j) = s;
            K.B(j, i) = -s;
        }
    return K;
}

inline int rank(const KirillovMatrix& K, double tol = 1e-9)
{
    Eigen::JacobiSVD<Eigen::Matrix<double, 8, 8>> svd(K.B);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

}  // namespace nhkit
