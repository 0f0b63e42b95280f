#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "algebra.hpp"
#include "coadjoint.hpp"
#include "funcspace.hpp"
#include "group.hpp"
#include "representations.hpp"
#include "vec2.hpp"

namespace nhkit {

using json = nlohmann::json;

// Raised for malformed scenario or data documents.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

inline const json& require(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field: ") + key);
    return j.at(key);
}

inline double number(const json& j, const char* key)
{
    const json& v = require(j, key);
    if (!v.is_number()) throw SchemaError(std::string("field must be a number: ") + key);
    return v.get<double>();
}

inline double number_or(const json& j, const char* key, double fallback)
{
    return j.is_object() && j.contains(key) ? number(j, key) : fallback;
}

inline Vec2d vec2_from(const json& v, const char* key)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw SchemaError(std::string("field must be a 2-vector: ") + key);
    return {v[0].get<double>(), v[1].get<double>()};
}

inline Vec2d vec2(const json& j, const char* key) { return vec2_from(require(j, key), key); }

inline Vec2d vec2_or(const json& j, const char* key, Vec2d fallback)
{
    return j.is_object() && j.contains(key) ? vec2(j, key) : fallback;
}

inline json to_json(const Vec2d& v) { return json::array({v.x1, v.x2}); }

}  // namespace io

// {name, extended, params, brackets: [{i, j, k, value}]}, nonzero upper-triangle entries only
inline json to_json(const StructureTable& t)
{
    json br = json::array();
    for (int i = 0; i < t.dim; ++i)
        for (int j = i + 1; j < t.dim; ++j)
            for (int k = 0; k < t.dim; ++k)
                if (t(i, j, k) != 0.0) br.push_back({{"i", i}, {"j", j}, {"k", k}, {"value", t(i, j, k)}});
    json params = json::object();
    switch (t.name) {
    case AlgebraName::dS_plus:
    case AlgebraName::dS_minus:
        params["c"] = t.params.c;
        params["R"] = t.params.R;
        break;
    case AlgebraName::NH_plus:
    case AlgebraName::NH_minus: params["tau"] = t.params.tau; break;
    default: break;
    }
    json out = {{"name", std::string(to_string(t.name))}, {"extended", t.extended}, {"params", params}, {"brackets", br}};
    if (t.extension_trivial) out["extension_trivial"] = true;
    return out;
}

inline StructureTable table_from_json(const json& j)
{
    const auto name = algebra_from_string(io::require(j, "name").get<std::string>());
    const bool ext = io::require(j, "extended").get<bool>();
    TableParams p;
    const json params = j.value("params", json::object());
    p.c = io::number_or(params, "c", 1.0);
    p.R = io::number_or(params, "R", 1.0);
    p.tau = io::number_or(params, "tau", 1.0);
    StructureTable t;
    t.name = name;
    t.extended = ext;
    t.params = p;
    t.dim = ext ? 8 : 6;
    t.c.assign(static_cast<std::size_t>(t.dim * t.dim * t.dim), 0.0);
    t.extension_trivial = j.value("extension_trivial", false);
    for (const auto& b : io::require(j, "brackets")) {
        const int i = b.at("i").get<int>(), jj = b.at("j").get<int>(), k = b.at("k").get<int>();
        if (i < 0 || jj < 0 || k < 0 || i >= t.dim || jj >= t.dim || k >= t.dim) throw SchemaError("bracket index out of range");
        const double v = b.at("value").get<double>();
        t.at(i, jj, k) = v;
        t.at(jj, i, k) = -v;
    }
    return t;
}

inline json to_json(const GroupElementd& g)
{
    return {{"alpha", g.alpha}, {"theta", g.theta}, {"b", g.b},     {"a", io::to_json(g.a)},
            {"v", io::to_json(g.v)}, {"phi", g.phi}, {"variant", std::string(to_string(g.variant))}, {"tau", g.tau}};
}

inline GroupElementd group_element_from_json(const json& j)
{
    GroupElementd g;
    g.alpha = io::number_or(j, "alpha", 0.0);
    g.theta = io::number_or(j, "theta", 0.0);
    g.b = io::number_or(j, "b", 0.0);
    g.a = io::vec2_or(j, "a", {});
    g.v = io::vec2_or(j, "v", {});
    g.phi = io::number_or(j, "phi", 0.0);
    g.tau = io::number_or(j, "tau", 1.0);
    try {
        g.variant = variant_from_string(j.value("variant", std::string("oscillating")));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    if (!(g.tau > 0.0)) throw SchemaError("tau must be positive");
    return g;
}

inline json to_json(const DualPointd& x)
{
    return {{"f", x.f}, {"m", x.m}, {"h", x.h}, {"p", io::to_json(x.p)}, {"k", io::to_json(x.k)}, {"j", x.j}, {"tau", x.tau}};
}

inline DualPointd dual_point_from_json(const json& j)
{
    DualPointd x;
    x.f = io::number_or(j, "f", 0.0);
    x.m = io::number_or(j, "m", 0.0);
    x.h = io::number_or(j, "h", 0.0);
    x.p = io::vec2_or(j, "p", {});
    x.k = io::vec2_or(j, "k", {});
    x.j = io::number_or(j, "j", 0.0);
    x.tau = io::number_or(j, "tau", 1.0);
    if (!(x.tau > 0.0)) throw SchemaError("tau must be positive");
    return x;
}

inline json to_json(const InvariantSet<double>& I)
{
    json out = json::object();
    auto put = [&](const char* k, const std::optional<double>& v) {
        if (v) out[k] = *v;
    };
    put("C1", I.C1);
    put("C2", I.C2);
    put("C3", I.C3);
    put("C4", I.C4);
    put("C3p", I.C3p);
    put("C4p", I.C4p);
    put("C5", I.C5);
    put("C5p", I.C5p);
    put("h", I.h);
    put("j", I.j);
    return out;
}

// {dims, N, lambda, re[], im[]}; lambda is one value per axis
template <int D>
json to_json(const HermiteState<D>& s)
{
    json re = json::array(), im = json::array(), lam = json::array();
    for (Eigen::Index i = 0; i < s.coeffs.size(); ++i) {
        re.push_back(s.coeffs(i).real());
        im.push_back(s.coeffs(i).imag());
    }
    for (int k = 0; k < D; ++k) lam.push_back(s.basis->frame().lambda(k));
    return {{"dims", D}, {"N", s.basis->N()}, {"lambda", lam}, {"re", re}, {"im", im}};
}

// reads coefficients into a state over an existing basis; dims and N must match
template <int D>
HermiteState<D> state_from_json(const json& j, const BasisPtr<D>& basis)
{
    if (io::require(j, "dims").get<int>() != D) throw SchemaError("state dims mismatch");
    if (io::require(j, "N").get<int>() != basis->N()) throw SchemaError("state cutoff mismatch");
    const json& re = io::require(j, "re");
    const json& im = io::require(j, "im");
    if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(basis->size()) || im.size() != re.size())
        throw SchemaError("state coefficient arrays have the wrong length");
    HermiteState<D> s(basis);
    for (int i = 0; i < basis->size(); ++i) s.coeffs(i) = cplx(re[i].get<double>(), im[i].get<double>());
    return s;
}

inline json to_json(const RepLabels& L)
{
    return {{"case", std::string(1, static_cast<char>(to_char(L.orbit_class) - 'A' + 'a'))},
            {"f", L.f},
            {"m", L.m},
            {"tau", L.tau},
            {"C1", L.C1},
            {"C2", L.C2},
            {"C3", L.C3},
            {"C4", L.C4},
            {"C3p", L.C3p},
            {"C4p", L.C4p},
            {"C5", L.C5},
            {"C5p", L.C5p},
            {"kappa1", L.kappa1},
            {"kappa2", L.kappa2},
            {"rho", io::to_json(L.rho)},
            {"kappa_vec", io::to_json(L.kappa_vec)},
            {"x_vec", io::to_json(L.x_vec)},
            {"h", L.h},
            {"j", L.j},
            {"n", L.n},
            {"n_prime", L.n_prime}};
}

// Fields absent from the document keep the values already in `base`.
inline RepLabels labels_from_json(const json& j, RepLabels base = {})
{
    if (!j.is_object()) throw SchemaError("labels must be an object");
    RepLabels L = base;
    if (j.contains("case")) {
        const std::string c = j.at("case").get<std::string>();
        if (c.size() != 1) throw SchemaError("case must be one letter a..k");
        try {
            L.orbit_class = orbit_tag_from_char(c[0]);
        } catch (const std::invalid_argument& e) {
            throw SchemaError(e.what());
        }
    }
    L.f = io::number_or(j, "f", L.f);
    L.m = io::number_or(j, "m", L.m);
    L.tau = io::number_or(j, "tau", L.tau);
    L.C1 = io::number_or(j, "C1", L.C1);
    L.C2 = io::number_or(j, "C2", L.C2);
    L.C3 = io::number_or(j, "C3", L.C3);
    L.C4 = io::number_or(j, "C4", L.C4);
    L.C3p = io::number_or(j, "C3p", L.C3p);
    L.C4p = io::number_or(j, "C4p", L.C4p);
    L.C5 = io::number_or(j, "C5", L.C5);
    L.C5p = io::number_or(j, "C5p", L.C5p);
    L.kappa1 = io::number_or(j, "kappa1", L.kappa1);
    L.kappa2 = io::number_or(j, "kappa2", L.kappa2);
    L.rho = io::vec2_or(j, "rho", L.rho);
    L.kappa_vec = io::vec2_or(j, "kappa_vec", L.kappa_vec);
    L.x_vec = io::vec2_or(j, "x_vec", L.x_vec);
    L.h = io::number_or(j, "h", L.h);
    L.j = io::number_or(j, "j", L.j);
    L.n = j.value("n", L.n);
    L.n_prime = j.value("n_prime", L.n_prime);
    return L;
}

}  // namespace nhkit
