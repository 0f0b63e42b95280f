#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "io.hpp"
#include "verify.hpp"

namespace nhkit::cli {

inline constexpr std::string_view version = "0.1.0";

enum class Command { classify, orbit_atlas, evolve, algebra_check, rep_check, moyal_check, group_check };

inline constexpr std::array<std::string_view, 7> command_names{"classify",  "orbit-atlas", "evolve",     "algebra-check",
                                                               "rep-check", "moyal-check", "group-check"};

inline std::string_view to_string(Command c) { return command_names[static_cast<std::size_t>(c)]; }

inline Command command_from_string(std::string_view s)
{
    for (std::size_t i = 0; i < command_names.size(); ++i)
        if (command_names[i] == s) return static_cast<Command>(i);
    throw SchemaError("unknown command: " + std::string(s));
}

struct Scenario {
    Command command = Command::classify;
    json inputs = json::object();
    std::uint64_t seed = 1;
    std::optional<double> tau;
    std::optional<Variant> variant;
    int hermite_n = 32;
    double tol = 1e-8;
    // check name -> replacement bound
    std::map<std::string, double> tolerances;
};

inline json to_json(const Scenario& s)
{
    json out = {{"command", std::string(to_string(s.command))}, {"inputs", s.inputs},       {"seed", s.seed},
                {"hermite_n", s.hermite_n},                     {"tol", s.tol},             {"tolerances", s.tolerances}};
    if (s.tau) out["tau"] = *s.tau;
    if (s.variant) out["variant"] = std::string(to_string(*s.variant));
    return out;
}

inline Scenario scenario_from_json(const json& j)
{
    if (!j.is_object()) throw SchemaError("scenario must be a JSON object");
    static const std::set<std::string> known{"command", "inputs", "seed", "tau", "variant", "hermite_n", "tol", "tolerances"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw SchemaError("unknown scenario field: " + k);
    Scenario s;
    const json& cmd = io::require(j, "command");
    if (!cmd.is_string()) throw SchemaError("command must be a string");
    s.command = command_from_string(cmd.get<std::string>());
    if (j.contains("inputs")) {
        if (!j["inputs"].is_object()) throw SchemaError("inputs must be an object");
        s.inputs = j["inputs"];
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0) throw SchemaError("seed must be a non-negative integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tau")) {
        s.tau = io::number(j, "tau");
        if (!(*s.tau > 0.0)) throw SchemaError("tau must be positive");
    }
    if (j.contains("variant")) {
        if (!j["variant"].is_string()) throw SchemaError("variant must be a string");
        try {
            s.variant = variant_from_string(j["variant"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw SchemaError(e.what());
        }
    }
    if (j.contains("hermite_n")) {
        if (!j["hermite_n"].is_number_integer()) throw SchemaError("hermite_n must be an integer");
        s.hermite_n = j["hermite_n"].get<int>();
        if (s.hermite_n < 4 || s.hermite_n > 128) throw SchemaError("hermite_n must lie in [4, 128]");
    }
    if (j.contains("tol")) {
        s.tol = io::number(j, "tol");
        if (!(s.tol > 0.0)) throw SchemaError("tol must be positive");
    }
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object()) throw SchemaError("tolerances must be an object");
        for (const auto& [k, v] : j["tolerances"].items()) {
            if (!v.is_number()) throw SchemaError("tolerance must be a number: " + k);
            s.tolerances[k] = v.get<double>();
        }
    }
    return s;
}

struct Report {
    Command command = Command::classify;
    json scenario;
    // command outputs named by the interface (class, case, ...)
    json fields = json::object();
    std::map<std::string, double> metrics;
    std::vector<verify::Criterion> criteria;
    json metadata = json::object();
    // bulk rows for orbit-atlas and evolve
    std::string csv;

    bool pass() const
    {
        return std::all_of(criteria.begin(), criteria.end(), [](const verify::Criterion& c) { return c.pass(); });
    }

    json to_json(bool with_timing = true) const
    {
        json out = fields;
        out["command"] = std::string(cli::to_string(command));
        out["scenario"] = scenario;
        out["metrics"] = metrics;
        json crit = json::array();
        for (const auto& c : criteria) {
            json checks = json::array();
            for (const auto& k : c.checks)
                checks.push_back({{"name", k.name}, {"value", k.value}, {"bound", k.bound}, {"relation", k.relation}, {"pass", k.pass}});
            json e = {{"id", c.id}, {"title", c.title}, {"pass", c.pass()}, {"checks", checks}};
            if (!c.notes.empty()) e["notes"] = c.notes;
            crit.push_back(e);
        }
        out["criteria"] = crit;
        out["pass"] = pass();
        json meta = metadata;
        if (!with_timing) meta.erase("wall_time_s");
        out["metadata"] = meta;
        return out;
    }
};

namespace detail {

inline int integer_or(const json& in, const char* key, int fallback, int lo, int hi)
{
    if (!in.contains(key)) return fallback;
    if (!in[key].is_number_integer()) throw SchemaError(std::string("field must be an integer: ") + key);
    const int v = in[key].get<int>();
    if (v < lo || v > hi) throw SchemaError(std::string("field out of range: ") + key);
    return v;
}

inline double positive_or(const json& in, const char* key, double fallback)
{
    const double v = io::number_or(in, key, fallback);
    if (!(v > 0.0)) throw SchemaError(std::string("field must be positive: ") + key);
    return v;
}

inline std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void apply_tolerances(std::vector<verify::Criterion>& crit, const std::map<std::string, double>& tol)
{
    std::set<std::string> used;
    for (auto& c : crit)
        for (auto& k : c.checks) {
            const auto it = tol.find(k.name);
            if (it == tol.end()) continue;
            used.insert(k.name);
            k.bound = it->second;
            if (k.relation == "<=") k.pass = std::isfinite(k.value) && k.value <= k.bound;
            else if (k.relation == ">=") k.pass = std::isfinite(k.value) && k.value >= k.bound;
            else k.pass = k.value == k.bound;
        }
    for (const auto& [name, v] : tol)
        if (!used.count(name)) throw SchemaError("tolerance override names no check: " + name);
}

inline void add_checks_as_metrics(Report& r)
{
    for (const auto& c : r.criteria)
        for (const auto& k : c.checks) r.metrics[k.name] = k.value;
}

inline OrbitTag case_from_json(const json& v)
{
    if (!v.is_string() || v.get<std::string>().size() != 1) throw SchemaError("case must be one letter a..k");
    try {
        return orbit_tag_from_char(v.get<std::string>()[0]);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

inline std::string lower(OrbitTag t) { return std::string(1, static_cast<char>(to_char(t) - 'A' + 'a')); }

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ------------------------------------------------------------ commands

inline void run_classify(const Scenario& s, Report& r)
{
    const json& pt = s.inputs.contains("point") ? s.inputs["point"] : s.inputs;
    DualPointd xi = dual_point_from_json(pt);
    if (s.tau) xi.tau = *s.tau;
    const auto [cls, inv] = classify(xi, s.tol);
    const auto T = build_table(AlgebraName::NH_minus, true, {1.0, 1.0, xi.tau});
    const int rk = rank(kirillov_matrix(T, xi.coords()));
    r.fields["class"] = std::string(1, to_char(cls.tag));
    r.fields["dimension"] = cls.dimension;
    r.fields["invariants"] = nhkit::to_json(inv);
    r.fields["topology"] = std::string(orbit_topology(cls.tag));
    r.fields["point"] = nhkit::to_json(xi);
    r.metrics["kirillov_rank"] = rk;
    r.metrics["dimension"] = cls.dimension;
    verify::Criterion c{4, "classification", {}, {}};
    c.checks.push_back(verify::eq("Kirillov rank equals orbit dimension", rk, cls.dimension));
    if (s.inputs.contains("expect")) {
        const OrbitTag want = case_from_json(s.inputs["expect"]);
        c.checks.push_back(verify::flag("expected class", want == cls.tag));
    }
    r.criteria.push_back(c);
}

struct Range {
    double lo, hi;
    int count;
    double at(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
};

inline Range range_or(const json& in, const char* key, Range fallback)
{
    if (!in.contains(key)) return fallback;
    const json& v = in[key];
    Range out{io::number_or(v, "min", fallback.lo), io::number_or(v, "max", fallback.hi), integer_or(v, "count", fallback.count, 1, 10000)};
    if (out.hi < out.lo) throw SchemaError(std::string("range max below min: ") + key);
    return out;
}

inline void run_orbit_atlas(const Scenario& s, Report& r)
{
    const Range fr = range_or(s.inputs, "f", {-1.0, 1.0, 5}), mr = range_or(s.inputs, "m", {-1.0, 1.0, 5});
    DualPointd base;
    base.p = io::vec2_or(s.inputs, "p", {0.3, 0.1});
    base.k = io::vec2_or(s.inputs, "k", {0.2, -0.4});
    base.h = io::number_or(s.inputs, "h", 0.0);
    base.j = io::number_or(s.inputs, "j", 0.0);
    base.tau = s.tau.value_or(positive_or(s.inputs, "tau", 1.0));
    const auto T = build_table(AlgebraName::NH_minus, true, {1.0, 1.0, base.tau});
    std::ostringstream csv;
    csv << "f,m,C1,C2,class,dim\n";
    std::map<std::string, int> counts;
    long mismatches = 0;
    for (int a = 0; a < fr.count; ++a)
        for (int b = 0; b < mr.count; ++b) {
            DualPointd xi = base;
            xi.f = fr.at(a);
            xi.m = mr.at(b);
            const auto [cls, inv] = classify(xi, s.tol);
            if (rank(kirillov_matrix(T, xi.coords())) != cls.dimension) ++mismatches;
            ++counts[std::string(1, to_char(cls.tag))];
            csv << fmt(xi.f) << ',' << fmt(xi.m) << ',' << (inv.C1 ? fmt(*inv.C1) : "") << ',' << (inv.C2 ? fmt(*inv.C2) : "") << ','
                << to_char(cls.tag) << ',' << cls.dimension << '\n';
        }
    r.csv = csv.str();
    r.fields["class_counts"] = counts;
    r.fields["rows"] = fr.count * mr.count;
    r.metrics["rows"] = fr.count * mr.count;
    verify::Criterion c{4, "orbit atlas", {}, {}};
    c.checks.push_back(verify::eq("Kirillov rank mismatches", static_cast<double>(mismatches), 0));
    r.criteria.push_back(c);
}

inline void run_evolve(const Scenario& s, Report& r)
{
    PhasePointd x0;
    x0.m = io::number_or(s.inputs, "m", 1.0);
    if (x0.m == 0.0) throw SchemaError("evolve needs m != 0");
    x0.tau = s.tau.value_or(positive_or(s.inputs, "tau", 1.0));
    x0.q = io::vec2_or(s.inputs, "q0", {0.0, 0.0});
    x0.p = io::vec2_or(s.inputs, "p0", {1.0, 0.0});
    x0.C1 = io::number_or(s.inputs, "C1", 0.0);
    x0.C2 = io::number_or(s.inputs, "C2", 0.0);
    const double t0 = io::number_or(s.inputs, "t_start", 0.0);
    const double t1 = io::number_or(s.inputs, "t_end", 2 * std::numbers::pi * x0.tau);
    const double dt = positive_or(s.inputs, "dt", 1e-3);
    if (t1 < t0) throw SchemaError("t_end below t_start");
    const double span = t1 - t0;
    if (span / dt > 1e7) throw SchemaError("too many rows; raise dt");
    std::vector<double> ts;
    const long n = static_cast<long>(std::floor(span / dt + 1e-9));
    for (long k = 0; k <= n; ++k) ts.push_back(t0 + k * dt);
    if (t1 - ts.back() > 1e-12 * std::fmax(1.0, std::fabs(t1))) ts.push_back(t1);

    const PhasePointd start = evolve(x0, t0);
    const double H0 = hamiltonian(start), j0 = angular_momentum(start);
    std::ostringstream csv;
    csv << "t,q1,q2,p1,p2,h,j\n";
    double dH = 0, dj = 0;
    PhasePointd last = start;
    for (const double t : ts) {
        last = evolve(x0, t);
        const double h = hamiltonian(last), j = angular_momentum(last);
        dH = std::fmax(dH, std::fabs(h - H0));
        dj = std::fmax(dj, std::fabs(j - j0));
        csv << fmt(t) << ',' << fmt(last.q.x1) << ',' << fmt(last.q.x2) << ',' << fmt(last.p.x1) << ',' << fmt(last.p.x2) << ','
            << fmt(h) << ',' << fmt(j) << '\n';
    }
    r.csv = csv.str();
    auto dist = [](const PhasePointd& a, const PhasePointd& b) { return std::sqrt(norm2(a.q - b.q) + norm2(a.p - b.p)); };
    const auto ref = integrate_reference(start, span, dt);
    const double scale = std::fmax(1.0, std::sqrt(norm2(start.q) + norm2(start.p)));
    const double period = 2 * std::numbers::pi * x0.tau;
    const double closure = dist(last, start);
    r.fields["rows"] = ts.size();
    r.fields["period"] = period;
    r.metrics["energy_drift"] = dH;
    r.metrics["angular_momentum_drift"] = dj;
    r.metrics["rk4_deviation"] = dist(ref, last);
    r.metrics["closure"] = closure;
    verify::Criterion c{5, "trajectory", {}, {}};
    const double es = std::fmax(1.0, std::fabs(H0)), js = std::fmax(1.0, std::fabs(j0));
    c.checks.push_back(verify::le("energy drift (relative)", dH / es, 1e-12));
    c.checks.push_back(verify::le("angular momentum drift (relative)", dj / js, 1e-12));
    c.checks.push_back(verify::le("exact flow vs RK4 (relative)", dist(ref, last) / scale, 1e-6));
    const double periods = span / period;
    if (span > 0 && std::fabs(periods - std::round(periods)) <= 1e-9 * std::fmax(1.0, periods))
        c.checks.push_back(verify::le("final row matches first (whole periods)", closure / scale, 1e-6));
    r.criteria.push_back(c);
}

inline void run_algebra_check(const Scenario& s, Report& r)
{
    const int per_class = integer_or(s.inputs, "per_class", 1000, 2, 1000000);
    r.criteria.push_back(verify::orbit_dimensions(s.seed, per_class));
    r.criteria.push_back(verify::contraction_checks());
    if (s.inputs.contains("table")) {
        const auto t = table_from_json(s.inputs["table"]);
        verify::Criterion c{6, "supplied table", {}, {}};
        c.checks.push_back(verify::le("supplied table Jacobi residual", jacobi_residual(t), 1e-13));
        r.criteria.push_back(c);
    }
    if (s.inputs.value("export_tables", false)) {
        json tables = json::array();
        for (const auto& t : verify::shipped_tables()) tables.push_back(nhkit::to_json(t));
        r.fields["tables"] = tables;
    }
}

inline void run_group_check(const Scenario& s, Report& r)
{
    const int samples = integer_or(s.inputs, "samples", 10000, 1, 10000000);
    std::vector<Variant> vars{Variant::Oscillating, Variant::Expanding};
    if (s.variant) vars = {*s.variant};
    r.criteria.push_back(verify::group_axioms(s.seed, samples, vars));
    r.criteria.push_back(verify::spacetime_action(s.seed, samples, vars));
    r.criteria.push_back(verify::coadjoint_action(s.seed, samples));
}

inline void run_rep_check(const Scenario& s, Report& r)
{
    const OrbitTag tag = case_from_json(io::require(s.inputs, "case"));
    const double tau = s.tau.value_or(s.inputs.contains("labels") ? io::number_or(s.inputs["labels"], "tau", 1.0) : 1.0);
    RepLabels L = verify::default_labels(tag, tau);
    if (s.inputs.contains("labels")) {
        json lj = s.inputs["labels"];
        if (lj.is_object()) lj.erase("case");
        L = labels_from_json(lj, L);
    }
    L.orbit_class = tag;
    L.tau = tau;
    // same-stratum defaults scale with tau
    if ((tag == OrbitTag::B || tag == OrbitTag::D) && !(s.inputs.contains("labels") && s.inputs["labels"].contains("m"))) L.m = L.f / tau;
    if ((tag == OrbitTag::C || tag == OrbitTag::E) && !(s.inputs.contains("labels") && s.inputs["labels"].contains("m"))) L.m = -L.f / tau;
    try {
        validate(L);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    const int samples = integer_or(s.inputs, "samples", 200, 1, 1000000);
    const int N = s.hermite_n;
    const bool twod = tag == OrbitTag::A || tag == OrbitTag::F || tag == OrbitTag::G;
    const auto m = verify::rep_metrics(L, N, samples, s.seed, twod);
    r.fields["case"] = lower(tag);
    r.fields["labels"] = nhkit::to_json(L);
    r.fields["unitarity_max"] = m.unitarity_max;
    r.fields["homomorphism_max"] = m.homomorphism_max;
    r.fields["generator_residuals"] = m.generator_residuals;
    r.fields["resolution_metrics"] = {{"max", m.resolution_max}, {"hermite_n", N}};
    r.metrics["unitarity_max"] = m.unitarity_max;
    r.metrics["homomorphism_max"] = m.homomorphism_max;
    r.metrics["resolution_max"] = m.resolution_max;
    verify::Criterion c{7, "representation", {}, {}};
    const bool exact = tag == OrbitTag::F || tag == OrbitTag::H || tag == OrbitTag::I || tag == OrbitTag::J || tag == OrbitTag::K;
    c.checks.push_back(verify::le("unitarity", m.unitarity_max, 1e-10));
    c.checks.push_back(verify::le("homomorphism", m.homomorphism_max, exact ? 1e-6 : 1e-3));
    if (m.nilpotent_max >= 0) {
        r.fields["nilpotent_max"] = m.nilpotent_max;
        r.metrics["nilpotent_max"] = m.nilpotent_max;
        c.checks.push_back(verify::le("homomorphism nilpotent", m.nilpotent_max, 1e-6));
    }
    if (twod) {
        double gen = 0;
        for (const auto& [k, v] : m.generator_residuals) gen = std::fmax(gen, v);
        c.checks.push_back(verify::le("generator finite differences", gen, 1e-5));
        c.checks.push_back(verify::le("extension-bracket images", verify::extension_bracket_residual(L, N, s.seed), 1e-8));
    }
    if (tag == OrbitTag::A) c.checks.push_back(verify::le("case A Casimir recombination", verify::casimir_residual(L, N, s.seed), 1e-6));
    r.criteria.push_back(c);
    r.metadata["basis"] = {{"hermite_n", N}, {"dims", twod ? 2 : 1}};
    if (tag == OrbitTag::B || tag == OrbitTag::C || tag == OrbitTag::H || tag == OrbitTag::I || tag == OrbitTag::J)
        r.metadata["basis"]["t_grid"] = verify::t_grid_size;
}

inline void run_moyal_check(const Scenario& s, Report& r)
{
    verify::MoyalOptions o;
    o.m = io::number_or(s.inputs, "m", 1.0);
    if (o.m == 0.0) throw SchemaError("moyal-check needs m != 0");
    o.tau = s.tau.value_or(positive_or(s.inputs, "tau", 1.0));
    o.N = s.hermite_n;
    if (o.N < 16) throw SchemaError("moyal-check needs hermite_n >= 16");
    o.box = positive_or(s.inputs, "box", 4.0);
    o.nodes = integer_or(s.inputs, "nodes", 48, 4, 400);
    o.samples = integer_or(s.inputs, "samples", 20, 1, 100000);
    o.seed = s.seed;
    const auto m = verify::moyal_metrics(o);
    r.fields["covariance_max"] = m.covariance_max;
    r.fields["isotropy_max"] = m.isotropy_max;
    r.fields["trikernel_max_err"] = m.trikernel_max_err.at(o.N);
    r.fields["trace_smeared_err"] = m.trace_smeared_err;
    r.fields["roundtrip_err"] = m.roundtrip_err;
    r.criteria.push_back(verify::moyal_checks(m, o.N));
    r.metadata["basis"] = {{"hermite_n", o.N}, {"dims", 2}};
    r.metadata["quadrature"] = {{"rule", "gauss-legendre"}, {"box", o.box}, {"nodes", o.nodes}, {"measure", "dq dp / (2 pi) per axis"}};
}

}  // namespace detail

inline Report run(const Scenario& s)
{
    const auto start = std::chrono::steady_clock::now();
    Report r;
    r.command = s.command;
    r.scenario = to_json(s);
    r.metadata["version"] = std::string(version);
    switch (s.command) {
    case Command::classify: detail::run_classify(s, r); break;
    case Command::orbit_atlas: detail::run_orbit_atlas(s, r); break;
    case Command::evolve: detail::run_evolve(s, r); break;
    case Command::algebra_check: detail::run_algebra_check(s, r); break;
    case Command::group_check: detail::run_group_check(s, r); break;
    case Command::rep_check: detail::run_rep_check(s, r); break;
    case Command::moyal_check: detail::run_moyal_check(s, r); break;
    }
    detail::apply_tolerances(r.criteria, s.tolerances);
    detail::add_checks_as_metrics(r);
    r.metadata["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace nhkit::cli
