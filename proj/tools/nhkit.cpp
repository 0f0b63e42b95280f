// nhkit: scenario-driven front end for the Newton-Hooke toolkit.
//
//   nhkit <command> [--scenario file.json] [flags]
//
// Exit codes: 0 pass, 1 criterion failure (report still written), 2 schema error, 3 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <nhkit/cli.hpp>

namespace {

using nhkit::json;
using nhkit::SchemaError;

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(what + ": " + e.what());
    }
}

// inline JSON when it starts with '{', otherwise a file path
json json_arg(const std::string& v, const std::string& what)
{
    const auto p = v.find_first_not_of(" \t\n");
    if (p != std::string::npos && v[p] == '{') return parse_json(v, what);
    return parse_json(slurp(v), what);
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct Flags {
    std::string scenario, out, csv, inputs;
    std::optional<double> tau, tol;
    std::optional<std::string> variant;
    std::optional<int> hermite_n;
    std::optional<std::uint64_t> seed;
    // command-specific
    std::string point, expect, labels, table, case_;
    std::optional<double> m, box, dt, t_end;
    std::optional<int> samples, nodes, per_class;
    std::vector<double> q0, p0, f_range, m_range;
    bool export_tables = false;
};

json range(const std::vector<double>& v, const char* name)
{
    if (v.size() != 3) throw SchemaError(std::string(name) + " takes min,max,count");
    return {{"min", v[0]}, {"max", v[1]}, {"count", static_cast<int>(v[2])}};
}

json build_scenario(const std::string& command, const Flags& fl)
{
    json s = fl.scenario.empty() ? json::object() : parse_json(slurp(fl.scenario), "scenario");
    if (!s.is_object()) throw SchemaError("scenario must be a JSON object");
    if (s.contains("command") && s["command"] != command)
        throw SchemaError("scenario command '" + s["command"].dump() + "' does not match '" + command + "'");
    s["command"] = command;
    json& in = s["inputs"];
    if (in.is_null()) in = json::object();
    if (!fl.inputs.empty()) in.merge_patch(json_arg(fl.inputs, "inputs"));
    if (!fl.point.empty()) in["point"] = json_arg(fl.point, "point");
    if (!fl.expect.empty()) in["expect"] = fl.expect;
    if (!fl.case_.empty()) in["case"] = fl.case_;
    if (!fl.labels.empty()) in["labels"] = json_arg(fl.labels, "labels");
    if (!fl.table.empty()) in["table"] = json_arg(fl.table, "table");
    if (fl.export_tables) in["export_tables"] = true;
    if (fl.m) in["m"] = *fl.m;
    if (fl.box) in["box"] = *fl.box;
    if (fl.dt) in["dt"] = *fl.dt;
    if (fl.t_end) in["t_end"] = *fl.t_end;
    if (fl.samples) in["samples"] = *fl.samples;
    if (fl.nodes) in["nodes"] = *fl.nodes;
    if (fl.per_class) in["per_class"] = *fl.per_class;
    if (!fl.q0.empty()) in["q0"] = fl.q0;
    if (!fl.p0.empty()) in["p0"] = fl.p0;
    if (!fl.f_range.empty()) in["f"] = range(fl.f_range, "--f-range");
    if (!fl.m_range.empty()) in["m"] = range(fl.m_range, "--m-range");
    if (fl.tau) s["tau"] = *fl.tau;
    if (fl.tol) s["tol"] = *fl.tol;
    if (fl.variant) s["variant"] = *fl.variant;
    if (fl.hermite_n) s["hermite_n"] = *fl.hermite_n;
    if (fl.seed) s["seed"] = *fl.seed;
    return s;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Newton-Hooke group toolkit"};
    app.set_version_flag("--version", std::string(nhkit::cli::version));
    app.require_subcommand(1);
    Flags fl;

    auto common = [&](CLI::App* c) {
        c->add_option("--scenario", fl.scenario, "scenario JSON file");
        c->add_option("--out", fl.out, "report path (default stdout)");
        c->add_option("--inputs", fl.inputs, "inputs block merged over the scenario (JSON or file)");
        c->add_option("--tau", fl.tau, "time scale");
        c->add_option("--variant", fl.variant, "oscillating | expanding");
        c->add_option("--hermite-n", fl.hermite_n, "Hermite cutoff per axis");
        c->add_option("--tol", fl.tol, "stratum tolerance");
        c->add_option("--seed", fl.seed, "RNG seed");
    };

    auto* classify = app.add_subcommand("classify", "classify a dual point");
    common(classify);
    classify->add_option("--point", fl.point, "DualPoint (JSON or file)");
    classify->add_option("--expect", fl.expect, "expected class letter");

    auto* atlas = app.add_subcommand("orbit-atlas", "classify a grid of (f, m)");
    common(atlas);
    atlas->add_option("--csv", fl.csv, "CSV path (default stdout)");
    atlas->add_option("--f-range", fl.f_range, "min,max,count")->delimiter(',');
    atlas->add_option("--m-range", fl.m_range, "min,max,count")->delimiter(',');

    auto* evolve = app.add_subcommand("evolve", "exact class-F trajectory");
    common(evolve);
    evolve->add_option("--csv", fl.csv, "CSV path (default stdout)");
    evolve->add_option("--m", fl.m, "mass label");
    evolve->add_option("--q0", fl.q0, "q1,q2")->delimiter(',')->expected(2);
    evolve->add_option("--p0", fl.p0, "p1,p2")->delimiter(',')->expected(2);
    evolve->add_option("--t-end", fl.t_end, "final time");
    evolve->add_option("--dt", fl.dt, "row spacing");

    auto* alg = app.add_subcommand("algebra-check", "orbit dimensions, contractions, Jacobi");
    common(alg);
    alg->add_option("--per-class", fl.per_class, "dual points per class");
    alg->add_option("--table", fl.table, "structure table to check (JSON or file)");
    alg->add_flag("--export-tables", fl.export_tables, "include the shipped tables in the report");

    auto* grp = app.add_subcommand("group-check", "group axioms, space-time action, coadjoint action");
    common(grp);
    grp->add_option("--samples", fl.samples, "samples per property");

    auto* rep = app.add_subcommand("rep-check", "unitarity and homomorphism of one representation");
    common(rep);
    rep->add_option("--case", fl.case_, "a..k");
    rep->add_option("--labels", fl.labels, "RepLabels (JSON or file)");
    rep->add_option("--samples", fl.samples, "sampled pairs");

    auto* moy = app.add_subcommand("moyal-check", "Stratonovich-Weyl kernel and twisted product");
    common(moy);
    moy->add_option("--m", fl.m, "mass label");
    moy->add_option("--box", fl.box, "quadrature half-width");
    moy->add_option("--nodes", fl.nodes, "Gauss-Legendre nodes per coordinate");
    moy->add_option("--samples", fl.samples, "sampled points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help and version report success; every other parse failure is a schema error
        return app.exit(e) == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const auto scenario = nhkit::cli::scenario_from_json(build_scenario(command, fl));
        const auto report = nhkit::cli::run(scenario);
        const std::string text = report.to_json().dump(2) + "\n";
        const bool has_csv = !report.csv.empty();
        if (has_csv && !fl.csv.empty()) write_file(fl.csv, report.csv);
        if (!fl.out.empty()) write_file(fl.out, text);
        if (has_csv && fl.csv.empty()) {
            std::cout << report.csv;
            if (fl.out.empty()) std::cerr << text;
        } else if (fl.out.empty()) {
            std::cout << text;
        }
        return report.pass() ? 0 : 1;
    } catch (const SchemaError& e) {
        std::cerr << "nhkit: schema error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "nhkit: internal error: " << e.what() << "\n";
        return 3;
    }
}
