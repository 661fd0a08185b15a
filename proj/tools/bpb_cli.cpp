// Command-line front end: modulus estimates, verification suites keyed to
// the known closed forms, curve exports, squareness reports, and dual
// space specs. Results go to stdout, diagnostics to stderr.
//
// Exit codes: 0 ok, 1 failed verification check, 2 parse/input error,
// 3 unsupported space for the requested operation, 4 vacuous certificate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpb/modulus.hpp"
#include "bpb/spacespec.hpp"
#include "bpb/squareness.hpp"
#include "json.hpp"

using namespace bpb;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string vec_str(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt(v[i]);
    }
    return s + ")";
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

char hash_hex_buf[17];
std::string hash_hex(std::uint64_t h) {
    std::snprintf(hash_hex_buf, sizeof(hash_hex_buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return hash_hex_buf;
}

json record_skeleton(const std::string& command, const SpaceSpec& spec) {
    json rec;
    rec["tool"] = "bpb";
    rec["version"] = kVersion;
    rec["command"] = command;
    rec["space_kind"] = spec.kind;
    rec["space_hash"] = hash_hex(spec.hash());
    rec["timestamp"] = iso_timestamp();
    return rec;
}

void write_record(const json& rec, const std::string& out_path) {
    if (out_path.empty()) return;
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write record: " + out_path);
    out << rec.dump(2) << "\n";
}

double default_mesh(const NormedSpace& S) { return S.dim() >= 3 ? 0.05 : 0.02; }

// Reference curve name for a spec, when one exists.
std::optional<std::string> reference_name(const SpaceSpec& spec) {
    if (spec.kind == "line") return "line";
    if (spec.kind == "euclidean") return "euclidean";
    if (spec.kind == "linf2") return "linf2";
    if (spec.kind == "lp" && std::isinf(spec.params.p) && spec.params.n == 2) return "linf2";
    return std::nullopt;
}

// ---------------------------------------------------------------- modulus

int cmd_modulus(const std::string& spec_path, double delta, bool spherical, double mesh,
                const SearchBudget& budget, const std::string& out_path) {
    SpaceSpec spec = SpaceSpec::parse_file(spec_path);
    NormedSpace S = spec.build();
    if (mesh <= 0.0) mesh = default_mesh(S);

    ModulusEstimate lo = phi_lower(S, delta, spherical, budget);
    ModulusEstimate up = phi_upper_certified(S, delta, spherical, mesh, budget);
    double cap = std::sqrt(2.0 * delta);

    std::cout << "space " << S.name() << " delta " << fmt(delta)
              << (spherical ? " spherical" : "") << "\n";
    std::cout << "lower " << fmt(lo.lower) << "\n";
    std::cout << "upper " << fmt(up.upper) << " (certified, mesh " << fmt(mesh) << ")\n";
    std::cout << "cap " << fmt(cap) << " margin " << fmt(cap - up.upper) << "\n";
    std::cout << "witness x " << vec_str(lo.witness.x) << "\n";
    std::cout << "witness f " << vec_str(lo.witness.f) << "\n";

    json rec = record_skeleton("modulus", spec);
    rec["params"] = {{"delta", delta},      {"spherical", spherical},
                     {"mesh", mesh},        {"budget", budget.max_evals},
                     {"seed", budget.seed}, {"starts", budget.starts}};
    rec["outputs"] = {{"lower", lo.lower},
                      {"upper", up.upper},
                      {"cap", cap},
                      {"vacuous", up.vacuous},
                      {"witness_x", lo.witness.x},
                      {"witness_f", lo.witness.f},
                      {"witness_distance", lo.witness_distance}};
    write_record(rec, out_path);

    if (up.vacuous) {
        std::cerr << "certificate is vacuous: mesh too coarse for the budget\n";
        return 4;
    }
    return 0;
}

// ----------------------------------------------------------------- verify

struct Check {
    std::string name;
    double expected;
    double got;
    bool pass;
};

void check_close(std::vector<Check>& out, const std::string& name, double expected, double got,
                 double tol) {
    out.push_back({name, expected, got, std::abs(expected - got) <= tol});
}

void check_ge(std::vector<Check>& out, const std::string& name, double threshold, double got) {
    out.push_back({name, threshold, got, got >= threshold});
}

void check_lt(std::vector<Check>& out, const std::string& name, double threshold, double got) {
    out.push_back({name, threshold, got, got < threshold});
}

void suite_line(std::vector<Check>& out) {
    NormedSpace L = NormedSpace::make_line();
    for (double d : {0.2, 0.7, 1.0, 1.2, 1.8}) {
        double ref = reference_phi("line", d, false);
        check_close(out, "line phi(" + fmt(d) + ")", ref, phi_lower(L, d, false).lower, 1e-6);
        check_close(out, "line phiS(" + fmt(d) + ")", 0.0, phi_lower(L, d, true).lower, 1e-12);
    }
}

void suite_hilbert(std::vector<Check>& out) {
    NormedSpace E = NormedSpace::make_euclidean(2);
    for (double d : {0.2, 0.5, 0.9}) {
        check_close(out, "hilbert phiS(" + fmt(d) + ")", reference_phi("euclidean", d, true),
                    phi_lower(E, d, true).lower, 5e-3);
        check_close(out, "hilbert phi(" + fmt(d) + ")", reference_phi("euclidean", d, false),
                    phi_lower(E, d, false).lower, 5e-3);
    }
    for (double d : {1.2, 1.6})
        check_close(out, "hilbert phi(" + fmt(d) + ")", std::sqrt(d),
                    phi_lower(E, d, false).lower, 5e-3);
}

void suite_linf2(std::vector<Check>& out, const NormedSpace& S) {
    for (double d : {0.1, 0.5, 1.0, 1.9}) {
        double cap = std::sqrt(2.0 * d);
        double h = d <= 1.0 ? 0.02 : 0.05;
        check_ge(out, "linf2 lower(" + fmt(d) + ")", cap - 1e-3, phi_lower(S, d, false).lower);
        ModulusEstimate up = phi_upper_certified(S, d, false, h);
        out.push_back({"linf2 upper(" + fmt(d) + ")", cap + h + 1e-6, up.upper,
                       up.upper <= cap + h + 1e-6});
    }
}

void suite_l1sum(std::vector<Check>& out) {
    CatalogParams p2, p3;
    p2.parts = {"line", "line"};
    p3.parts = {"line", "l1-2"};
    for (const auto& prm : {p2, p3}) {
        NormedSpace S = NormedSpace::catalog("l1sum", prm);
        for (double d : {0.1, 0.3, 0.5}) {
            BpbPoint w = l1_sum_witness(S, d);
            check_ge(out, "l1sum dim" + std::to_string(S.dim()) + " dist(" + fmt(d) + ")",
                     std::sqrt(2.0 * d) - 1e-8, dist_to_pi(S, w.x, w.f).distance);
        }
        // The dual linf sum attains the same value with roles swapped.
        NormedSpace Sd = S.dual_space();
        BpbPoint w = l1_sum_witness(S, 0.3);
        check_ge(out, "linfsum dim" + std::to_string(S.dim()) + " dist(0.3)",
                 std::sqrt(0.6) - 1e-8, dist_to_pi(Sd, w.f, w.x).distance);
    }
}

void suite_diamond(std::vector<Check>& out, const NormedSpace& D, const SearchBudget& budget) {
    double delta = 0.18;
    double cap = std::sqrt(2.0 * delta);
    SearchBudget b = budget;
    b.max_evals = 50'000'000;
    b.stop_below = cap - 1e-6;
    ModulusEstimate up = phi_upper_certified(D, delta, false, 0.05, b);
    check_lt(out, "diamond strict gap eps=0.6 delta=0.18", cap, up.upper);
    out.push_back({"diamond certificate non-vacuous", 0.0, up.vacuous ? 1.0 : 0.0, !up.vacuous});
}

void suite_duality(std::vector<Check>& out) {
    NormedSpace S = NormedSpace::catalog("linf2");
    NormedSpace Sd = S.dual_space();
    double delta = 0.4;
    double l1 = phi_lower(S, delta, false).lower;
    double l2 = phi_lower(Sd, delta, false).lower;
    double u1 = phi_upper_certified(S, delta, false, 0.02).upper;
    double u2 = phi_upper_certified(Sd, delta, false, 0.02).upper;
    out.push_back({"duality linf2 lower vs dual upper", u2, l1, l1 <= u2 + 1e-8});
    out.push_back({"duality l1-2 lower vs primal upper", u1, l2, l2 <= u1 + 1e-8});
}

int cmd_verify(const std::string& suite, const std::string& space_override,
               const SearchBudget& budget) {
    std::vector<Check> checks;

    NormedSpace linf2 = NormedSpace::catalog("linf2");
    CatalogParams dia;
    dia.eps = 0.6;
    NormedSpace diamond = NormedSpace::catalog("diamond", dia);

    if (!space_override.empty()) {
        // Negative-control hook: the override file must load and build.
        try {
            SpaceSpec spec = SpaceSpec::parse_file(space_override);
            NormedSpace S = spec.build();
            checks.push_back({"spec-load " + space_override, 1.0, 1.0, true});
            if (spec.kind == "linf2") linf2 = S;
            if (spec.kind == "diamond" || (spec.kind == "polytopal" && S.dim() == 3)) diamond = S;
        } catch (const Error& e) {
            std::cerr << "spec-load: " << e.what() << "\n";
            checks.push_back({"spec-load " + space_override, 1.0, 0.0, false});
        }
    }

    bool known = false;
    auto want = [&](const char* name) {
        bool w = suite == name || suite == "all";
        known = known || suite == name;
        return w;
    };
    bool fail_fast_loaded = !checks.empty() && !checks.back().pass;
    if (!fail_fast_loaded) {
        if (want("line")) suite_line(checks);
        if (want("hilbert")) suite_hilbert(checks);
        if (want("linf2")) suite_linf2(checks, linf2);
        if (want("l1sum")) suite_l1sum(checks);
        if (want("diamond")) suite_diamond(checks, diamond, budget);
        if (want("duality")) suite_duality(checks);
    } else {
        // Still mark the suite name as recognized.
        for (const char* n : {"line", "hilbert", "linf2", "l1sum", "diamond", "duality"})
            if (suite == n) known = true;
    }
    if (!known && suite != "all") throw ParseError("unknown verify suite: " + suite);

    bool all_pass = true;
    for (const Check& c : checks) {
        all_pass = all_pass && c.pass;
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  expected " << fmt(c.expected)
                  << "  got " << fmt(c.got) << "\n";
    }
    std::cout << (all_pass ? "PASS" : "FAIL") << " suite " << suite << " (" << checks.size()
              << " checks)\n";
    return all_pass ? 0 : 1;
}

// ------------------------------------------------------------------- plot

struct CurveRow {
    double delta, lower, upper;
    std::optional<double> reference;
};

std::string render_csv(const std::vector<CurveRow>& rows) {
    std::ostringstream out;
    out << "delta,lower,upper,reference\n";
    for (const CurveRow& r : rows) {
        out << fmt(r.delta) << "," << fmt(r.lower) << "," << fmt(r.upper) << ",";
        if (r.reference) out << fmt(*r.reference);
        out << "\n";
    }
    return out.str();
}

std::string render_svg(const std::vector<CurveRow>& rows, const std::string& title) {
    // Frame [0,2] x [0,2], 520x520 canvas with a 40px margin.
    const double w = 440.0, m = 40.0;
    auto X = [&](double d) { return m + d / 2.0 * w; };
    auto Y = [&](double v) { return m + w - v / 2.0 * w; };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" "
           "viewBox=\"0 0 520 520\">\n";
    out << "<rect x=\"" << m << "\" y=\"" << m << "\" width=\"" << w << "\" height=\"" << w
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << m << "\" y=\"" << m - 10 << "\" font-size=\"14\">" << title
        << " (frame [0,2] x [0,2])</text>\n";
    bool has_ref = false;
    for (const CurveRow& r : rows) has_ref = has_ref || r.reference.has_value();
    if (has_ref) {
        out << "<polyline fill=\"none\" stroke=\"gray\" stroke-width=\"1\" points=\"";
        for (const CurveRow& r : rows)
            if (r.reference) out << X(r.delta) << "," << Y(*r.reference) << " ";
        out << "\"/>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"";
    for (const CurveRow& r : rows) out << X(r.delta) << "," << Y(r.lower) << " ";
    out << "\"/>\n";
    for (const CurveRow& r : rows)
        out << "<circle cx=\"" << X(r.delta) << "\" cy=\"" << Y(r.lower)
            << "\" r=\"2\" fill=\"blue\"/>\n";
    out << "</svg>\n";
    return out.str();
}

int cmd_plot(const std::string& spec_path, double dmin, double dmax, double step, bool spherical,
             const std::string& format, const SearchBudget& budget, const std::string& out_path) {
    if (!(dmin > 0.0 && dmax < 2.0 && dmin <= dmax && step > 0.0))
        throw ParseError("delta range must satisfy 0 < min <= max < 2 with positive step");
    SpaceSpec spec = SpaceSpec::parse_file(spec_path);
    NormedSpace S = spec.build();
    std::optional<std::string> ref = reference_name(spec);

    std::vector<double> deltas;
    for (double d = dmin; d <= dmax + 1e-12; d += step) deltas.push_back(d);
    auto curve = phi_curve(S, deltas, spherical, budget);

    std::vector<CurveRow> rows;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        CurveRow r{deltas[i], curve[i].lower, curve[i].upper, std::nullopt};
        if (ref) r.reference = reference_phi(*ref, deltas[i], spherical);
        rows.push_back(r);
    }

    std::string body = format == "svg" ? render_svg(rows, S.name()) : render_csv(rows);
    if (out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write output: " + out_path);
        out << body;
    }
    return 0;
}

// -------------------------------------------------------------- squareness

int cmd_squareness(const std::string& spec_path, const SearchBudget& budget,
                   const std::string& out_path) {
    SpaceSpec spec = SpaceSpec::parse_file(spec_path);
    NormedSpace S = spec.build();
    SquareWitness w = squareness_defect(S, budget);
    std::cout << "space " << S.name() << "\n";
    std::cout << "defect " << fmt(w.defect) << "\n";
    std::cout << "witness u " << vec_str(w.u) << "\n";
    std::cout << "witness v " << vec_str(w.v) << "\n";
    if (w.defect <= 1e-9) {
        Vec up = scale(add(w.u, w.v), 0.5);
        Vec vp = scale(sub(w.u, w.v), 0.5);
        std::cout << "square subspace basis " << vec_str(up) << " " << vec_str(vp) << "\n";
    }

    json rec = record_skeleton("squareness", spec);
    rec["params"] = {{"seed", budget.seed}, {"starts", budget.starts}};
    rec["outputs"] = {{"defect", w.defect}, {"u", w.u}, {"v", w.v}};
    write_record(rec, out_path);
    return 0;
}

// -------------------------------------------------------------------- dual

int cmd_dual(const std::string& spec_path, const std::string& out_path) {
    SpaceSpec spec = SpaceSpec::parse_file(spec_path);
    SpaceSpec d = spec.dual();
    d.build();  // sanity: the dual must construct
    if (out_path.empty()) {
        std::cout << d.print();
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write output: " + out_path);
        out << d.print();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bishop-Phelps-Bollobas moduli toolkit"};
    app.require_subcommand(1);

    SearchBudget budget;
    std::string spec_path, out_path, format = "csv", suite, space_override;
    double delta = 0.5, mesh = 0.0, dmin = 0.05, dmax = 1.95, step = 0.05;
    bool spherical = false;

    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--budget", budget.max_evals, "max distance evaluations");
        cmd->add_option("--seed", budget.seed, "search RNG seed");
        cmd->add_option("--starts", budget.starts, "multistart count");
    };

    CLI::App* mod = app.add_subcommand("modulus", "estimate the modulus at one delta");
    mod->add_option("spec", spec_path, "space spec file")->required();
    mod->add_option("delta", delta, "delta in (0,2)")->required();
    mod->add_flag("--spherical", spherical, "spherical variant");
    mod->add_option("--mesh", mesh, "certification mesh (default 0.02 / 0.05 by dim)");
    mod->add_option("--out", out_path, "result record path (json)");
    add_budget(mod);

    CLI::App* ver = app.add_subcommand("verify", "run a named verification suite");
    ver->add_option("suite", suite, "line|hilbert|linf2|l1sum|diamond|duality|all")->required();
    ver->add_option("--space", space_override, "substitute space spec file");
    add_budget(ver);

    CLI::App* plt = app.add_subcommand("plot", "export a modulus curve");
    plt->add_option("spec", spec_path, "space spec file")->required();
    plt->add_option("--min", dmin, "smallest delta");
    plt->add_option("--max", dmax, "largest delta");
    plt->add_option("--step", step, "delta step");
    plt->add_flag("--spherical", spherical, "spherical variant");
    plt->add_option("--format", format, "csv|svg")->check(CLI::IsMember({"csv", "svg"}));
    plt->add_option("--out", out_path, "output file (stdout when absent)");
    add_budget(plt);

    CLI::App* sq = app.add_subcommand("squareness", "squareness defect and witnesses");
    sq->add_option("spec", spec_path, "space spec file")->required();
    sq->add_option("--out", out_path, "result record path (json)");
    add_budget(sq);

    CLI::App* du = app.add_subcommand("dual", "emit the dual space spec");
    du->add_option("spec", spec_path, "space spec file")->required();
    du->add_option("--out", out_path, "output spec file (stdout when absent)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mod->parsed()) {
            if (!(delta > 0.0 && delta < 2.0)) throw ParseError("delta must lie in (0,2)");
            return cmd_modulus(spec_path, delta, spherical, mesh, budget, out_path);
        }
        if (ver->parsed()) return cmd_verify(suite, space_override, budget);
        if (plt->parsed())
            return cmd_plot(spec_path, dmin, dmax, step, spherical, format, budget, out_path);
        if (sq->parsed()) return cmd_squareness(spec_path, budget, out_path);
        if (du->parsed()) return cmd_dual(spec_path, out_path);
    } catch (const UnsupportedSpace& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
