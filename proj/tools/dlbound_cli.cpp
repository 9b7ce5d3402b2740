// Command-line front end: eval, sweep, certify, identities.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dlbound/dlbound.hpp"

namespace {

using namespace dlbound;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

int verdict_exit(const std::vector<Verdict>& verdicts)
{
    int rc = exit_code::ok;
    for (auto v : verdicts) {
        if (v == Verdict::fail) {
            return exit_code::failure;
        }
        if (v == Verdict::inconclusive) {
            rc = exit_code::inconclusive;
        }
    }
    return rc;
}

struct EvalArgs
{
    std::uint64_t q = 0;
    std::uint64_t chi = 0;
    double t = 0.0;
    double radius = 1e-8;
    std::string method = "hurwitz";
};

int run_eval(const EvalArgs& a)
{
    if (a.q < 3) {
        throw UsageError("--q must be >= 3");
    }
    if (!(a.t > 0.0) || !(a.radius > 0.0)) {
        throw UsageError("--t and --radius must be positive");
    }
    const auto group = build_unit_group(a.q);
    if (a.chi == 0 || a.chi >= group->phi()) {
        throw UsageError("--chi must index a non-principal character: 1 <= I < phi(q) = " +
                         std::to_string(group->phi()));
    }
    const auto chi = character_by_index(group, a.chi);

    std::optional<LPoint> evaluated;
    try {
        if (a.method == "hurwitz") {
            evaluated = l_eval_hurwitz(chi, a.t, a.radius);
        } else {
            evaluated = l_eval_partial_sum(chi, a.t, partial_sum_truncation(a.q, a.t, a.radius));
        }
    } catch (const TruncationUnreachable& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return exit_code::inconclusive;
    }
    const auto& point = *evaluated;

    const auto [abs_mid, abs_radius] = point.value.modulus();
    nlohmann::ordered_json out;
    out["q"] = a.q;
    out["chi_index"] = a.chi;
    out["chi_exponents"] = chi.label();
    out["t"] = a.t;
    out["method"] = std::string(to_string(point.method));
    out["truncation"] = point.truncation;
    out["re"] = point.value.mid().real();
    out["im"] = point.value.mid().imag();
    out["radius"] = point.value.radius();
    out["l_abs_mid"] = abs_mid;
    out["l_abs_radius"] = abs_radius;
    out["bounds"] = nlohmann::ordered_json::array();
    std::vector<Verdict> verdicts;
    for (auto b : {BoundName::theorem1, BoundName::theorem2, BoundName::corollary}) {
        const auto enc = bound_enclosure(b, a.q, a.t);
        if (!enc) {
            continue;
        }
        const auto v = judge(abs_mid, abs_radius, *enc);
        verdicts.push_back(v);
        out["bounds"].push_back({{"bound_name", std::string(to_string(b))},
                                 {"bound_value", enc->mid()},
                                 {"margin", (Interval(enc->lo()) - (Interval(abs_mid) + Interval(abs_radius))).lo()},
                                 {"verdict", std::string(to_string(v))}});
    }
    std::cout << out.dump(2) << '\n';
    return verdict_exit(verdicts);
}

int run_sweep_command(const std::string& config_path, const std::string& out_path, std::optional<unsigned> workers)
{
    SweepConfig cfg;
    try {
        cfg = load_sweep_config(config_path);
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    if (!out_path.empty()) {
        cfg.output_path = out_path;
    }
    if (workers) {
        cfg.parallelism = *workers;
    }
    cfg.validate();

    std::ofstream file;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::binary);
        if (!file) {
            throw UsageError("cannot write output file: " + cfg.output_path);
        }
    }
    const auto result = run_sweep(cfg);
    std::ostream& os = cfg.output_path.empty() ? std::cout : file;
    write_csv(os, result.rows);
    os.flush();
    if (!os) {
        throw UsageError("write failed: " + cfg.output_path);
    }

    const auto& s = result.summary;
    std::cerr << "rows: " << result.rows.size() << "  PASS: " << s.pass << "  INCONCLUSIVE: " << s.inconclusive
              << "  FAIL: " << s.fail << '\n';
    if (s.min_margin_row) {
        const auto& r = *s.min_margin_row;
        std::cerr << "minimum margin " << format_number(r.margin) << " at q=" << r.q << " chi=" << r.chi_exponents
                  << " t=" << format_number(r.t) << " method=" << to_string(r.method) << " bound=" << to_string(r.bound)
                  << '\n';
    }
    for (const auto& r : result.rows) {
        if (!r.note.empty()) {
            std::cerr << "note: q=" << r.q << " chi=" << r.chi_exponents << " t=" << format_number(r.t) << ": " << r.note
                      << '\n';
        }
    }
    return result.exit_status();
}

struct CertifyArgs
{
    std::string kind;
    double m = 0.0;
    std::optional<double> b;
    double t_min = 0.0;
    double t_max = 1e6;
    double q_min = 2.0;
    double q_max = 1e4;
    double tol = 1e-6;
    bool no_tails = false;
    std::size_t max_cells = 2'000'000;
    std::string out;
};

int run_certify_command(const CertifyArgs& a)
{
    ResidualSpec spec;
    try {
        spec.kind = residual_kind_from_string(a.kind);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    spec.m = a.m;
    spec.b = a.b.value_or(14.0 / 5.0);
    spec.region = {a.q_min, a.q_max, a.t_min, a.t_max};
    spec.include_tails = !a.no_tails;
    CertifyOptions options;
    options.max_cells = a.max_cells;

    ResidualCertificate cert;
    try {
        cert = certify_residual_negative(spec, a.tol, options);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto doc = certificate_to_json(cert);
    if (!a.out.empty()) {
        std::ofstream file(a.out, std::ios::binary);
        if (!file || !(file << doc.dump(1) << '\n')) {
            throw UsageError("cannot write certificate: " + a.out);
        }
    }
    std::cout << "kind: " << to_string(spec.kind) << '\n'
              << "status: " << to_string(cert.status) << '\n'
              << "cells: " << cert.cells.size() << '\n'
              << "tail cells: " << cert.tails.size() << '\n';
    if (const auto w = cert.worst_cell()) {
        std::cout << "worst upper bound: " << format_number(w->upper) << " on q=" << w->q << " t=" << w->t << '\n';
    }
    if (cert.failing_cell) {
        std::cout << "failing cell: q=" << cert.failing_cell->q << " t=" << cert.failing_cell->t
                  << " upper=" << format_number(cert.failing_cell->upper) << '\n';
    }
    if (!cert.message.empty()) {
        std::cout << "message: " << cert.message << '\n';
    }
    switch (cert.status) {
    case CertificateStatus::certified: return exit_code::ok;
    case CertificateStatus::failed: return exit_code::failure;
    default: return exit_code::inconclusive;
    }
}

int run_identities_command(std::uint64_t q_max)
{
    if (q_max < 2) {
        throw UsageError("--q-max must be >= 2");
    }
    const auto report = run_identities(q_max, {cplx(2.0, 0.0), cplx(1.0, 1.0), cplx(1.0, 10.0), cplx(1.0, 30.0)});
    std::size_t bad = 0;
    for (const auto& c : report.checks) {
        std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << "  " << c.detail << '\n';
        bad += c.ok ? 0 : 1;
    }
    std::cout << report.checks.size() << " checks, " << bad << " inconsistent\n";
    return bad == 0 ? exit_code::ok : exit_code::failure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified evaluation of Dirichlet L-functions on Re(s) = 1 and checks of explicit upper bounds"};
    app.require_subcommand(1);

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate L(1+it, chi) with a certified radius");
    eval_cmd->add_option("--q", eval.q, "Modulus (>= 3)")->required();
    eval_cmd->add_option("--chi", eval.chi, "Character index in canonical order (0 is principal)")->required();
    eval_cmd->add_option("--t", eval.t, "Imaginary part t > 0")->required();
    eval_cmd->add_option("--radius", eval.radius, "Target radius")->required();
    eval_cmd->add_option("--method", eval.method, "Evaluator")->check(CLI::IsMember({"hurwitz", "psum"}));

    std::string config_path, sweep_out;
    std::optional<unsigned> workers;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a verification sweep and write a CSV report");
    sweep_cmd->add_option("--config", config_path, "key = value config file")->required();
    sweep_cmd->add_option("--out", sweep_out, "CSV output path (overrides output_path)");
    sweep_cmd->add_option("--workers", workers, "Worker threads (overrides parallelism)");

    CertifyArgs cert;
    auto* cert_cmd = app.add_subcommand("certify", "Certify a residual inequality by adaptive bisection");
    cert_cmd->add_option("--kind", cert.kind, "backlund | psum | gamma-glue | t2-glue")->required();
    cert_cmd->add_option("--m", cert.m, "Parameter m");
    cert_cmd->add_option("--b", cert.b, "Parameter b (psum; default 14/5)");
    cert_cmd->add_option("--t-min", cert.t_min)->required();
    cert_cmd->add_option("--t-max", cert.t_max);
    cert_cmd->add_option("--q-min", cert.q_min);
    cert_cmd->add_option("--q-max", cert.q_max);
    cert_cmd->add_option("--tol", cert.tol, "Minimum cell width");
    cert_cmd->add_option("--max-cells", cert.max_cells);
    cert_cmd->add_flag("--no-tails", cert.no_tails, "Skip the unbounded tail cells");
    cert_cmd->add_option("--out", cert.out, "Write the certificate as JSON");

    std::uint64_t q_max = 12;
    auto* id_cmd = app.add_subcommand("identities", "Run Hurwitz/character identity and cross-evaluator checks");
    id_cmd->add_option("--q-max", q_max)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (*eval_cmd) {
            return run_eval(eval);
        }
        if (*sweep_cmd) {
            return run_sweep_command(config_path, sweep_out, workers);
        }
        if (*cert_cmd) {
            return run_certify_command(cert);
        }
        return run_identities_command(q_max);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}
