// spectral-strings: command-line front end.
//
//   terms  <model.json>   closed-form action terms of one model
//   verify <model.json>   closed forms against independent symbol quadrature
//   sweep  <sweep.json>   one-parameter family, CSV output
//
// Exit codes: 0 success, 1 verification failure, 2 parse/format error,
// 3 invalid (singular or rejected) zweibein, 4 quadrature did not
// converge, 5 file I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <spectral_strings/spectral_strings.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_parse = 2;
constexpr int exit_bad_zweibein = 3;
constexpr int exit_no_convergence = 4;
constexpr int exit_io = 5;

using spectral_strings::ActionTerms;
using spectral_strings::DoubledGeometry;
using spectral_strings::format_g17;
using spectral_strings::ModelValues;
using spectral_strings::SweepSpec;

struct CommonOptions {
    std::string path;
    bool json = false;
    bool paper_strict = false;
};

// The closed forms use |det|; under --paper-strict the signed
// determinants of the source must be positive for the two readings to
// coincide, so anything else is rejected.
void enforce_paper_strict(const ModelValues& m, const std::string& what) {
    const double det_k = m.K[0][0] * m.K[1][1] - m.K[0][1] * m.K[1][0];
    const double det_l = m.L[0][0] * m.L[1][1] - m.L[0][1] * m.L[1][0];
    if (det_k <= 0.0)
        throw std::domain_error("--paper-strict: " + what + " has det K = " +
                                format_g17(det_k) + ", expected positive");
    if (det_l <= 0.0)
        throw std::domain_error("--paper-strict: " + what + " has det L = " +
                                format_g17(det_l) + ", expected positive");
}

int run_terms(const CommonOptions& opt) {
    const ModelValues m = spectral_strings::load_model(opt.path);
    if (opt.paper_strict) enforce_paper_strict(m, "model");
    const DoubledGeometry geom = m.to_geometry();
    const ActionTerms terms = spectral_strings::action_terms(geom);
    const auto td = spectral_strings::transition(geom.K, geom.L);
    const double det_x = spectral_strings::det(td.X);

    if (opt.json) {
        nlohmann::json out{{"cosmological", terms.cosmological},
                           {"mass_correction", terms.mass_correction},
                           {"v1", terms.v1},
                           {"v_int", terms.v_int},
                           {"det_X", det_x},
                           {"det_sign", td.det_sign}};
        std::cout << out.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << "cosmological    = " << format_g17(terms.cosmological) << "\n"
              << "mass_correction = " << format_g17(terms.mass_correction) << "\n"
              << "v1              = " << format_g17(terms.v1) << "\n"
              << "v_int           = " << format_g17(terms.v_int) << "\n"
              << "det_X           = " << format_g17(det_x) << "\n"
              << "det_sign        = " << (td.det_sign > 0 ? "+1" : "-1") << "\n";
    return exit_ok;
}

struct VerifyOptions : CommonOptions {
    double rel_tol = 1e-6;
    long max_subdivisions = 1000000;
    double corrupt_factor = 1.0;  // test-harness hook, scales the closed forms
};

struct TermCheck {
    const char* name;
    double closed;
    spectral_strings::IntegralResult oracle;
    double deviation;
    bool ok;
};

int run_verify(const VerifyOptions& opt) {
    const ModelValues m = spectral_strings::load_model(opt.path);
    if (opt.paper_strict) enforce_paper_strict(m, "model");
    const DoubledGeometry geom = m.to_geometry();
    const ActionTerms closed = spectral_strings::action_terms(geom);

    spectral_strings::QuadratureConfig qcfg;
    qcfg.rel_tol = std::max(opt.rel_tol * 1e-2, 1e-12);
    qcfg.abs_tol = 1e-12;
    qcfg.max_subdivisions = opt.max_subdivisions;
    const spectral_strings::OracleTerms oracle = spectral_strings::oracle_terms(geom, qcfg);

    const auto check = [&](const char* name, double closed_value,
                           const spectral_strings::IntegralResult& integral) {
        const double reference = opt.corrupt_factor * closed_value;
        const double scale = std::abs(reference);
        double deviation;
        bool ok;
        if (scale > qcfg.abs_tol) {
            deviation = std::abs(integral.value - reference) / scale;
            ok = deviation <= opt.rel_tol;
        } else {
            deviation = std::abs(integral.value - reference);
            ok = deviation <= qcfg.abs_tol;
        }
        return TermCheck{name, reference, integral, deviation, ok};
    };

    const TermCheck checks[3] = {
        check("cosmological", closed.cosmological, oracle.cosmological),
        check("mass_correction", closed.mass_correction, oracle.mass_correction),
        check("v1", closed.v1, oracle.v1),
    };

    bool all_converged = true;
    bool all_ok = true;
    const TermCheck* worst = &checks[0];
    for (const auto& c : checks) {
        all_converged = all_converged && c.oracle.converged;
        all_ok = all_ok && c.ok;
        if (c.deviation > worst->deviation) worst = &c;
    }

    if (opt.json) {
        nlohmann::json out{{"rel_tol", opt.rel_tol},
                           {"passed", all_ok && all_converged},
                           {"converged", all_converged}};
        for (const auto& c : checks)
            out["terms"][c.name] = {{"closed", c.closed},
                                    {"quadrature", c.oracle.value},
                                    {"rel_deviation", c.deviation},
                                    {"evaluations", c.oracle.evaluations},
                                    {"converged", c.oracle.converged}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& c : checks)
            std::cout << c.name << ": closed " << format_g17(c.closed) << ", quadrature "
                      << format_g17(c.oracle.value) << ", deviation "
                      << format_g17(c.deviation) << ", evaluations "
                      << c.oracle.evaluations
                      << (c.oracle.converged ? "" : " (not converged)") << "\n";
    }

    if (!all_converged) {
        std::cerr << "error: quadrature did not converge within the subdivision budget\n";
        return exit_no_convergence;
    }
    if (!all_ok) {
        std::cerr << "verification FAILED: worst term " << worst->name << " (deviation "
                  << format_g17(worst->deviation) << " > rel_tol "
                  << format_g17(opt.rel_tol) << ")\n";
        return exit_verify_failed;
    }
    if (!opt.json)
        std::cout << "verification passed (rel_tol " << format_g17(opt.rel_tol) << ")\n";
    return exit_ok;
}

struct SweepOptions : CommonOptions {
    std::string output;
};

int run_sweep(const SweepOptions& opt) {
    const SweepSpec spec = spectral_strings::load_sweep(opt.path);
    if (opt.paper_strict) {
        enforce_paper_strict(spec.base, "sweep base");
        for (int i = 0; i < spec.steps; ++i) {
            ModelValues step = spec.base;
            spectral_strings::resolve_parameter(step, spec.parameter) =
                spectral_strings::sweep_value(spec, i);
            enforce_paper_strict(step, "sweep step " + std::to_string(i));
        }
    }
    const std::string csv = spectral_strings::sweep_csv(spec);
    if (opt.output.empty()) {
        std::cout << csv;
        return exit_ok;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out)
        throw spectral_strings::IoError("cannot open output file: " + opt.output);
    out << csv;
    out.flush();
    if (!out)
        throw spectral_strings::IoError("cannot write output file: " + opt.output);
    return exit_ok;
}

template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    } catch (const spectral_strings::ModelFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    } catch (const spectral_strings::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_zweibein;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_no_convergence;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral action terms of a two-frame doubled geometry"};
    app.require_subcommand(1);

    CommonOptions terms_opt;
    auto* terms = app.add_subcommand("terms", "print the closed-form action terms of a model");
    terms->add_option("model", terms_opt.path, "model JSON file")->required();
    terms->add_flag("--json", terms_opt.json, "machine-readable output");
    terms->add_flag("--paper-strict", terms_opt.paper_strict,
                    "require positively oriented frames");

    VerifyOptions verify_opt;
    auto* verify = app.add_subcommand(
        "verify", "check the closed forms against independent symbol quadrature");
    verify->add_option("model", verify_opt.path, "model JSON file")->required();
    verify->add_flag("--json", verify_opt.json, "machine-readable output");
    verify->add_flag("--paper-strict", verify_opt.paper_strict,
                     "require positively oriented frames");
    verify->add_option("--rel-tol", verify_opt.rel_tol,
                       "acceptance threshold for relative deviation")
        ->check(CLI::PositiveNumber);
    verify->add_option("--max-subdivisions", verify_opt.max_subdivisions,
                       "quadrature panel budget")
        ->check(CLI::PositiveNumber);
    verify->add_option("--corrupt-closed-form", verify_opt.corrupt_factor)->group("");

    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "sweep one model parameter, CSV output");
    sweep->add_option("spec", sweep_opt.path, "sweep JSON file")->required();
    sweep->add_option("-o,--output", sweep_opt.output, "CSV output file (default stdout)");
    sweep->add_flag("--paper-strict", sweep_opt.paper_strict,
                    "require positively oriented frames");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_parse;
    }

    if (terms->parsed()) return guarded([&] { return run_terms(terms_opt); });
    if (verify->parsed()) return guarded([&] { return run_verify(verify_opt); });
    return guarded([&] { return run_sweep(sweep_opt); });
}
