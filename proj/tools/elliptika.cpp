#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "elliptika/bethe.hpp"
#include "elliptika/rmatrix.hpp"
#include "elliptika/suites.hpp"
#include "elliptika/transfer.hpp"

using namespace elliptika;
using nlohmann::json;

namespace {

Config resolve_config(const std::string& path_flag) {
    if (!path_flag.empty()) return load_config(path_flag);
    if (const char* env = std::getenv("ELLIPTIKA_CONFIG")) return load_config(env);
    return Config{};
}

json roots_json(const BetheRoots& roots) {
    json arr = json::array();
    for (cx r : roots.roots) arr.push_back(json::array({r.real(), r.imag()}));
    return json{{"n", roots.n}, {"roots", arr}, {"residual", roots.residual}};
}

// Vacuum gauge used when checking a Bethe state.  The default rebuilds the
// gauge that solve_bethe pairs with the roots; `gauge = unit` and
// `gauge = lattice-file` substitute f == 1 or user-supplied samples.
Vacuum gauge_for_roots(const Rep& rep, const Config& cfg, const BetheRoots& roots) {
    const ModularParams p = rep.params();
    switch (cfg.gauge) {
    case GaugeChoice::unit: return pseudovacuum(rep, cfg.q0, cfg.window_k);
    case GaugeChoice::lattice_file: {
        std::ifstream in(cfg.gauge_file);
        if (!in) throw ConfigError("cannot open gauge.file: " + cfg.gauge_file);
        const json j = json::parse(in);
        const int lo = j.at("lo").get<int>();
        const auto& vals = j.at("values");
        LatticeFn f = LatticeFn::zeros(cfg.q0, p.step(), 1, lo, lo + int(vals.size()) - 1);
        for (int k = 0; k < int(vals.size()); ++k)
            f.at(lo + k)[0] = cx(vals[k].at(0).get<double>(), vals[k].at(1).get<double>());
        return pseudovacuum(rep, cfg.q0, cfg.window_k, &f);
    }
    case GaugeChoice::functional_equation: break;
    }
    if (roots.n == 1) {
        const LatticeFn f = solve_f_lattice(
            [&](cx q) { return f_ratio_one_magnon(q, roots.roots[0], rep.sites()[0], p); },
            cfg.q0, p.step(), cfg.window_k);
        return pseudovacuum(rep, cfg.q0, cfg.window_k, &f);
    }
    const LatticeFn f = solve_f_lattice([&](cx q) { return f_ratio_two_magnon(q, p); }, cfg.q0,
                                        p.step(), cfg.window_k);
    return pseudovacuum(rep, cfg.q0, cfg.window_k, &f);
}

int cmd_verify(const std::vector<std::string>& suites, const Config& cfg,
               const std::string& report_path) {
    Report report;
    report.config = cfg;
    const std::vector<std::string>& names =
        suites.empty() ? (cfg.suites.empty() ? all_suites() : cfg.suites) : suites;

    bool ok = true;
    std::vector<std::string> failing;
    for (const std::string& name : names) {
        const SuiteResult res = run_suite(name, cfg);
        for (const CaseResult& c : res.cases)
            std::printf("%-10s %-32s residual %.3e  tol %.1e  %s\n", name.c_str(),
                        c.name.c_str(), c.residual, c.tolerance, c.pass ? "pass" : "FAIL");
        if (!res.passed()) {
            ok = false;
            failing.push_back(name);
        }
        report.suites.push_back(res);
    }
    if (!report_path.empty()) emit_report(report, report_path);
    if (!ok) {
        std::cerr << "failing suites:";
        for (const auto& f : failing) std::cerr << " " << f;
        std::cerr << "\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for the elliptic quantum group E_{tau,eta}(so3): "
                 "dynamical R-matrix, operator algebra, transfer matrices, Bethe states"};
    app.require_subcommand(1);
    app.fallthrough(); // let --config appear after the subcommand too

    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file")
        ->envname("ELLIPTIKA_CONFIG");

    // verify
    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suite_names;
    verify->add_option("suites", suite_names, "suites to run (default: all)");
    uint64_t seed_flag = 0;
    auto* seed_opt = verify->add_option("--seed", seed_flag, "override RNG seed");
    std::string verify_sites;
    verify->add_option("--sites", verify_sites, "comma separated evaluation points");
    std::string report_path;
    verify->add_option("--report", report_path, "write a JSON report here");

    // bethe solve / eigencheck
    auto* bethe = app.add_subcommand("bethe", "Bethe root solving and eigenvector checks");
    bethe->require_subcommand(1);
    auto* solve = bethe->add_subcommand("solve", "solve the Bethe conditions");
    int magnons = 2;
    solve->add_option("--n", magnons, "number of magnons (1 or 2)")->required();
    std::string sites_flag, guess_flag, roots_out;
    solve->add_option("--sites", sites_flag, "comma separated evaluation points");
    solve->add_option("--guess", guess_flag, "comma separated complex initial guesses");
    solve->add_option("--out", roots_out, "write roots JSON here");

    auto* echeck = bethe->add_subcommand("eigencheck", "check a Bethe state from a roots file");
    std::string roots_file;
    echeck->add_option("--roots-file", roots_file, "roots JSON from `bethe solve`")->required();
    std::string echeck_sites;
    echeck->add_option("--sites", echeck_sites, "comma separated evaluation points");
    int n_samples = 5;
    echeck->add_option("--samples", n_samples, "number of spectral samples");

    // rmatrix dump
    auto* rdump = app.add_subcommand("rmatrix", "R-matrix utilities");
    auto* dump = rdump->add_subcommand("dump", "dump R(q,u) as JSON");
    std::string q_flag, u_flag, dump_out;
    dump->add_option("--q", q_flag, "dynamical parameter, a+bi")->required();
    dump->add_option("--u", u_flag, "spectral parameter, a+bi")->required();
    dump->add_option("--out", dump_out, "output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = resolve_config(config_path);
        if (seed_opt->count() > 0) cfg.seed = seed_flag;
        if (!sites_flag.empty() || !echeck_sites.empty() || !verify_sites.empty()) {
            const std::string& s = !sites_flag.empty()
                                       ? sites_flag
                                       : (!echeck_sites.empty() ? echeck_sites : verify_sites);
            cfg.sites.clear();
            std::string cur;
            for (char c : s + ",") {
                if (c == ',') {
                    if (!cur.empty()) cfg.sites.push_back(parse_complex(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
        }
        cfg.validate();

        if (verify->parsed()) return cmd_verify(suite_names, cfg, report_path);

        if (solve->parsed()) {
            while (int(cfg.sites.size()) > magnons) cfg.sites.pop_back();
            const Rep rep = chain_rep(cfg.sites, cfg.params());
            std::vector<cx> guess;
            if (!guess_flag.empty()) {
                std::string cur;
                for (char c : guess_flag + ",") {
                    if (c == ',') {
                        if (!cur.empty()) guess.push_back(parse_complex(cur));
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
            }
            const BetheSolution sol = solve_bethe(magnons, rep, cfg.q0, cfg.window_k, guess);
            const json out = roots_json(sol.roots);
            if (roots_out.empty()) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::ofstream f(roots_out, std::ios::binary);
                f << out.dump(2) << "\n";
            }
            return 0;
        }

        if (echeck->parsed()) {
            std::ifstream f(roots_file);
            if (!f) throw ConfigError("cannot open roots file: " + roots_file);
            const json j = json::parse(f);
            BetheRoots roots;
            roots.n = j.at("n").get<int>();
            for (const auto& r : j.at("roots"))
                roots.roots.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
            roots.residual = j.at("residual").get<double>();

            while (int(cfg.sites.size()) > roots.n) cfg.sites.pop_back();
            const Rep rep = chain_rep(cfg.sites, cfg.params());
            const Vacuum vac = gauge_for_roots(rep, cfg, roots);
            Rng rng = Rng::for_suite(cfg.seed, "eigencheck-cli");
            std::vector<cx> samples;
            for (int i = 0; i < n_samples; ++i) samples.push_back(rng.box(-0.8, 0.8, -0.3, 0.3));
            const EigencheckResult ec = eigencheck(rep, vac, roots, samples);
            std::printf("eigencheck residual %.6e, eigenvalue q-spread %.6e\n", ec.residual,
                        ec.lambda_spread);
            for (size_t i = 0; i < samples.size(); ++i)
                std::printf("  u = (%+.4f,%+.4f): lambda = %+.12e %+.12ei\n", samples[i].real(),
                            samples[i].imag(), ec.lambdas[i].real(), ec.lambdas[i].imag());
            return ec.residual < 1e-6 ? 0 : 1;
        }

        if (dump->parsed()) {
            const RMatrix r = r_build(parse_complex(q_flag), parse_complex(u_flag), cfg.params());
            json rows = json::array();
            for (int i = 0; i < 9; ++i) {
                json row = json::array();
                for (int jcol = 0; jcol < 9; ++jcol)
                    row.push_back(json::array({r.m(i, jcol).real(), r.m(i, jcol).imag()}));
                rows.push_back(row);
            }
            if (dump_out.empty()) {
                std::cout << rows.dump() << "\n";
            } else {
                std::ofstream f(dump_out, std::ios::binary);
                f << rows.dump() << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
