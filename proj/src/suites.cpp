#include "elliptika/suites.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "elliptika/bethe.hpp"
#include "elliptika/errors.hpp"
#include "elliptika/rmatrix.hpp"
#include "elliptika/rng.hpp"
#include "elliptika/theta.hpp"
#include "elliptika/transfer.hpp"

namespace elliptika {

using nlohmann::json;

namespace {

cx sample_q(Rng& rng) { return rng.box(0.1, 0.9, 0.05, 0.35); }
cx sample_u(Rng& rng) { return rng.box(-0.8, 0.8, -0.3, 0.3); }

// Run f until it returns without tripping a pole guard; cap at 100 retries.
template <typename F>
auto resample(Rng& rng, F f) {
    for (int tries = 0; tries < 100; ++tries) {
        try {
            return f(rng);
        } catch (const PoleProximity&) {
        }
    }
    throw SolverError("resample cap of 100 exceeded");
}

CaseResult make_case(std::string name, json params, double residual, double tol) {
    return CaseResult{std::move(name), std::move(params), residual,
                      tol, residual < tol};
}

Rep chain_from(const Config& cfg, size_t n_sites) {
    std::vector<cx> sites(cfg.sites.begin(),
                          cfg.sites.begin() + std::min(n_sites, cfg.sites.size()));
    // Pad with the default ladder when the config lists fewer sites.
    const cx defaults[] = {cx(0.0), cx(0.17), cx(0.29)};
    for (size_t k = sites.size(); k < n_sites; ++k) sites.push_back(defaults[k % 3]);
    return chain_rep(sites, cfg.params());
}

SuiteResult suite_theta(const Config& cfg) {
    const ModularParams p = cfg.params();
    Rng rng = Rng::for_suite(cfg.seed, "theta");
    const double tol = cfg.tolerance("theta", 1e-9);
    SuiteResult out{"theta", {}, 0.0};

    double w_plus1 = 0.0, w_tau = 0.0, w_four = 0.0, w_odd = 0.0;
    constexpr double pi = std::numbers::pi;
    for (int i = 0; i < 100; ++i) {
        const cx u = rng.box(-1.0, 1.0, -0.5, 0.5);
        const cx tu = theta(u, p);
        w_plus1 = std::max(w_plus1,
                           std::abs(theta(u + 1.0, p) + tu) / std::max(1.0, std::abs(tu)));
        const cx rhs = -std::exp(cx(0.0, -pi) * (p.tau + 2.0 * u)) * tu;
        w_tau = std::max(w_tau,
                         std::abs(theta(u + p.tau, p) - rhs) / std::max(1.0, std::abs(rhs)));
        w_odd = std::max(w_odd, std::abs(theta(-u, p) + tu));

        const cx v = rng.box(-1.0, 1.0, -0.5, 0.5);
        const cx x = rng.box(-1.0, 1.0, -0.5, 0.5);
        const cx y = rng.box(-1.0, 1.0, -0.5, 0.5);
        const cx lhs4 = theta(u + x, p) * theta(u - x, p) * theta(v + y, p) * theta(v - y, p);
        const cx rhs4 = theta(u + y, p) * theta(u - y, p) * theta(v + x, p) * theta(v - x, p)
                      + theta(u + v, p) * theta(u - v, p) * theta(x + y, p) * theta(x - y, p);
        w_four = std::max(w_four, std::abs(lhs4 - rhs4) / std::max(1.0, std::abs(rhs4)));
    }
    out.cases.push_back(make_case("quasiperiodicity-period", json{{"samples", 100}}, w_plus1, tol));
    out.cases.push_back(make_case("quasiperiodicity-tau", json{{"samples", 100}}, w_tau, tol));
    out.cases.push_back(make_case("four-term-identity", json{{"samples", 100}}, w_four, tol));
    out.cases.push_back(make_case("oddness", json{{"samples", 100}}, w_odd, 1e-12));
    out.cases.push_back(make_case("value-at-origin", json::object(), std::abs(theta(cx(0.0), p)), 1e-13));

    // omega: dynamical quotient versus closed form on a 20 x 20 grid
    const double omega_tol = cfg.tolerance("omega", 1e-10);
    double w_grid = 0.0;
    for (int iq = 0; iq < 20; ++iq)
        for (int iu = 0; iu < 20; ++iu) {
            const cx q(0.12 + 0.038 * iq, 0.17);
            const cx u(-0.55 + 0.055 * iu, 0.11);
            w_grid = std::max(w_grid, std::abs(omega_dynamical(q, u, p) - omega_closed(u, p)));
        }
    out.cases.push_back(make_case("omega-dynamical-vs-closed", json{{"grid", "20x20"}}, w_grid, omega_tol));

    double w_inv = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double v = resample(rng, [&](Rng& r) {
            const cx u = sample_u(r);
            return std::abs(omega_closed(u, p) * omega_closed(-u, p) - 1.0);
        });
        w_inv = std::max(w_inv, v);
    }
    out.cases.push_back(make_case("omega-inversion", json{{"samples", 50}}, w_inv, omega_tol));
    return out;
}

SuiteResult suite_rmatrix(const Config& cfg) {
    const ModularParams p = cfg.params();
    Rng rng = Rng::for_suite(cfg.seed, "rmatrix");
    const double tol = cfg.tolerance("rmatrix", 1e-9);
    SuiteResult out{"rmatrix", {}, 0.0};

    double w_perm = 0.0;
    for (int i = 0; i < 10; ++i) {
        const cx q = sample_q(rng);
        w_perm = std::max(w_perm, (r_build(q, 0.0, p).m - permutation_vv()).max_abs());
    }
    out.cases.push_back(make_case("permutation-at-u0", json{{"samples", 10}}, w_perm, 1e-12));

    double w_unit = 0.0;
    for (int i = 0; i < 100; ++i)
        w_unit = std::max(w_unit, resample(rng, [&](Rng& r) {
            return unitarity_residual(sample_q(r), sample_u(r), p);
        }));
    out.cases.push_back(make_case("unitarity", json{{"samples", 100}}, w_unit, tol));

    const bool zw = resample(rng, [&](Rng& r) {
        return zero_weight_pattern_ok(r_build(sample_q(r), sample_u(r), p).m);
    });
    out.cases.push_back(make_case("zero-weight-structure", json::object(), zw ? 0.0 : 1.0, 0.5));
    return out;
}

SuiteResult suite_ybe(const Config& cfg) {
    const ModularParams p = cfg.params();
    Rng rng = Rng::for_suite(cfg.seed, "ybe");
    const double tol = cfg.tolerance("ybe", 1e-8);
    SuiteResult out{"ybe", {}, 0.0};

    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
        worst = std::max(worst, resample(rng, [&](Rng& r) {
            return dybe_residual(sample_q(r), sample_u(r), sample_u(r), p);
        }));
    out.cases.push_back(make_case("dybe-sweep", json{{"samples", 100}}, worst, tol));

    const double degen = resample(rng, [&](Rng& r) {
        const cx u = sample_u(r);
        return dybe_residual(sample_q(r), u, u, p);
    });
    out.cases.push_back(make_case("dybe-degenerate-point", json::object(), degen, 1e-10));
    return out;
}

SuiteResult suite_rll(const Config& cfg) {
    Rng rng = Rng::for_suite(cfg.seed, "rll");
    const double tol = cfg.tolerance("rll", 1e-8);
    SuiteResult out{"rll", {}, 0.0};

    for (int n : {1, 2}) {
        const Rep rep = chain_from(cfg, size_t(n));
        double worst = 0.0;
        for (int i = 0; i < 50; ++i)
            worst = std::max(worst, resample(rng, [&](Rng& r) {
                return rll_residual(rep, sample_q(r), sample_u(r), sample_u(r));
            }));
        out.cases.push_back(make_case("exchange-relation-n" + std::to_string(n),
                                      json{{"samples", 50}}, worst, tol));
    }

    for (int n : {1, 2}) {
        const Rep rep = chain_from(cfg, size_t(n));
        std::vector<cx> qs;
        for (int i = 0; i < 20; ++i) qs.push_back(sample_q(rng));
        double worst = 0.0;
        for (int i = 0; i < 2; ++i)
            worst = std::max(worst, resample(rng, [&](Rng& r) {
                return rll_tilde_residual(rep, sample_u(r), sample_u(r), qs);
            }));
        out.cases.push_back(make_case("operator-algebra-form-n" + std::to_string(n),
                                      json{{"q_samples", 20}, {"pairs", 2}}, worst, tol));
    }
    return out;
}

SuiteResult suite_commrels(const Config& cfg) {
    Rng rng = Rng::for_suite(cfg.seed, "commrels");
    const double tol = cfg.tolerance("commrels", 1e-8);
    SuiteResult out{"commrels", {}, 0.0};
    const Rep rep = chain_from(cfg, 2);

    for (int which = 1; which <= 5; ++which) {
        const double worst = resample(rng, [&](Rng& r) {
            const cx u1 = rng.box(-0.6, 0.6, -0.25, 0.25);
            const cx u2 = rng.box(-0.6, 0.6, -0.25, 0.25);
            return commutation_relation_residual(which, rep, u1, u2, cfg.q0, cfg.window_k, r, 10);
        });
        out.cases.push_back(make_case("relation-" + std::to_string(which),
                                      json{{"inputs", 10}}, worst, tol));
    }
    return out;
}

SuiteResult suite_symmetry(const Config& cfg) {
    const ModularParams p = cfg.params();
    Rng rng = Rng::for_suite(cfg.seed, "symmetry");
    const double tol = cfg.tolerance("symmetry", 1e-8);
    const double tol4 = cfg.tolerance("symmetry-n4", 1e-7);
    SuiteResult out{"symmetry", {}, 0.0};
    const Rep rep = chain_from(cfg, 2);

    const std::vector<cx> us{cx(0.11, 0.02), cx(-0.23, 0.05), cx(0.31, -0.04), cx(-0.05, 0.12)};
    for (int n : {2, 3, 4})
        for (int i = 1; i < n; ++i) {
            const double r = phi_symmetry_residual(
                n, std::span<const cx>(us.data(), size_t(n)), i, rep, cfg.q0, 8, rng, 10);
            out.cases.push_back(make_case(
                "transposition-n" + std::to_string(n) + "-i" + std::to_string(i),
                json{{"inputs", 10}}, r, n == 4 ? tol4 : tol));
        }

    const double id_tol = cfg.tolerance("proof-identities", 1e-9);
    for (int which : {1, 2}) {
        double worst = 0.0;
        for (int done = 0; done < 100;) {
            const cx q = rng.box(0.1, 0.9, 0.1, 0.3);
            std::vector<cx> pts;
            for (int k = 0; k < which + 2; ++k) pts.push_back(rng.box(-0.5, 0.5, -0.2, 0.2));
            try {
                worst = std::max(worst, proof_identity_residual(which, q, pts, p));
                ++done;
            } catch (const PoleProximity&) {
            }
        }
        out.cases.push_back(make_case("proof-identity-" + std::to_string(which),
                                      json{{"samples", 100}}, worst, id_tol));
    }

    // leading B1-string coefficient is symbolically the constant 1
    bool leading_ok = true;
    for (int n = 1; n <= 4; ++n) {
        const BethePoly poly = phi_build(n, {us.begin(), us.begin() + n}, p);
        bool found = false;
        for (const BWord& w : poly.words) {
            bool all_b1 = true;
            for (const auto& [g, idx] : w.gens) all_b1 = all_b1 && g == BGen::B1;
            if (all_b1 && int(w.gens.size()) == n) found = w.coeff.is_const_one;
        }
        leading_ok = leading_ok && found;
    }
    out.cases.push_back(
        make_case("leading-string-coefficient", json{{"n_max", 4}}, leading_ok ? 0.0 : 1.0, 0.5));
    return out;
}

SuiteResult suite_transfer(const Config& cfg) {
    Rng rng = Rng::for_suite(cfg.seed, "transfer");
    const double tol = cfg.tolerance("transfer", 1e-8);
    SuiteResult out{"transfer", {}, 0.0};

    for (int n : {2, 3}) {
        const Rep rep = chain_from(cfg, size_t(n));
        double worst = 0.0;
        json per_pair = json::array();
        for (int i = 0; i < 20; ++i) {
            const double res = resample(rng, [&](Rng& r) {
                return commutator_residual(rep, sample_u(r), sample_u(r), cfg.q0, 8, r, 10);
            });
            per_pair.push_back(res);
            worst = std::max(worst, res);
        }
        out.cases.push_back(make_case("commutator-n" + std::to_string(n),
                                      json{{"pairs", 20}, {"inputs", 10}, {"residuals", per_pair}},
                                      worst, tol));
    }

    {
        // informative only: no commutation is claimed off the zero-weight
        // subspace, record the generic size of the defect
        const Rep rep = chain_from(cfg, 2);
        const double off = resample(rng, [&](Rng& r) {
            return commutator_residual_weighted(rep, sample_u(r), sample_u(r), cfg.q0, 8, 1, r, 3);
        });
        out.cases.push_back(
            make_case("commutator-weight1-informative", json{{"weight", 1}}, off, 1e300));
    }

    {
        const Rep rep = chain_from(cfg, 2);
        const cx u = sample_u(rng);
        const TransferEvaluated t(rep, u, cfg.q0, -8, 8);
        double off = 0.0;
        for (int m = -2; m <= 2; ++m) {
            const LatticeFn f = random_lattice_fn(rep, cfg.q0, 8, m, rng);
            const LatticeFn g = t.apply(f);
            for (int k = g.lo; k <= g.hi; ++k)
                for (int j = 0; j < rep.w_dim(); ++j)
                    if (rep.weights()[j] != m) off = std::max(off, std::abs(g.at(k)[j]));
        }
        out.cases.push_back(
            make_case("weight-preservation", json{{"weights", "-2..2"}}, off, 1e-12));
    }
    return out;
}

SuiteResult suite_bethe_n1(const Config& cfg) {
    Rng rng = Rng::for_suite(cfg.seed, "bethe-n1");
    const double tol = cfg.tolerance("bethe-n1", 1e-6);
    SuiteResult out{"bethe-n1", {}, 0.0};

    const Rep rep = chain_from(cfg, 1);
    const BetheSolution sol = solve_bethe(1, rep, cfg.q0, cfg.window_k);
    std::vector<cx> samples;
    for (int i = 0; i < 5; ++i) samples.push_back(sample_u(rng));
    const EigencheckResult ec = eigencheck(rep, sol.vac, sol.roots, samples);

    const json root_param{{"root", {sol.roots.roots[0].real(), sol.roots.roots[0].imag()}}};
    out.cases.push_back(make_case("solver-converged", root_param, sol.roots.residual, 1e-10));
    out.cases.push_back(make_case("eigencheck", json{{"spectral_samples", 5}}, ec.residual, tol));
    out.cases.push_back(make_case("eigenvalue-q-spread", json::object(), ec.lambda_spread, tol));
    return out;
}

SuiteResult suite_bethe_n2(const Config& cfg) {
    const ModularParams p = cfg.params();
    Rng rng = Rng::for_suite(cfg.seed, "bethe-n2");
    const double tol = cfg.tolerance("bethe-n2", 1e-6);
    SuiteResult out{"bethe-n2", {}, 0.0};

    const Rep rep = chain_from(cfg, 2);
    const BetheSolution sol = solve_bethe(2, rep, cfg.q0, cfg.window_k);

    const auto [r1, r2] = bethe_residual_n2(sol.roots.roots[0], sol.roots.roots[1], 0, sol.vac, p);
    const json roots_param{
        {"roots",
         {{sol.roots.roots[0].real(), sol.roots.roots[0].imag()},
          {sol.roots.roots[1].real(), sol.roots.roots[1].imag()}}}};
    out.cases.push_back(make_case("bethe-equations-at-base", roots_param,
                                  std::max(std::abs(r1), std::abs(r2)), 1e-10));

    std::vector<cx> samples;
    for (int i = 0; i < 5; ++i) samples.push_back(sample_u(rng));
    const EigencheckResult ec = eigencheck(rep, sol.vac, sol.roots, samples);
    out.cases.push_back(make_case("eigencheck", json{{"spectral_samples", 5}}, ec.residual, tol));
    out.cases.push_back(make_case("eigenvalue-q-spread", json::object(), ec.lambda_spread, tol));
    return out;
}

} // namespace

const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> names{"theta",    "rmatrix",  "ybe",
                                                "rll",      "commrels", "symmetry",
                                                "transfer", "bethe-n1", "bethe-n2"};
    return names;
}

SuiteResult run_suite(const std::string& name, const Config& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult result;
    if (name == "theta") result = suite_theta(cfg);
    else if (name == "rmatrix") result = suite_rmatrix(cfg);
    else if (name == "ybe") result = suite_ybe(cfg);
    else if (name == "rll") result = suite_rll(cfg);
    else if (name == "commrels") result = suite_commrels(cfg);
    else if (name == "symmetry") result = suite_symmetry(cfg);
    else if (name == "transfer") result = suite_transfer(cfg);
    else if (name == "bethe-n1") result = suite_bethe_n1(cfg);
    else if (name == "bethe-n2") result = suite_bethe_n2(cfg);
    else throw ConfigError("unknown suite: " + name);
    const auto t1 = std::chrono::steady_clock::now();
    result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    return result;
}

} // namespace elliptika
