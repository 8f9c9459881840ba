#include "doctest.h"

#include <cmath>

#include "elliptika/bethe.hpp"
#include "elliptika/errors.hpp"
#include "elliptika/rng.hpp"
#include "elliptika/theta.hpp"
#include "elliptika/transfer.hpp"

using namespace elliptika;

namespace {
const ModularParams P = ModularParams::desk_defaults();
const cx kQ0(0.37, 0.21);

Rep two_site() { return chain_rep(std::vector<cx>{cx(0.0), cx(0.17)}, P); }

const std::vector<cx> kUs{cx(0.11, 0.02), cx(-0.23, 0.05), cx(0.31, -0.04), cx(-0.05, 0.12)};

bool is_b1_string(const BWord& w) {
    for (const auto& [g, i] : w.gens)
        if (g != BGen::B1) return false;
    return true;
}
} // namespace

TEST_CASE("creation operator word growth and leading string") {
    // counts follow W(n) = W(n-1) + (n-1) W(n-2)
    const int expect[] = {1, 1, 2, 4, 10};
    for (int n = 0; n <= 4; ++n) {
        std::vector<cx> us(kUs.begin(), kUs.begin() + n);
        const BethePoly poly = phi_build(n, us, P);
        CHECK(int(poly.words.size()) == expect[n]);
        // exactly one all-B1 word, with symbolic coefficient 1
        int strings = 0;
        for (const BWord& w : poly.words)
            if (is_b1_string(w) && int(w.gens.size()) == n) {
                ++strings;
                CHECK(w.coeff.is_const_one);
                CHECK(std::abs(w.coeff.f(cx(0.4, 0.2)) - 1.0) == 0.0);
            }
        if (n >= 1) CHECK(strings == 1);
    }
}

TEST_CASE("coincident spectral points are rejected") {
    CHECK_THROWS_AS(phi_build(2, {cx(0.1), cx(0.1)}, P), PoleProximity);
}

TEST_CASE("two- and three-magnon coefficients match their closed forms") {
    const cx q(0.41, 0.23);
    auto om = [&](cx d) { return omega_closed(d, P); };
    auto y = [&](cx qq, cx d) { return coeff_y(qq, d, P); };
    auto z = [&](cx qq, cx d) { return coeff_z(qq, d, P); };
    const cx s = P.step();

    {
        const BethePoly p2 = phi_build(2, {kUs[0], kUs[1]}, P);
        for (const BWord& w : p2.words) {
            if (is_b1_string(w)) continue;
            REQUIRE(w.gens.size() == 2);
            CHECK(w.gens[0].first == BGen::B2);
            CHECK(w.gens[1].first == BGen::A1);
            CHECK(std::abs(w.coeff.f(q) - (-1.0 / y(q, kUs[0] - kUs[1]))) < 1e-14);
        }
    }
    {
        const BethePoly p3 = phi_build(3, {kUs[0], kUs[1], kUs[2]}, P);
        int seen = 0;
        for (const BWord& w : p3.words) {
            if (is_b1_string(w)) continue;
            REQUIRE(w.gens.size() == 3);
            const auto g0 = w.gens[0], g1 = w.gens[1];
            cx expect;
            if (g0 == std::pair{BGen::B1, 0} && g1 == std::pair{BGen::B2, 1}) {
                expect = -1.0 / y(q, kUs[1] - kUs[2]); // B1(u1) B2(u2) A1(u3)
            } else if (g1 == std::pair{BGen::B1, 2}) {
                expect = -z(q + s, kUs[2] - kUs[1]) / y(q, kUs[0] - kUs[1]); // B2(u1) B1(u3) A1(u2)
            } else {
                expect = -om(kUs[2] - kUs[1]) * z(q + s, kUs[1] - kUs[2])
                       / y(q, kUs[0] - kUs[2]); // B2(u1) B1(u2) A1(u3)
            }
            CHECK(std::abs(w.coeff.f(q) - expect) < 1e-12);
            ++seen;
        }
        CHECK(seen == 3);
    }
}

TEST_CASE("four-magnon double-expansion sector") {
    // Expanding the recurrence twice by hand gives, for the words starting
    // B2(u1)B2(u2):
    //   A1(u3)A1(u4): om_42 om_43 z_24(q+2eta) z_34(q+2eta) / (y_14(q) y_23(q+2eta))
    //   A1(u4)A1(u3): om_32 z_23(q+2eta) z_43(q+2eta) / (y_13(q) y_24(q+2eta))
    // (signs +: two nested minus signs) plus one word B2(u1)B2(u3)A1(u4)A1(u2)
    // from the branch that removes u2 first.
    const BethePoly p4 = phi_build(4, kUs, P);
    auto om = [&](cx d) { return omega_closed(d, P); };
    auto y = [&](cx qq, cx d) { return coeff_y(qq, d, P); };
    auto z = [&](cx qq, cx d) { return coeff_z(qq, d, P); };
    const cx s = P.step();

    int b2b2 = 0;
    for (const BWord& w : p4.words) {
        int nb2 = 0;
        for (auto& [g, i] : w.gens) nb2 += g == BGen::B2;
        if (nb2 != 2) continue;
        ++b2b2;
        for (const cx q : {cx(0.41, 0.23), cx(0.12, 0.31)}) {
            cx expect;
            if (w.gens[1] == std::pair{BGen::B2, 2}) {
                // B2(u1) B2(u3) A1(u4) A1(u2)
                expect = z(q + s, kUs[2] - kUs[1]) * z(q + s, kUs[3] - kUs[1])
                       / (y(q, kUs[0] - kUs[1]) * y(q + s, kUs[2] - kUs[3]));
            } else if (w.gens[2] == std::pair{BGen::A1, 2}) {
                // B2(u1) B2(u2) A1(u3) A1(u4)
                expect = om(kUs[3] - kUs[1]) * om(kUs[3] - kUs[2]) * z(q + s, kUs[1] - kUs[3])
                       * z(q + s, kUs[2] - kUs[3])
                       / (y(q, kUs[0] - kUs[3]) * y(q + s, kUs[1] - kUs[2]));
            } else {
                // B2(u1) B2(u2) A1(u4) A1(u3)
                expect = om(kUs[2] - kUs[1]) * z(q + s, kUs[1] - kUs[2])
                       * z(q + s, kUs[3] - kUs[2])
                       / (y(q, kUs[0] - kUs[2]) * y(q + s, kUs[1] - kUs[3]));
            }
            CHECK(std::abs(w.coeff.f(q) - expect) < 1e-11);
        }
    }
    CHECK(b2b2 == 3);
}

TEST_CASE("diagonal generators at distinct points commute") {
    const Rep rep = two_site();
    Rng rng(701);
    const cx u1(0.21, 0.06), u2(-0.13, 0.11);
    const DynOp comm =
        dynop_sub(dynop_mul(gen_op(rep, Gen::A1, u1), gen_op(rep, Gen::A1, u2)),
                  dynop_mul(gen_op(rep, Gen::A1, u2), gen_op(rep, Gen::A1, u1)));
    const LatticeFn f = random_lattice_fn(rep, kQ0, 8, std::nullopt, rng);
    CHECK(dynop_apply(comm, f).sup_norm() < 1e-12);
}

TEST_CASE("phi evaluation basics") {
    const Rep rep = two_site();
    const std::vector<cx> qs{cx(0.3, 0.2), cx(0.55, 0.12)};

    // Phi_1 is exactly B1(u1).
    const DynOp phi1 = phi_eval(phi_build(1, {kUs[0]}, P), rep);
    const DynOp b1 = gen_op(rep, Gen::B1, kUs[0]);
    const DynOp diff = dynop_sub(phi1, b1);
    double worst = 0.0;
    for (const auto& [s, c] : diff.terms)
        for (cx q : qs) worst = std::max(worst, c(q).max_abs());
    CHECK(worst < 1e-14);

    // Weight grading: Phi_n lowers by n.
    for (int n = 1; n <= 4; ++n) {
        std::vector<cx> us(kUs.begin(), kUs.begin() + n);
        const DynOp op = phi_eval(phi_build(n, us, P), rep);
        CHECK(dynop_weight(op, rep.weights(), qs) == -n);
    }
}

TEST_CASE("two-magnon state against vacuum-eigenvalue substitution") {
    const Rep rep = two_site();
    const Vacuum vac = pseudovacuum(rep, kQ0, 8); // f == 1
    const LatticeFn omega = vacuum_state(rep, vac);
    const cx u1 = kUs[0], u2 = kUs[1];

    const LatticeFn lhs = dynop_apply(phi_eval(phi_build(2, {u1, u2}, P), rep), omega);
    const LatticeFn b1b1 = dynop_apply(
        dynop_mul(gen_op(rep, Gen::B1, u1), gen_op(rep, Gen::B1, u2)), omega);
    const LatticeFn b2 = dynop_apply(gen_op(rep, Gen::B2, u1), omega);
    const cx a1u2 = vac.a1(kQ0, u2);

    double worst = 0.0;
    const int lo = std::max({lhs.lo, b1b1.lo, b2.lo});
    const int hi = std::min({lhs.hi, b1b1.hi, b2.hi});
    for (int k = lo; k <= hi; ++k) {
        const cx q = lhs.point(k);
        for (int j = 0; j < rep.w_dim(); ++j) {
            const cx expect = b1b1.at(k)[j] - a1u2 / coeff_y(q, u1 - u2, P) * b2.at(k)[j];
            worst = std::max(worst, std::abs(lhs.at(k)[j] - expect));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("exchange relations in the A1/B1/B2 sector") {
    const Rep rep = two_site();
    Rng rng(702);
    for (int which = 1; which <= 5; ++which) {
        double worst = 0.0;
        int done = 0;
        for (int tries = 0; done < 3 && tries < 100; ++tries) {
            const cx u1 = rng.box(-0.6, 0.6, -0.25, 0.25);
            const cx u2 = rng.box(-0.6, 0.6, -0.25, 0.25);
            try {
                worst = std::max(worst,
                                 commutation_relation_residual(which, rep, u1, u2, kQ0, 8, rng, 4));
                ++done;
            } catch (const PoleProximity&) {
            }
        }
        REQUIRE(done == 3);
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("proof identities over 100 samples") {
    Rng rng(703);
    double w1 = 0.0, w2 = 0.0;
    int done1 = 0, done2 = 0;
    while (done1 < 100) {
        const cx q = rng.box(0.1, 0.9, 0.1, 0.3);
        std::vector<cx> us{rng.box(-0.5, 0.5, -0.2, 0.2), rng.box(-0.5, 0.5, -0.2, 0.2),
                           rng.box(-0.5, 0.5, -0.2, 0.2)};
        try {
            w1 = std::max(w1, proof_identity_residual(1, q, us, P));
            ++done1;
        } catch (const PoleProximity&) {
        }
    }
    while (done2 < 100) {
        const cx q = rng.box(0.1, 0.9, 0.1, 0.3);
        std::vector<cx> us{rng.box(-0.5, 0.5, -0.2, 0.2), rng.box(-0.5, 0.5, -0.2, 0.2),
                           rng.box(-0.5, 0.5, -0.2, 0.2), rng.box(-0.5, 0.5, -0.2, 0.2)};
        try {
            w2 = std::max(w2, proof_identity_residual(2, q, us, P));
            ++done2;
        } catch (const PoleProximity&) {
        }
    }
    CHECK(w1 < 1e-9);
    CHECK(w2 < 1e-9);
}

TEST_CASE("proof identity is stable under relabeling") {
    // omega(u) omega(-u) = 1 makes the identity insensitive to which of the
    // permuted labelings is used.
    const cx q(0.43, 0.19);
    const std::vector<cx> us{cx(0.21, 0.05), cx(-0.17, 0.08), cx(0.33, -0.06)};
    const std::vector<cx> perm{us[0], us[2], us[1]};
    CHECK(proof_identity_residual(1, q, us, P) < 1e-9);
    CHECK(proof_identity_residual(1, q, perm, P) < 1e-9);
}

TEST_CASE("creation operator symmetry under adjacent transpositions") {
    const Rep rep = two_site();
    Rng rng(704);
    for (int n : {2, 3}) {
        for (int i = 1; i < n; ++i) {
            const double r = phi_symmetry_residual(
                n, std::span<const cx>(kUs.data(), size_t(n)), i, rep, kQ0, 8, rng, 5);
            CHECK(r < 1e-8);
        }
    }
    for (int i = 1; i < 4; ++i) {
        const double r = phi_symmetry_residual(4, kUs, i, rep, kQ0, 8, rng, 5);
        CHECK(r < 1e-7);
    }
}

TEST_CASE("gauge function propagation") {
    const cx step = P.step();

    // rhs == 1 propagates to the constant function.
    const LatticeFn unit = solve_f_lattice([](cx) { return cx(1.0); }, kQ0, step, 10);
    for (int k = -10; k <= 10; ++k) CHECK(std::abs(unit.at(k)[0] - 1.0) == 0.0);

    // ratio functional equation, with the inverted two-magnon q-factor
    auto rhs = [&](cx q) {
        const cx e = P.eta;
        return theta(q - e, P) * theta(q - 5.0 * e, P)
             / (theta(q - 3.0 * e, P) * theta(q - 3.0 * e, P));
    };
    const LatticeFn f = solve_f_lattice(rhs, kQ0, step, 10);
    CHECK(std::abs(f.at(0)[0] - 1.0) == 0.0);
    double worst = 0.0;
    for (int k = -9; k <= 10; ++k) {
        const cx q = f.point(k);
        worst = std::max(worst, std::abs(f.at(k)[0] / f.at(k - 1)[0] - rhs(q)));
    }
    CHECK(worst < 1e-12);

    // forwards then backwards returns to 1 by telescoping
    CHECK(std::abs(f.at(0)[0] - 1.0) < 1e-12);
}

TEST_CASE("two-magnon condition: swap symmetry and the role of the gauge") {
    const Rep rep = two_site();
    const Vacuum flat = pseudovacuum(rep, kQ0, 10); // f == 1
    const cx u1(0.21, 0.07), u2(-0.14, 0.1);

    const auto [r1, r2] = bethe_residual_n2(u1, u2, 0, flat, P);
    const auto [s1, s2] = bethe_residual_n2(u2, u1, 0, flat, P);
    CHECK(std::abs(r1 - s2) < 1e-13);
    CHECK(std::abs(r2 - s1) < 1e-13);

    // With f == 1 the condition drifts with q across the lattice.
    double drift = 0.0;
    for (int k = -4; k <= 4; ++k) {
        const auto [t1, t2] = bethe_residual_n2(u1, u2, k, flat, P);
        drift = std::max(drift, std::abs(t1 - r1));
    }
    CHECK(drift > 1e-2);
}

TEST_CASE("one-magnon solve and eigencheck") {
    const Rep rep = chain_rep(std::vector<cx>{cx(0.0)}, P);
    const BetheSolution sol = solve_bethe(1, rep, kQ0, 12);
    CHECK(sol.roots.residual < 1e-10);

    const std::vector<cx> samples{cx(0.21, 0.04), cx(-0.33, 0.11), cx(0.42, -0.07),
                                  cx(0.05, 0.19), cx(-0.11, -0.02)};
    const EigencheckResult ec = eigencheck(rep, sol.vac, sol.roots, samples);
    CHECK(ec.residual < 1e-6);
    CHECK(ec.lambda_spread < 1e-6);

    // The eigenvalue agrees with the wanted-term closed form
    //   z_1u(q) a1(u) f(q-2eta)/f(q) + z_u1(q)/omega_u1 a2(u,q)
    //   + beta_u1(eta,-q)/gamma_u1(q,-q) a3(u,q) f(q+2eta)/f(q).
    const cx u1 = sol.roots.roots[0];
    const cx q = sol.vac.f.point(0);
    const cx fm = sol.vac.f.at(-1)[0] / sol.vac.f.at(0)[0];
    const cx fp = sol.vac.f.at(1)[0] / sol.vac.f.at(0)[0];
    double worst = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const cx u = samples[i];
        const cx lam = coeff_z(q, u1 - u, P) * sol.vac.a1(q, u) * fm
                     + coeff_z(q, u - u1, P) / omega_closed(u - u1, P) * sol.vac.a2(q, u)
                     + coeff_beta(P.eta, -q, u - u1, P) / coeff_gamma(q, -q, u - u1, P)
                           * sol.vac.a3(q, u) * fp;
        worst = std::max(worst, std::abs(lam - ec.lambdas[i]));
    }
    CHECK(worst < 1e-10);

    // Non-degeneracy: moving the root off its gauge breaks the eigenproperty.
    BetheRoots off = sol.roots;
    off.roots[0] += 0.1;
    CHECK(eigencheck(rep, sol.vac, off, samples).residual > 1e-3);
}

TEST_CASE("two-magnon solve and eigencheck") {
    const Rep rep = two_site();
    const BetheSolution sol = solve_bethe(2, rep, kQ0, 12);
    CHECK(sol.roots.residual < 1e-10);

    // Condition is satisfied across the whole window, not just the base point.
    double across = 0.0;
    for (int k = -6; k <= 6; ++k) {
        const auto [r1, r2] =
            bethe_residual_n2(sol.roots.roots[0], sol.roots.roots[1], k, sol.vac, P);
        across = std::max(across, std::max(std::abs(r1), std::abs(r2)));
    }
    CHECK(across < 1e-10);

    const std::vector<cx> samples{cx(0.21, 0.04), cx(-0.33, 0.11), cx(0.42, -0.07),
                                  cx(0.05, 0.19), cx(-0.11, -0.02)};
    const EigencheckResult ec = eigencheck(rep, sol.vac, sol.roots, samples);
    CHECK(ec.residual < 1e-6);
    CHECK(ec.lambda_spread < 1e-6);

    BetheRoots off = sol.roots;
    off.roots[0] += 0.1;
    CHECK(eigencheck(rep, sol.vac, off, samples).residual > 1e-3);
}
