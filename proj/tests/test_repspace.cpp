#include "doctest.h"

#include <cmath>

#include "elliptika/coeffs.hpp"
#include "elliptika/errors.hpp"
#include "elliptika/repspace.hpp"
#include "elliptika/rng.hpp"

using namespace elliptika;

namespace {
const ModularParams P = ModularParams::desk_defaults();
const cx kQ0(0.37, 0.21);

cx sample_q(Rng& rng) { return rng.box(0.1, 0.9, 0.05, 0.35); }
cx sample_u(Rng& rng) { return rng.box(-0.8, 0.8, -0.3, 0.3); }

template <typename F>
auto resample(Rng& rng, F f) {
    for (int tries = 0; tries < 100; ++tries) {
        try {
            return f(rng);
        } catch (const PoleProximity&) {
        }
    }
    throw SolverError("resample cap exceeded");
}

Rep two_site() { return chain_rep(std::vector<cx>{cx(0.0), cx(0.17)}, P); }
} // namespace

TEST_CASE("fundamental representation basics") {
    const cx z(0.11, 0.0);
    const Rep rep = fundamental_rep(z, P);
    CHECK(rep.w_dim() == 3);
    CHECK(rep.weights()[0] == 1);
    CHECK(rep.weights()[1] == 0);
    CHECK(rep.weights()[2] == -1);

    // At the evaluation point the Lax operator is the permutation.
    Rng rng(501);
    const cx q = sample_q(rng);
    CHECK((rep.lax(q, z) - permutation_vv()).max_abs() < 1e-12);
    CHECK(lax_zero_weight_ok(rep, q, sample_u(rng)));
}

TEST_CASE("fundamental representation satisfies the exchange relation") {
    const Rep rep = fundamental_rep(cx(0.0), P);
    Rng rng(502);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        worst = std::max(worst, resample(rng, [&](Rng& r) {
            return rll_residual(rep, sample_q(r), sample_u(r), sample_u(r));
        }));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("two-site tensor representation satisfies the exchange relation") {
    const Rep rep = two_site();
    CHECK(rep.w_dim() == 9);
    Rng rng(503);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        worst = std::max(worst, resample(rng, [&](Rng& r) {
            return rll_residual(rep, sample_q(r), sample_u(r), sample_u(r));
        }));
    }
    CHECK(worst < 1e-8);
    CHECK(lax_zero_weight_ok(rep, cx(0.33, 0.18), cx(0.21, 0.1)));
}

TEST_CASE("tensor product is associative") {
    const Rep a = fundamental_rep(cx(0.0), P);
    const Rep b = fundamental_rep(cx(0.17), P);
    const Rep c = fundamental_rep(cx(0.29), P);
    const Rep left = tensor_rep(tensor_rep(a, b), c);
    const Rep right = tensor_rep(a, tensor_rep(b, c));
    Rng rng(504);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const cx q = sample_q(rng), u = sample_u(rng);
        worst = std::max(worst, (left.lax(q, u) - right.lax(q, u)).max_abs());
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("generator weights and shifts") {
    const Rep rep = two_site();
    const cx u(0.23, 0.11);
    const std::vector<cx> qs{cx(0.3, 0.2), cx(0.55, 0.12)};

    CHECK(dynop_weight(gen_op(rep, Gen::B1, u), rep.weights(), qs) == -1);
    CHECK(dynop_weight(gen_op(rep, Gen::B2, u), rep.weights(), qs) == -2);
    CHECK(dynop_weight(gen_op(rep, Gen::B3, u), rep.weights(), qs) == -1);
    CHECK(dynop_weight(gen_op(rep, Gen::A1, u), rep.weights(), qs) == 0);
    CHECK(dynop_weight(gen_op(rep, Gen::A2, u), rep.weights(), qs) == 0);
    CHECK(dynop_weight(gen_op(rep, Gen::A3, u), rep.weights(), qs) == 0);
    CHECK(dynop_weight(gen_op(rep, Gen::C1, u), rep.weights(), qs) == 1);
    CHECK(dynop_weight(gen_op(rep, Gen::C2, u), rep.weights(), qs) == 2);
    CHECK(dynop_weight(gen_op(rep, Gen::C3, u), rep.weights(), qs) == 1);

    // Column weights set the shifts: A2 is shift-free, A1 shifts by +1, A3 by -1.
    CHECK(gen_op(rep, Gen::A2, u).terms.count(0) == 1);
    CHECK(gen_op(rep, Gen::A1, u).terms.count(1) == 1);
    CHECK(gen_op(rep, Gen::A3, u).terms.count(-1) == 1);
}

TEST_CASE("operator-algebra exchange relation, one and two sites") {
    Rng rng(505);
    const std::vector<cx> qs{cx(0.31, 0.17), cx(0.52, 0.23), cx(0.18, 0.3)};
    for (int sites : {1, 2}) {
        const Rep rep = sites == 1 ? fundamental_rep(cx(0.0), P) : two_site();
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            worst = std::max(worst, resample(rng, [&](Rng& r) {
                return rll_tilde_residual(rep, sample_u(r), sample_u(r), qs);
            }));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("pseudovacuum is annihilated by the raising operators") {
    const Rep rep = two_site();
    const Vacuum vac = pseudovacuum(rep, kQ0, 8);
    const LatticeFn omega = vacuum_state(rep, vac);
    Rng rng(506);
    double worst = 0.0;
    for (Gen g : {Gen::C1, Gen::C2, Gen::C3}) {
        for (int i = 0; i < 4; ++i) {
            const cx u = sample_u(rng);
            worst = std::max(worst, dynop_apply(gen_op(rep, g, u), omega).sup_norm());
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("vacuum eigenvalues: one site") {
    const cx z(0.0);
    const Rep rep = fundamental_rep(z, P);
    const Vacuum vac = pseudovacuum(rep, kQ0, 8);
    Rng rng(507);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const cx q = sample_q(rng), u = sample_u(rng);
        worst = std::max(worst, std::abs(vac.a1(q, u) - coeff_g(u - z, P)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("vacuum eigenvalues: two sites, a1 is a product and q-free") {
    const Rep rep = two_site();
    const Vacuum vac = pseudovacuum(rep, kQ0, 8);
    Rng rng(508);
    double worst_prod = 0.0, worst_qfree = 0.0;
    const cx qref(0.41, 0.19);
    for (int i = 0; i < 10; ++i) {
        const cx q = sample_q(rng), u = sample_u(rng);
        const cx expect = coeff_g(u - rep.sites()[0], P) * coeff_g(u - rep.sites()[1], P);
        worst_prod = std::max(worst_prod, std::abs(vac.a1(q, u) - expect));
        worst_qfree = std::max(worst_qfree, std::abs(vac.a1(q, u) - vac.a1(qref, u)));
    }
    CHECK(worst_prod < 1e-10);
    CHECK(worst_qfree < 1e-10);
}

TEST_CASE("vacuum eigenvalue relations with a nontrivial gauge function") {
    const Rep rep = two_site();
    // f(q) = exp(0.3 q): smooth, never zero, clean ratios.
    LatticeFn f = LatticeFn::zeros(kQ0, P.step(), 1, -8, 8);
    for (int k = -8; k <= 8; ++k) f.at(k)[0] = std::exp(0.3 * f.point(k));
    const Vacuum vac = pseudovacuum(rep, kQ0, 8, &f);
    const LatticeFn omega = vacuum_state(rep, vac);

    Rng rng(509);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const cx u = sample_u(rng);
        // A1 ratio f(q-2eta)/f(q), A2 ratio 1, A3 ratio f(q+2eta)/f(q).
        const LatticeFn a1f = dynop_apply(gen_op(rep, Gen::A1, u), omega);
        const LatticeFn a2f = dynop_apply(gen_op(rep, Gen::A2, u), omega);
        const LatticeFn a3f = dynop_apply(gen_op(rep, Gen::A3, u), omega);
        for (int k = -7; k <= 7; ++k) {
            const cx q = omega.point(k);
            const int zi = vac.zero_index;
            const cx fq = f.at(k)[0];
            worst = std::max(worst,
                std::abs(a1f.at(k)[zi] - vac.a1(q, u) * f.at(k - 1)[0] / fq * omega.at(k)[zi]));
            worst = std::max(worst, std::abs(a2f.at(k)[zi] - vac.a2(q, u) * omega.at(k)[zi]));
            worst = std::max(worst,
                std::abs(a3f.at(k)[zi] - vac.a3(q, u) * f.at(k + 1)[0] / fq * omega.at(k)[zi]));
            // Off-vacuum components must stay empty.
            for (int j = 0; j < rep.w_dim(); ++j)
                if (j != zi)
                    worst = std::max(worst, std::abs(a1f.at(k)[j]) + std::abs(a2f.at(k)[j])
                                            + std::abs(a3f.at(k)[j]));
        }
    }
    CHECK(worst < 1e-9);
}
