#include "doctest.h"

#include <cmath>

#include "elliptika/dynalg.hpp"
#include "elliptika/errors.hpp"
#include "elliptika/modular.hpp"
#include "elliptika/rng.hpp"

using namespace elliptika;

namespace {
const ModularParams P = ModularParams::desk_defaults();
const cx kStep = P.step();

DynOp random_single(Rng& rng, int dim, int shift) {
    // Random affine-in-q coefficient matrix; enough structure to catch
    // composition-rule mistakes.
    std::vector<cx> a(dim * dim), b(dim * dim);
    for (auto& v : a) v = rng.box(-1.0, 1.0, -1.0, 1.0);
    for (auto& v : b) v = rng.box(-1.0, 1.0, -1.0, 1.0);
    return DynOp::single(dim, kStep, shift, [dim, a, b](cx q) {
        CMat m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = a[i * dim + j] + q * b[i * dim + j];
        return m;
    });
}

LatticeFn random_fn(Rng& rng, int dim, cx q0, int K) {
    LatticeFn f = LatticeFn::zeros(q0, kStep, dim, -K, K);
    for (auto& v : f.vals)
        for (auto& x : v) x = rng.box(-1.0, 1.0, -1.0, 1.0);
    return f;
}

double op_distance(const DynOp& a, const DynOp& b, const std::vector<cx>& qs) {
    const DynOp d = dynop_sub(a, b);
    double worst = 0.0;
    for (const auto& [s, c] : d.terms)
        for (cx q : qs) worst = std::max(worst, c(q).max_abs());
    return worst;
}
} // namespace

TEST_CASE("addition merges coefficients at equal shifts") {
    Rng rng(401);
    const DynOp a = random_single(rng, 2, 1);
    const DynOp b = random_single(rng, 2, 1);
    const DynOp s = dynop_add(a, b);
    CHECK(s.terms.size() == 1);
    const cx q(0.3, 0.2);
    CHECK((s.terms.at(1)(q) - (a.terms.at(1)(q) + b.terms.at(1)(q))).max_abs() == 0.0);
}

TEST_CASE("adding zero is neutral") {
    Rng rng(402);
    const DynOp a = random_single(rng, 3, -1);
    const DynOp s = dynop_add(a, DynOp::zero(3, kStep));
    CHECK(op_distance(s, a, {cx(0.1, 0.1), cx(0.7, 0.3)}) == 0.0);
}

TEST_CASE("product composes shifts and drags arguments") {
    // (F S)(G S^-1) has shift 0 and coefficient q -> F(q) G(q - 2*eta).
    Rng rng(403);
    const DynOp a = random_single(rng, 2, 1);
    const DynOp b = random_single(rng, 2, -1);
    const DynOp prod = dynop_mul(a, b);
    REQUIRE(prod.terms.size() == 1);
    REQUIRE(prod.terms.count(0) == 1);
    const cx q(0.4, 0.15);
    const CMat expect = a.terms.at(1)(q) * b.terms.at(-1)(q - kStep);
    CHECK((prod.terms.at(0)(q) - expect).max_abs() < 1e-15);
}

TEST_CASE("identity is a two-sided unit") {
    Rng rng(404);
    const DynOp a = random_single(rng, 3, 2);
    const DynOp id = DynOp::identity(3, kStep);
    const std::vector<cx> qs{cx(0.2, 0.1), cx(0.5, 0.25)};
    CHECK(op_distance(dynop_mul(id, a), a, qs) < 1e-15);
    CHECK(op_distance(dynop_mul(a, id), a, qs) < 1e-15);
}

TEST_CASE("associativity on three random single-term operators") {
    Rng rng(405);
    const DynOp a = random_single(rng, 2, 1);
    const DynOp b = random_single(rng, 2, -2);
    const DynOp c = random_single(rng, 2, 1);
    const std::vector<cx> qs{cx(0.15, 0.2), cx(0.6, 0.1), cx(-0.3, 0.3)};
    CHECK(op_distance(dynop_mul(dynop_mul(a, b), c), dynop_mul(a, dynop_mul(b, c)), qs) < 1e-12);
}

TEST_CASE("shift overflow is caught") {
    Rng rng(406);
    const DynOp a = random_single(rng, 2, 5);
    const DynOp b = random_single(rng, 2, 4);
    CHECK_THROWS_AS(dynop_mul(a, b), ShiftOverflow);
}

TEST_CASE("apply: identity leaves function and window unchanged") {
    Rng rng(407);
    const LatticeFn f = random_fn(rng, 3, cx(0.37, 0.21), 6);
    const LatticeFn g = dynop_apply(DynOp::identity(3, kStep), f);
    CHECK(g.lo == f.lo);
    CHECK(g.hi == f.hi);
    double worst = 0.0;
    for (int k = g.lo; k <= g.hi; ++k)
        for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(g.at(k)[i] - f.at(k)[i]));
    CHECK(worst == 0.0);
}

TEST_CASE("apply shrinks the window by the shift span") {
    Rng rng(408);
    const LatticeFn f = random_fn(rng, 2, cx(0.37, 0.21), 5);
    DynOp op = dynop_add(random_single(rng, 2, 2), random_single(rng, 2, -1));
    const LatticeFn g = dynop_apply(op, f);
    CHECK(g.lo == -5 + 2);
    CHECK(g.hi == 5 - 1);
}

TEST_CASE("window underflow is caught") {
    Rng rng(409);
    const LatticeFn f = random_fn(rng, 2, cx(0.37, 0.21), 1);
    const DynOp op = dynop_add(random_single(rng, 2, 3), random_single(rng, 2, -3));
    CHECK_THROWS_AS(dynop_apply(op, f), WindowUnderflow);
}

TEST_CASE("window bookkeeping: sequential application equals product") {
    Rng rng(410);
    const LatticeFn f = random_fn(rng, 2, cx(0.37, 0.21), 8);
    const DynOp a = dynop_add(random_single(rng, 2, 1), random_single(rng, 2, 0));
    const DynOp b = dynop_add(random_single(rng, 2, -1), random_single(rng, 2, 2));
    const LatticeFn seq = dynop_apply(a, dynop_apply(b, f));
    const LatticeFn prod = dynop_apply(dynop_mul(a, b), f);
    CHECK(seq.lo == prod.lo);
    CHECK(seq.hi == prod.hi);
    double worst = 0.0;
    for (int k = seq.lo; k <= seq.hi; ++k)
        for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(seq.at(k)[i] - prod.at(k)[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("dynop_weight classifies graded and mixed operators") {
    const std::vector<int> wts{1, 0, -1};
    const std::vector<cx> qs{cx(0.2, 0.1), cx(0.45, 0.3)};

    // Lowering by 2: only entry (2,0) nonzero.
    DynOp low = DynOp::single(3, kStep, -1, [](cx) {
        CMat m(3, 3);
        m(2, 0) = 1.0;
        return m;
    });
    CHECK(dynop_weight(low, wts, qs) == -2);

    DynOp diag = DynOp::single(3, kStep, 0, [](cx q) {
        CMat m = CMat::identity(3);
        m *= q;
        return m;
    });
    CHECK(dynop_weight(diag, wts, qs) == 0);

    DynOp mixed = dynop_add(low, diag);
    CHECK(!dynop_weight(mixed, wts, qs).has_value());
}
