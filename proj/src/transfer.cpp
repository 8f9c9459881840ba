#include "elliptika/transfer.hpp"

#include <cmath>

#include "elliptika/errors.hpp"

namespace elliptika {

TransferOp transfer_op(const Rep& rep, cx u) {
    DynOp t = gen_op(rep, Gen::A1, u);
    t = dynop_add(t, gen_op(rep, Gen::A2, u));
    t = dynop_add(t, gen_op(rep, Gen::A3, u));
    return TransferOp{u, std::move(t)};
}

std::vector<int> zero_weight_indices(const Rep& rep) {
    std::vector<int> idx;
    for (int i = 0; i < rep.w_dim(); ++i)
        if (rep.weights()[i] == 0) idx.push_back(i);
    return idx;
}

std::vector<std::vector<cx>> zero_weight_basis(const Rep& rep) {
    std::vector<std::vector<cx>> basis;
    for (int i : zero_weight_indices(rep)) {
        std::vector<cx> v(rep.w_dim(), cx(0.0));
        v[i] = 1.0;
        basis.push_back(std::move(v));
    }
    return basis;
}

TransferEvaluated::TransferEvaluated(const Rep& rep, cx u, cx q0, int lo, int hi)
    : w_dim_(rep.w_dim()), q0_(q0), step_(rep.params().step()), lo_(lo), hi_(hi) {
    blocks_.reserve(size_t(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) {
        const cx q = q0 + step_ * double(k);
        blocks_.push_back({rep.lax_block(q, u, 0, 0), rep.lax_block(q, u, 1, 1),
                           rep.lax_block(q, u, 2, 2)});
    }
}

LatticeFn TransferEvaluated::apply(const LatticeFn& f) const {
    if (f.dim_w != w_dim_) throw DimensionMismatch("TransferEvaluated::apply: dim mismatch");
    const int lo = std::max(f.lo + 1, lo_);
    const int hi = std::min(f.hi - 1, hi_);
    if (hi < lo) throw WindowUnderflow("TransferEvaluated::apply: empty window");
    LatticeFn out = LatticeFn::zeros(f.q0, f.step, w_dim_, lo, hi);
    out.weight = f.weight;
    for (int k = lo; k <= hi; ++k) {
        const auto& b = blocks_[size_t(k - lo_)];
        auto& dst = out.at(k);
        // t(u) f (q) = L11(q) f(q-2eta) + L22(q) f(q) + L33(q) f(q+2eta)
        const std::vector<cx>* srcs[3] = {&f.at(k - 1), &f.at(k), &f.at(k + 1)};
        for (int blk = 0; blk < 3; ++blk) {
            const CMat& m = b[blk];
            const auto& src = *srcs[blk];
            for (int i = 0; i < w_dim_; ++i) {
                cx acc = 0.0;
                for (int j = 0; j < w_dim_; ++j) acc += m(i, j) * src[j];
                dst[i] += acc;
            }
        }
    }
    return out;
}

LatticeFn random_lattice_fn(const Rep& rep, cx q0, int K, std::optional<int> weight, Rng& rng) {
    LatticeFn f = LatticeFn::zeros(q0, rep.params().step(), rep.w_dim(), -K, K);
    f.weight = weight;
    for (auto& v : f.vals)
        for (int i = 0; i < rep.w_dim(); ++i)
            if (!weight || rep.weights()[i] == *weight) v[i] = rng.box(-1.0, 1.0, -1.0, 1.0);
    return f;
}

namespace {
double commutator_on_inputs(const Rep& rep, cx u, cx v, cx q0, int K,
                            std::optional<int> weight, Rng& rng, int n_inputs) {
    const TransferEvaluated tu(rep, u, q0, -K, K);
    const TransferEvaluated tv(rep, v, q0, -K, K);
    double worst = 0.0;
    for (int i = 0; i < n_inputs; ++i) {
        const LatticeFn f = random_lattice_fn(rep, q0, K, weight, rng);
        const LatticeFn a = tu.apply(tv.apply(f));
        const LatticeFn b = tv.apply(tu.apply(f));
        double diff = 0.0;
        for (int k = a.lo; k <= a.hi; ++k)
            for (int j = 0; j < rep.w_dim(); ++j)
                diff = std::max(diff, std::abs(a.at(k)[j] - b.at(k)[j]));
        worst = std::max(worst, diff / f.sup_norm());
    }
    return worst;
}
} // namespace

double commutator_residual(const Rep& rep, cx u, cx v, cx q0, int K, Rng& rng, int n_inputs) {
    return commutator_on_inputs(rep, u, v, q0, K, 0, rng, n_inputs);
}

double commutator_residual_weighted(const Rep& rep, cx u, cx v, cx q0, int K, int weight,
                                    Rng& rng, int n_inputs) {
    return commutator_on_inputs(rep, u, v, q0, K, weight, rng, n_inputs);
}

} // namespace elliptika
