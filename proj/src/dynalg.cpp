#include "elliptika/dynalg.hpp"

#include <cmath>
#include <cstdlib>

#include "elliptika/errors.hpp"

namespace elliptika {

DynOp DynOp::identity(int dim_w, cx step) {
    return single(dim_w, step, 0, [dim_w](cx) { return CMat::identity(dim_w); });
}

DynOp DynOp::scalar(int dim_w, cx step, std::function<cx(cx)> f) {
    return single(dim_w, step, 0, [dim_w, f = std::move(f)](cx q) {
        CMat m = CMat::identity(dim_w);
        m *= f(q);
        return m;
    });
}

DynOp DynOp::single(int dim_w, cx step, int shift, CoeffFn c) {
    DynOp op{dim_w, step, {}};
    op.terms.emplace(shift, std::move(c));
    return op;
}

DynOp dynop_add(const DynOp& a, const DynOp& b) {
    if (a.dim_w != b.dim_w) throw DimensionMismatch("dynop_add: dim_w mismatch");
    DynOp out{a.dim_w, a.terms.empty() ? b.step : a.step, a.terms};
    for (const auto& [k, c] : b.terms) {
        auto it = out.terms.find(k);
        if (it == out.terms.end()) {
            out.terms.emplace(k, c);
        } else {
            it->second = [f = it->second, g = c](cx q) { return f(q) + g(q); };
        }
    }
    return out;
}

DynOp dynop_mul(const DynOp& a, const DynOp& b, int n_max) {
    if (a.dim_w != b.dim_w) throw DimensionMismatch("dynop_mul: dim_w mismatch");
    DynOp out = DynOp::zero(a.dim_w, a.terms.empty() ? b.step : a.step);
    const cx step = out.step;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            const int k = ka + kb;
            if (std::abs(k) > n_max)
                throw ShiftOverflow("dynop_mul: shift " + std::to_string(k)
                                    + " exceeds n_max = " + std::to_string(n_max));
            // (F S^a)(G S^b): the shift drags G's argument to q - 2*eta*a.
            const cx off = step * double(ka);
            CoeffFn prod = [ca, cb, off](cx q) { return ca(q) * cb(q - off); };
            auto it = out.terms.find(k);
            if (it == out.terms.end()) {
                out.terms.emplace(k, std::move(prod));
            } else {
                it->second = [f = it->second, g = std::move(prod)](cx q) { return f(q) + g(q); };
            }
        }
    return out;
}

DynOp dynop_scale(cx s, const DynOp& a) {
    DynOp out{a.dim_w, a.step, {}};
    for (const auto& [k, c] : a.terms)
        out.terms.emplace(k, [s, c](cx q) {
            CMat m = c(q);
            m *= s;
            return m;
        });
    return out;
}

DynOp dynop_sub(const DynOp& a, const DynOp& b) { return dynop_add(a, dynop_scale(-1.0, b)); }

LatticeFn LatticeFn::zeros(cx q0, cx step, int dim_w, int lo, int hi) {
    LatticeFn f;
    f.q0 = q0;
    f.step = step;
    f.dim_w = dim_w;
    f.lo = lo;
    f.hi = hi;
    if (hi >= lo) f.vals.assign(size_t(hi - lo + 1), std::vector<cx>(dim_w, cx(0.0)));
    return f;
}

double LatticeFn::sup_norm() const {
    double m = 0.0;
    for (const auto& v : vals) m = std::max(m, max_abs(v));
    return m;
}

LatticeFn dynop_apply(const DynOp& op, const LatticeFn& f) {
    if (op.dim_w != f.dim_w) throw DimensionMismatch("dynop_apply: dim_w mismatch");
    if (op.terms.empty()) return LatticeFn::zeros(f.q0, f.step, f.dim_w, f.lo, f.hi);
    const int lo = f.lo + op.max_shift();
    const int hi = f.hi + op.min_shift();
    if (hi < lo) throw WindowUnderflow("dynop_apply: window is empty after shrinking");

    LatticeFn out = LatticeFn::zeros(f.q0, f.step, f.dim_w, lo, hi);
    for (int k = lo; k <= hi; ++k) {
        const cx q = f.point(k);
        auto& dst = out.at(k);
        for (const auto& [s, c] : op.terms) {
            const CMat m = c(q);
            const auto& src = f.at(k - s);
            for (int i = 0; i < f.dim_w; ++i) {
                cx acc = 0.0;
                for (int j = 0; j < f.dim_w; ++j) acc += m(i, j) * src[j];
                dst[i] += acc;
            }
        }
    }
    return out;
}

std::optional<int> dynop_weight(const DynOp& op, std::span<const int> weights,
                                std::span<const cx> q_samples, double tol) {
    std::optional<int> delta;
    for (const auto& [s, c] : op.terms) {
        for (cx q : q_samples) {
            const CMat m = c(q);
            for (int i = 0; i < op.dim_w; ++i)
                for (int j = 0; j < op.dim_w; ++j) {
                    if (std::abs(m(i, j)) <= tol) continue;
                    const int d = weights[i] - weights[j];
                    if (!delta) delta = d;
                    else if (*delta != d) return std::nullopt;
                }
        }
    }
    return delta ? delta : std::optional<int>(0); // zero operator counts as weight 0
}

} // namespace elliptika
