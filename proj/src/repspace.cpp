#include "elliptika/repspace.hpp"

#include <cassert>

#include "elliptika/errors.hpp"

namespace elliptika {

Rep::Rep(int w_dim, std::vector<int> weights, std::vector<cx> sites, ModularParams params,
         std::function<CMat(cx, cx)> lax_raw)
    : w_dim_(w_dim), weights_(std::move(weights)), sites_(std::move(sites)),
      params_(params), lax_raw_(std::move(lax_raw)), memo_(std::make_shared<Memo>()) {
    assert(int(weights_.size()) == w_dim_);
}

CMat Rep::lax(cx q, cx u) const {
    const auto key = std::make_pair(std::make_pair(q.real(), q.imag()),
                                    std::make_pair(u.real(), u.imag()));
    {
        std::lock_guard lock(memo_->mu);
        auto it = memo_->map.find(key);
        if (it != memo_->map.end()) return it->second;
    }
    CMat m = lax_raw_(q, u);
    {
        std::lock_guard lock(memo_->mu);
        if (memo_->map.size() > 8192) memo_->map.clear();
        memo_->map.emplace(key, m);
    }
    return m;
}

CMat Rep::lax_block(cx q, cx u, int a, int b) const {
    const CMat full = lax(q, u);
    CMat out(w_dim_, w_dim_);
    for (int i = 0; i < w_dim_; ++i)
        for (int j = 0; j < w_dim_; ++j) out(i, j) = full(a * w_dim_ + i, b * w_dim_ + j);
    return out;
}

Rep fundamental_rep(cx z, const ModularParams& p) {
    return Rep(kVDim, {kVWeights.begin(), kVWeights.end()}, {z}, p,
               [z, p](cx q, cx u) { return r_build(q, u - z, p).m; });
}

Rep tensor_rep(const Rep& x, const Rep& y) {
    const int wx = x.w_dim(), wy = y.w_dim();
    const int w = wx * wy;
    std::vector<int> weights(w);
    for (int i = 0; i < wx; ++i)
        for (int j = 0; j < wy; ++j) weights[i * wy + j] = x.weights()[i] + y.weights()[j];

    std::vector<cx> sites(x.sites().begin(), x.sites().end());
    sites.insert(sites.end(), y.sites().begin(), y.sites().end());

    const ModularParams p = x.params();
    // Copies of x and y keep their memo caches alive inside the closure.
    Rep xc = x, yc = y;
    auto lax_raw = [xc, yc, p, wx, wy, w](cx q, cx u) {
        // mx = L_X(q - 2 eta h_Y, u) embedded on (V, X) slots, block diagonal
        // over the Y index; my = L_Y(q, u) embedded on (V, Y) slots.
        CMat mx(3 * w, 3 * w), my(3 * w, 3 * w);
        std::vector<CMat> lx(wy);
        for (int j = 0; j < wy; ++j)
            lx[j] = xc.lax(q - p.step() * double(yc.weights()[j]), u);
        const CMat ly = yc.lax(q, u);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int i = 0; i < wx; ++i)
                    for (int ip = 0; ip < wx; ++ip)
                        for (int j = 0; j < wy; ++j) {
                            mx(a * w + i * wy + j, b * w + ip * wy + j) =
                                lx[j](a * wx + i, b * wx + ip);
                        }
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int j = 0; j < wy; ++j)
                    for (int jp = 0; jp < wy; ++jp)
                        for (int i = 0; i < wx; ++i) {
                            my(a * w + i * wy + j, b * w + i * wy + jp) =
                                ly(a * wy + j, b * wy + jp);
                        }
        return mx * my;
    };
    return Rep(w, std::move(weights), std::move(sites), p, std::move(lax_raw));
}

Rep chain_rep(std::span<const cx> sites, const ModularParams& p) {
    if (sites.empty()) throw DimensionMismatch("chain_rep: need at least one site");
    Rep rep = fundamental_rep(sites[0], p);
    for (size_t k = 1; k < sites.size(); ++k) rep = tensor_rep(rep, fundamental_rep(sites[k], p));
    return rep;
}

DynOp lax_entry_op(const Rep& rep, int row, int col, cx u) {
    Rep rc = rep;
    return DynOp::single(rep.w_dim(), rep.params().step(), kVWeights[col],
                         [rc, row, col, u](cx q) { return rc.lax_block(q, u, row, col); });
}

DynOp gen_op(const Rep& rep, Gen g, cx u) {
    switch (g) {
    case Gen::A1: return lax_entry_op(rep, 0, 0, u);
    case Gen::B1: return lax_entry_op(rep, 0, 1, u);
    case Gen::B2: return lax_entry_op(rep, 0, 2, u);
    case Gen::C1: return lax_entry_op(rep, 1, 0, u);
    case Gen::A2: return lax_entry_op(rep, 1, 1, u);
    case Gen::B3: return lax_entry_op(rep, 1, 2, u);
    case Gen::C2: return lax_entry_op(rep, 2, 0, u);
    case Gen::C3: return lax_entry_op(rep, 2, 1, u);
    case Gen::A3: return lax_entry_op(rep, 2, 2, u);
    }
    throw DimensionMismatch("gen_op: unknown generator");
}

std::vector<DynOp> lax_to_dynops(const Rep& rep, cx u) {
    std::vector<DynOp> out;
    out.reserve(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.push_back(lax_entry_op(rep, i, j, u));
    return out;
}

Vacuum pseudovacuum(const Rep& rep, cx q0, int window_k, const LatticeFn* f) {
    // Highest weight vector: every tensor factor in its top state.  For
    // chains of fundamentals that is index 0 in the lexicographic basis.
    int top = 0;
    int top_w = rep.weights()[0];
    for (int i = 1; i < rep.w_dim(); ++i)
        if (rep.weights()[i] > top_w) {
            top_w = rep.weights()[i];
            top = i;
        }
    for (int i = 0; i < rep.w_dim(); ++i)
        if (i != top && rep.weights()[i] == top_w)
            throw DimensionMismatch("pseudovacuum: highest weight space is not one-dimensional");

    Vacuum vac;
    vac.zero_index = top;
    vac.zero_vec.assign(rep.w_dim(), cx(0.0));
    vac.zero_vec[top] = 1.0;

    if (f) {
        vac.f = *f;
    } else {
        vac.f = LatticeFn::zeros(q0, rep.params().step(), 1, -window_k, window_k);
        for (int k = -window_k; k <= window_k; ++k) vac.f.at(k)[0] = 1.0;
    }

    Rep rc = rep;
    const int ti = top;
    auto diag = [rc, ti](int a) {
        return [rc, ti, a](cx q, cx u) {
            const CMat block = rc.lax_block(q, u, a, a);
            return block(ti, ti);
        };
    };
    vac.a1 = diag(0);
    vac.a2 = diag(1);
    vac.a3 = diag(2);
    return vac;
}

LatticeFn vacuum_state(const Rep& rep, const Vacuum& vac) {
    LatticeFn st = LatticeFn::zeros(vac.f.q0, vac.f.step, rep.w_dim(), vac.f.lo, vac.f.hi);
    for (int k = st.lo; k <= st.hi; ++k)
        for (int i = 0; i < rep.w_dim(); ++i) st.at(k)[i] = vac.f.at(k)[0] * vac.zero_vec[i];
    st.weight = rep.weights()[vac.zero_index];
    return st;
}

double rll_residual(const Rep& rep, cx q, cx u1, cx u2) {
    const ModularParams& p = rep.params();
    const int w = rep.w_dim();
    const int dim = 9 * w;
    const cx u12 = u1 - u2;

    auto idx = [w](int a, int b, int i) { return (a * 3 + b) * w + i; };

    // R12 block diagonal over the W index, optionally with the h_W shift.
    auto r12 = [&](bool shift_by_w) {
        CMat m(dim, dim);
        std::map<int, CMat> rs;
        for (int i = 0; i < w; ++i) {
            const int lam = shift_by_w ? rep.weights()[i] : 0;
            auto it = rs.find(lam);
            if (it == rs.end()) it = rs.emplace(lam, r_build(q - p.step() * double(lam), u12, p).m).first;
            const CMat& r = it->second;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int ap = 0; ap < 3; ++ap)
                        for (int bp = 0; bp < 3; ++bp)
                            m(idx(a, b, i), idx(ap, bp, i)) =
                                r(pair_index(a, b), pair_index(ap, bp));
        }
        return m;
    };

    // L on (V_leg, W), block diagonal over the other V leg; the dynamical
    // shift, when present, is by the weight of that spectator V leg.
    auto lax_on = [&](int leg, cx u, bool shift_by_spectator) {
        CMat m(dim, dim);
        std::array<CMat, 3> ls;
        for (int s = 0; s < 3; ++s)
            ls[s] = rep.lax(shift_by_spectator ? q - p.step() * double(kVWeights[s]) : q, u);
        for (int spect = 0; spect < 3; ++spect) {
            const CMat& l = ls[shift_by_spectator ? spect : 0];
            for (int act = 0; act < 3; ++act)
                for (int actp = 0; actp < 3; ++actp)
                    for (int i = 0; i < w; ++i)
                        for (int ip = 0; ip < w; ++ip) {
                            const int r = leg == 0 ? idx(act, spect, i) : idx(spect, act, i);
                            const int c = leg == 0 ? idx(actp, spect, ip) : idx(spect, actp, ip);
                            m(r, c) = l(act * w + i, actp * w + ip);
                        }
        }
        return m;
    };

    const CMat lhs = r12(true) * lax_on(0, u1, false) * lax_on(1, u2, true);
    const CMat rhs = lax_on(1, u2, false) * lax_on(0, u1, true) * r12(false);
    return (lhs - rhs).max_abs();
}

double rll_tilde_residual(const Rep& rep, cx u1, cx u2, std::span<const cx> q_samples) {
    const ModularParams p = rep.params();
    const int w = rep.w_dim();
    const cx u12 = u1 - u2;
    const cx step = p.step();
    Rep rc = rep;

    // 9x9 matrices over the shift-operator algebra; empty DynOp = zero.
    using DynMat = std::array<DynOp, 81>;
    auto at = [](DynMat& m, int r, int c) -> DynOp& { return m[r * 9 + c]; };

    DynMat rdyn, l1, l2, rtil;
    rdyn.fill(DynOp::zero(w, step));
    l1 = l2 = rtil = rdyn;

    std::vector<int> wts(rep.weights().begin(), rep.weights().end());
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c) {
            if (pair_weight(r) == pair_weight(c)) {
                // Dynamical shift by h_W: on the weight-m block of W the
                // entry is evaluated at q - 2*eta*m.
                at(rdyn, r, c) = DynOp::single(w, step, 0, [p, wts, w, r, c, u12](cx q) {
                    CMat d(w, w);
                    std::map<int, cx> vals;
                    for (int m = 0; m < w; ++m) {
                        const int lam = wts[m];
                        auto it = vals.find(lam);
                        if (it == vals.end())
                            it = vals.emplace(lam,
                                 r_build(q - p.step() * double(lam), u12, p).m(r, c)).first;
                        d(m, m) = it->second;
                    }
                    return d;
                });
                const cx off = step * double(pair_weight(r));
                at(rtil, r, c) = DynOp::single(w, step, 0, [p, w, r, c, u12, off](cx q) {
                    CMat d = CMat::identity(w);
                    d *= r_build(q + off, u12, p).m(r, c);
                    return d;
                });
            }
            const int i = r / 3, k = r % 3, j = c / 3, l = c % 3;
            if (k == l) at(l1, r, c) = lax_entry_op(rc, i, j, u1);
            if (i == j) at(l2, r, c) = lax_entry_op(rc, k, l, u2);
        }

    auto mul = [&](const DynMat& a, const DynMat& b) {
        DynMat out;
        out.fill(DynOp::zero(w, step));
        for (int r = 0; r < 9; ++r)
            for (int c = 0; c < 9; ++c) {
                DynOp acc = DynOp::zero(w, step);
                for (int m = 0; m < 9; ++m) {
                    const DynOp& x = a[r * 9 + m];
                    const DynOp& y = b[m * 9 + c];
                    if (x.terms.empty() || y.terms.empty()) continue;
                    acc = dynop_add(acc, dynop_mul(x, y));
                }
                out[r * 9 + c] = acc;
            }
        return out;
    };

    const DynMat lhs = mul(mul(rdyn, l1), l2);
    const DynMat rhs = mul(mul(l2, l1), rtil);

    double worst = 0.0;
    for (int e = 0; e < 81; ++e) {
        const DynOp diff = dynop_sub(lhs[e], rhs[e]);
        for (const auto& [s, cf] : diff.terms)
            for (cx q : q_samples) worst = std::max(worst, cf(q).max_abs());
    }
    return worst;
}

bool lax_zero_weight_ok(const Rep& rep, cx q, cx u) {
    const CMat m = rep.lax(q, u);
    const int w = rep.w_dim();
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < w; ++i)
            for (int b = 0; b < 3; ++b)
                for (int j = 0; j < w; ++j) {
                    const bool on = kVWeights[a] + rep.weights()[i] == kVWeights[b] + rep.weights()[j];
                    if (!on && m(a * w + i, b * w + j) != cx(0.0)) return false;
                }
    return true;
}

} // namespace elliptika
