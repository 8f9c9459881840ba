#include "elliptika/bethe.hpp"

#include <cmath>

#include "elliptika/errors.hpp"
#include "elliptika/theta.hpp"
#include "elliptika/transfer.hpp"

namespace elliptika {

namespace {

cx inner(const std::vector<cx>& a, const std::vector<cx>& b) {
    cx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double apply_residual(const DynOp& diff, const Rep& rep, cx q0, int K, Rng& rng,
                      int n_inputs) {
    double worst = 0.0;
    for (int i = 0; i < n_inputs; ++i) {
        const LatticeFn f = random_lattice_fn(rep, q0, K, std::nullopt, rng);
        const LatticeFn g = dynop_apply(diff, f);
        worst = std::max(worst, g.sup_norm() / f.sup_norm());
    }
    return worst;
}

} // namespace

double commutation_relation_residual(int which, const Rep& rep, cx u1, cx u2, cx q0, int K,
                                     Rng& rng, int n_inputs) {
    const ModularParams p = rep.params();
    const int w = rep.w_dim();
    const cx step = p.step();
    const cx u21 = u2 - u1, u12 = u1 - u2;

    auto sc = [&](std::function<cx(cx)> f) { return DynOp::scalar(w, step, std::move(f)); };
    auto cnst = [&](cx v) { return DynOp::scalar(w, step, [v](cx) { return v; }); };
    auto mul = [](const DynOp& a, const DynOp& b) { return dynop_mul(a, b); };

    const DynOp A1u1 = gen_op(rep, Gen::A1, u1), A1u2 = gen_op(rep, Gen::A1, u2);
    const DynOp B1u1 = gen_op(rep, Gen::B1, u1), B1u2 = gen_op(rep, Gen::B1, u2);
    const DynOp B2u1 = gen_op(rep, Gen::B2, u1), B2u2 = gen_op(rep, Gen::B2, u2);

    DynOp lhs = DynOp::zero(w, step), rhs = DynOp::zero(w, step);
    switch (which) {
    case 1:
        // B1(u1)B1(u2) = omega_21 (B1(u2)B1(u1) - 1/y_21(q) B2(u2)A1(u1))
        //              + 1/y_12(q) B2(u1)A1(u2)
        lhs = mul(B1u1, B1u2);
        rhs = dynop_add(
            mul(cnst(omega_closed(u21, p)),
                dynop_sub(mul(B1u2, B1u1),
                          mul(sc([=](cx q) { return 1.0 / coeff_y(q, u21, p); }),
                              mul(B2u2, A1u1)))),
            mul(sc([=](cx q) { return 1.0 / coeff_y(q, u12, p); }), mul(B2u1, A1u2)));
        break;
    case 2:
        // A1(u1)B1(u2) = z_21(q) B1(u2)A1(u1)
        //              - alpha_21(eta,q)/beta_21(q,eta) B1(u1)A1(u2)
        lhs = mul(A1u1, B1u2);
        rhs = dynop_sub(
            mul(sc([=](cx q) { return coeff_z(q, u21, p); }), mul(B1u2, A1u1)),
            mul(sc([=](cx q) {
                    return coeff_alpha(p.eta, q, u21, p) / coeff_beta(q, p.eta, u21, p);
                }),
                mul(B1u1, A1u2)));
        break;
    case 3:
        // A1(u1)B2(u2) = 1/gamma_21(q,-q) ( g_21 B2(u2)A1(u1)
        //              + gamma_21(eta,-q) B1(u1)B1(u2) - delta_21(-q) B2(u1)A1(u2) ),
        // the normal-ordered exchange coming from the ((1,1),(3,1)) entry of
        // the operator-algebra exchange relation.  Each spectral parameter
        // appears exactly once per word.
        lhs = mul(A1u1, B2u2);
        rhs = mul(sc([=](cx q) { return 1.0 / coeff_gamma(q, -q, u21, p); }),
                  dynop_add(dynop_sub(mul(cnst(coeff_g(u21, p)), mul(B2u2, A1u1)),
                                      mul(sc([=](cx q) { return coeff_delta(-q, u21, p); }),
                                          mul(B2u1, A1u2))),
                            mul(sc([=](cx q) { return coeff_gamma(p.eta, -q, u21, p); }),
                                mul(B1u1, B1u2))));
        break;
    case 4:
        // B1(u2)B2(u1) = 1/g_21 ( beta_21(-q,eta) B2(u1)B1(u2)
        //              + alpha_21(eta,-q) B1(u1)B2(u2) )
        lhs = mul(B1u2, B2u1);
        rhs = mul(cnst(1.0 / coeff_g(u21, p)),
                  dynop_add(mul(sc([=](cx q) { return coeff_beta(-q, p.eta, u21, p); }),
                                mul(B2u1, B1u2)),
                            mul(sc([=](cx q) { return coeff_alpha(p.eta, -q, u21, p); }),
                                mul(B1u1, B2u2))));
        break;
    case 5:
        // B2(u2)B1(u1) = 1/g_21 ( beta_21(eta,-q) B1(u1)B2(u2)
        //              + alpha_21(-q,eta) B2(u1)B1(u2) )
        lhs = mul(B2u2, B1u1);
        rhs = mul(cnst(1.0 / coeff_g(u21, p)),
                  dynop_add(mul(sc([=](cx q) { return coeff_beta(p.eta, -q, u21, p); }),
                                mul(B1u1, B2u2)),
                            mul(sc([=](cx q) { return coeff_alpha(-q, p.eta, u21, p); }),
                                mul(B2u1, B1u2))));
        break;
    default: throw DimensionMismatch("commutation_relation_residual: which must be 1..5");
    }
    return apply_residual(dynop_sub(lhs, rhs), rep, q0, K, rng, n_inputs);
}

// ---------------------------------------------------------------------------

namespace {

ScalarFn scalar_shift(const ScalarFn& s, cx off) {
    if (s.is_const_one) return s;
    return {[f = s.f, off](cx q) { return f(q + off); }, false};
}

// Recurrence over the active index list (indices into the full point set).
std::vector<BWord> phi_words(const std::vector<int>& active, const std::vector<cx>& us,
                             const ModularParams& p) {
    const int n = int(active.size());
    if (n == 0) return {BWord{{}, ScalarFn::one()}};
    if (n == 1) return {BWord{{{BGen::B1, active[0]}}, ScalarFn::one()}};

    std::vector<BWord> out;

    // B1(u1) Phi_{n-1}: B1 carries no shift, coefficients pass through.
    std::vector<int> rest(active.begin() + 1, active.end());
    for (BWord w : phi_words(rest, us, p)) {
        w.gens.insert(w.gens.begin(), {BGen::B1, active[0]});
        out.push_back(std::move(w));
    }

    // - sum_j coeff_j(q) B2(u1) Phi_{n-2} A1(uj); pushing Phi_{n-2}'s
    // coefficient through B2 shifts its argument by +2eta.
    for (int jpos = 1; jpos < n; ++jpos) {
        const int j = active[jpos];
        cx omega_prod = 1.0;
        for (int kpos = 1; kpos < jpos; ++kpos)
            omega_prod *= omega_closed(us[j] - us[active[kpos]], p);

        const cx uj = us[j], u0 = us[active[0]];
        std::vector<cx> zdiffs;
        for (int kpos = 1; kpos < n; ++kpos)
            if (kpos != jpos) zdiffs.push_back(us[active[kpos]] - uj);

        auto coeff_j = [omega_prod, u0, uj, zdiffs, p](cx q) {
            cx v = omega_prod / coeff_y(q, u0 - uj, p);
            for (cx d : zdiffs) v *= coeff_z(q + p.step(), d, p);
            return v;
        };

        std::vector<int> sub(active.begin() + 1, active.end());
        sub.erase(sub.begin() + (jpos - 1));
        for (BWord w : phi_words(sub, us, p)) {
            const ScalarFn shifted = scalar_shift(w.coeff, p.step());
            BWord nw;
            nw.gens.reserve(w.gens.size() + 2);
            nw.gens.push_back({BGen::B2, active[0]});
            nw.gens.insert(nw.gens.end(), w.gens.begin(), w.gens.end());
            nw.gens.push_back({BGen::A1, j});
            nw.coeff = {[coeff_j, g = shifted.f](cx q) { return -coeff_j(q) * g(q); }, false};
            out.push_back(std::move(nw));
        }
    }
    return out;
}

} // namespace

BethePoly phi_build(int n, std::vector<cx> us, const ModularParams& p) {
    if (n < 0 || int(us.size()) != n)
        throw DimensionMismatch("phi_build: need exactly n spectral points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(us[i] - us[j]) < 1e-9)
                throw PoleProximity("coincident spectral points in phi_build", us[i] - us[j],
                                    std::abs(us[i] - us[j]));
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    BethePoly poly;
    poly.n = n;
    poly.us = std::move(us);
    poly.words = phi_words(active, poly.us, p);
    return poly;
}

DynOp phi_eval(const BethePoly& poly, const Rep& rep) {
    const int w = rep.w_dim();
    const cx step = rep.params().step();
    DynOp acc = DynOp::zero(w, step);
    for (const BWord& word : poly.words) {
        DynOp op = DynOp::scalar(w, step, word.coeff.f);
        for (const auto& [g, idx] : word.gens) {
            const Gen gen = g == BGen::A1 ? Gen::A1 : (g == BGen::B1 ? Gen::B1 : Gen::B2);
            op = dynop_mul(op, gen_op(rep, gen, poly.us[idx]));
        }
        acc = dynop_add(acc, op);
    }
    return acc;
}

double phi_symmetry_residual(int n, std::span<const cx> us, int i, const Rep& rep, cx q0,
                             int K, Rng& rng, int n_inputs) {
    if (i < 1 || i > n - 1)
        throw DimensionMismatch("phi_symmetry_residual: i must be in 1..n-1");
    std::vector<cx> orig(us.begin(), us.end());
    std::vector<cx> swapped = orig;
    std::swap(swapped[i - 1], swapped[i]);

    const ModularParams& p = rep.params();
    const DynOp a = phi_eval(phi_build(n, orig, p), rep);
    const DynOp b = phi_eval(phi_build(n, swapped, p), rep);
    const cx om = omega_closed(orig[i] - orig[i - 1], p);
    const DynOp diff = dynop_sub(a, dynop_scale(om, b));
    return apply_residual(diff, rep, q0, K, rng, n_inputs);
}

double proof_identity_residual(int which, cx q, std::span<const cx> us,
                               const ModularParams& p) {
    auto om = [&](cx d) { return omega_closed(d, p); };
    auto y = [&](cx qq, cx d) { return coeff_y(qq, d, p); };
    auto z = [&](cx qq, cx d) { return coeff_z(qq, d, p); };
    const cx e = p.eta, s = p.step();

    if (which == 1) {
        if (us.size() != 3) throw DimensionMismatch("proof identity 1 takes 3 points");
        const cx u12 = us[0] - us[1], u21 = us[1] - us[0];
        const cx u13 = us[0] - us[2], u23 = us[1] - us[2], u31 = us[2] - us[0];
        const cx lhs = -om(u12) * coeff_g(u21, p) / (y(q, u23) * coeff_beta(e, -q, u21, p))
                     + coeff_alpha(e, -q, u21, p) / (coeff_beta(e, -q, u21, p) * y(q, u13));
        const cx rhs = -om(u31) * z(q + s, u13) / y(q, u23)
                     - coeff_alpha(e, q + s, u31, p) / (coeff_beta(q + s, e, u31, p) * y(q, u21));
        return std::abs(lhs - rhs);
    }
    if (which == 2) {
        if (us.size() != 4) throw DimensionMismatch("proof identity 2 takes 4 points");
        auto d = [&](int a, int b) { return us[a - 1] - us[b - 1]; };
        const cx t1 = om(d(1, 2))
                    * (om(d(4, 2)) * z(q + s, d(2, 4)) * z(q + s, d(3, 4))
                           / (y(q, d(1, 4)) * y(q + s, d(2, 3)))
                       + om(d(3, 4)) * om(d(3, 2)) * z(q + s, d(2, 3)) * z(q + s, d(4, 3))
                           / (y(q, d(1, 3)) * y(q + s, d(2, 4))));
        const cx t2 = -(om(d(4, 1)) * z(q + s, d(1, 4)) * z(q + s, d(3, 4))
                            / (y(q, d(2, 4)) * y(q + s, d(1, 3)))
                        + om(d(3, 4)) * om(d(3, 1)) * z(q + s, d(1, 3)) * z(q + s, d(4, 3))
                            / (y(q, d(2, 3)) * y(q + s, d(1, 4))));
        const cx t3 = om(d(1, 2)) / y(q, d(1, 2))
                    * (coeff_delta(-q - s, d(4, 2), p)
                           / (coeff_gamma(q + s, -q - s, d(4, 2), p) * y(q, d(4, 3)))
                       + z(q + s, d(4, 2)) * coeff_alpha(e, q + s, d(3, 2), p) * om(d(2, 4))
                           / (coeff_beta(q + s, e, d(3, 2), p) * y(q + s, d(2, 4))));
        const cx t4 = -1.0 / y(q, d(2, 1))
                    * (coeff_delta(-q - s, d(4, 1), p)
                           / (coeff_gamma(q + s, -q - s, d(4, 1), p) * y(q, d(4, 3)))
                       + z(q + s, d(4, 1)) * coeff_alpha(e, q + s, d(3, 1), p) * om(d(1, 4))
                           / (coeff_beta(q + s, e, d(3, 1), p) * y(q + s, d(1, 4))));
        return std::abs(t1 + t2 + t3 + t4);
    }
    throw DimensionMismatch("proof_identity_residual: which must be 1 or 2");
}

// ---------------------------------------------------------------------------

LatticeFn solve_f_lattice(const std::function<cx(cx)>& rhs, cx q0, cx step, int K) {
    LatticeFn f = LatticeFn::zeros(q0, step, 1, -K, K);
    f.at(0)[0] = 1.0;
    for (int k = 1; k <= K; ++k) f.at(k)[0] = f.at(k - 1)[0] * rhs(q0 + step * double(k));
    for (int k = -1; k >= -K; --k) {
        const cx r = rhs(q0 + step * double(k + 1));
        if (std::abs(r) == 0.0)
            throw PoleProximity("f ratio vanishes on lattice", q0 + step * double(k + 1), 0.0);
        f.at(k)[0] = f.at(k + 1)[0] / r;
    }
    return f;
}

cx f_ratio_one_magnon(cx q, cx u1, cx z1, const ModularParams& p) {
    return coeff_z(q, u1 - z1, p);
}

cx f_ratio_two_magnon(cx q, const ModularParams& p) {
    const cx e = p.eta;
    const cx num = theta(q - e, p);
    const cx den = theta(q - 3.0 * e, p);
    if (std::abs(den) < p.guard_eps)
        throw PoleProximity("theta(q-3eta) in two-magnon f ratio", q, std::abs(den));
    return num * num / (den * den);
}

std::pair<cx, cx> bethe_residual_n2(cx u1, cx u2, int k, const Vacuum& vac,
                                    const ModularParams& p) {
    const cx q = vac.f.point(k);
    const cx fr = vac.f.at(k)[0] / vac.f.at(k - 1)[0];
    const cx e = p.eta;
    const cx qfac = theta(q - 3.0 * e, p) * theta(q - 3.0 * e, p)
                  / (theta(q - e, p) * theta(q - 5.0 * e, p));
    auto one = [&](cx ui, cx uj) {
        const cx a2 = vac.a2(q, ui);
        if (std::abs(a2) < 1e-13)
            throw PoleProximity("a2 vanishes in Bethe condition", ui, std::abs(a2));
        const cx ratio = theta(ui - uj - e, p) / theta(ui - uj + e, p);
        return vac.a1(q, ui) / a2 - ratio * qfac * fr;
    };
    return {one(u1, u2), one(u2, u1)};
}

// ---------------------------------------------------------------------------

namespace {

// Pointwise transfer ratio <psi_k, (t psi)_k> / <psi_k, psi_k>.
cx transfer_ratio_at(const LatticeFn& psi, const LatticeFn& tpsi, int k) {
    const cx den = inner(psi.at(k), psi.at(k));
    return inner(psi.at(k), tpsi.at(k)) / den;
}

struct OneMagnonProbe {
    LatticeFn psi;
    Vacuum vac;
};

OneMagnonProbe one_magnon_state(const Rep& rep, cx q0, int K, cx u1) {
    const ModularParams& p = rep.params();
    const cx z1 = rep.sites()[0];
    const LatticeFn f = solve_f_lattice(
        [&](cx q) { return f_ratio_one_magnon(q, u1, z1, p); }, q0, p.step(), K);
    Vacuum vac = pseudovacuum(rep, q0, K, &f);
    const DynOp phi = phi_eval(phi_build(1, {u1}, p), rep);
    LatticeFn psi = dynop_apply(phi, vacuum_state(rep, vac));
    return {std::move(psi), std::move(vac)};
}

// One-magnon quantization function: difference of transfer ratios at two
// adjacent lattice points; vanishes exactly when the eigenvalue is q-free.
cx one_magnon_spread(const Rep& rep, cx q0, int K, cx u1, cx u_probe) {
    const OneMagnonProbe probe = one_magnon_state(rep, q0, K, u1);
    if (probe.psi.sup_norm() < 1e-12) throw SolverError("degenerate one-magnon state");
    const TransferEvaluated t(rep, u_probe, q0, probe.psi.lo, probe.psi.hi);
    const LatticeFn tpsi = t.apply(probe.psi);
    return transfer_ratio_at(probe.psi, tpsi, 0) - transfer_ratio_at(probe.psi, tpsi, 1);
}

BetheSolution solve_bethe_n1(const Rep& rep, cx q0, int K, std::span<const cx> guess) {
    const cx u_probe(0.23, 0.05);

    auto objective = [&](cx u1) -> cx {
        try {
            return one_magnon_spread(rep, q0, K, u1, u_probe);
        } catch (const PoleProximity&) {
            return cx(1e6, 0.0);
        }
    };

    cx u = 0.0;
    if (!guess.empty()) {
        u = guess[0];
    } else {
        double best = 1e30;
        for (int ir = 0; ir < 18; ++ir)
            for (int ii = 0; ii < 13; ++ii) {
                const cx cand(-0.48 + 0.06 * ir, -0.36 + 0.06 * ii);
                const double v = std::abs(objective(cand));
                if (v < best) {
                    best = v;
                    u = cand;
                }
            }
    }

    const double fd = 1e-7;
    cx r = objective(u);
    for (int it = 0; it < 200 && std::abs(r) > 1e-11; ++it) {
        const cx jac = (objective(u + fd) - r) / fd;
        if (std::abs(jac) < 1e-14) throw SolverError("one-magnon Newton: singular derivative");
        const cx du = r / jac;
        double scale = 1.0;
        cx next = u - du;
        cx rn = objective(next);
        for (int halve = 0; halve < 25 && std::abs(rn) > std::abs(r); ++halve) {
            scale *= 0.5;
            next = u - scale * du;
            rn = objective(next);
        }
        u = next;
        r = rn;
    }
    if (std::abs(r) > 1e-8) throw SolverError("one-magnon Newton did not converge");

    OneMagnonProbe probe = one_magnon_state(rep, q0, K, u);
    BetheSolution sol;
    sol.roots = BetheRoots{1, {u}, std::abs(r)};
    sol.vac = std::move(probe.vac);
    return sol;
}

BetheSolution solve_bethe_n2(const Rep& rep, cx q0, int K, std::span<const cx> guess) {
    const ModularParams& p = rep.params();
    const LatticeFn f =
        solve_f_lattice([&](cx q) { return f_ratio_two_magnon(q, p); }, q0, p.step(), K);
    Vacuum vac = pseudovacuum(rep, q0, K, &f);

    auto residual = [&](cx u1, cx u2) -> std::pair<cx, cx> {
        if (std::abs(u1 - u2) < 1e-6) return {cx(1e6), cx(1e6)};
        try {
            return bethe_residual_n2(u1, u2, 0, vac, p);
        } catch (const PoleProximity&) {
            return {cx(1e6), cx(1e6)};
        }
    };
    auto norm2 = [](const std::pair<cx, cx>& r) {
        return std::abs(r.first) + std::abs(r.second);
    };

    cx u1(0.1, 0.0), u2(0.3, 0.0);
    if (guess.size() >= 2) {
        u1 = guess[0];
        u2 = guess[1];
    } else {
        double best = 1e30;
        for (int a = 0; a < 11; ++a)
            for (int b = 0; b < 7; ++b)
                for (int c = 0; c < 11; ++c)
                    for (int d = 0; d < 7; ++d) {
                        const cx c1(-0.45 + 0.1 * a, -0.27 + 0.09 * b);
                        const cx c2(-0.45 + 0.1 * c, -0.27 + 0.09 * d);
                        if (c2.real() < c1.real()) continue; // pair is symmetric, scan once
                        const double v = norm2(residual(c1, c2));
                        if (v < best) {
                            best = v;
                            u1 = c1;
                            u2 = c2;
                        }
                    }
    }

    const double fd = 1e-7;
    auto r = residual(u1, u2);
    for (int it = 0; it < 200 && norm2(r) > 1e-12; ++it) {
        const auto ra = residual(u1 + fd, u2);
        const auto rb = residual(u1, u2 + fd);
        const cx j11 = (ra.first - r.first) / fd, j12 = (rb.first - r.first) / fd;
        const cx j21 = (ra.second - r.second) / fd, j22 = (rb.second - r.second) / fd;
        const cx det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-18) throw SolverError("two-magnon Newton: singular Jacobian");
        const cx d1 = (r.first * j22 - r.second * j12) / det;
        const cx d2 = (j11 * r.second - j21 * r.first) / det;
        double scale = 1.0;
        auto next = residual(u1 - d1, u2 - d2);
        for (int halve = 0; halve < 25 && norm2(next) > norm2(r); ++halve) {
            scale *= 0.5;
            next = residual(u1 - scale * d1, u2 - scale * d2);
        }
        u1 -= scale * d1;
        u2 -= scale * d2;
        r = next;
    }
    if (norm2(r) > 1e-10) throw SolverError("two-magnon Newton did not converge");

    BetheSolution sol;
    sol.roots = BetheRoots{2, {u1, u2}, norm2(r)};
    sol.vac = std::move(vac);
    return sol;
}

} // namespace

BetheSolution solve_bethe(int n, const Rep& rep, cx q0, int K, std::span<const cx> guess) {
    // n magnons on an n-site chain put the Bethe state in the zero-weight
    // subspace (vacuum weight n, Phi_n lowers by n).
    if (int(rep.sites().size()) != n)
        throw SolverError("solve_bethe: need an n-site chain for n magnons");
    if (n == 1) return solve_bethe_n1(rep, q0, K, guess);
    if (n == 2) return solve_bethe_n2(rep, q0, K, guess);
    throw SolverError("solve_bethe: only n = 1 and n = 2 are supported");
}

EigencheckResult eigencheck(const Rep& rep, const Vacuum& vac, const BetheRoots& roots,
                            std::span<const cx> u_samples) {
    const ModularParams& p = rep.params();
    const DynOp phi = phi_eval(phi_build(roots.n, roots.roots, p), rep);
    const LatticeFn psi = dynop_apply(phi, vacuum_state(rep, vac));
    const double psi_sup = psi.sup_norm();
    if (psi_sup < 1e-12) throw SolverError("eigencheck: degenerate Bethe state");

    EigencheckResult out;
    for (cx u : u_samples) {
        const TransferEvaluated t(rep, u, psi.q0, psi.lo, psi.hi);
        const LatticeFn tpsi = t.apply(psi);
        const cx lambda = transfer_ratio_at(psi, tpsi, 0);
        out.lambdas.push_back(lambda);
        for (int k = tpsi.lo; k <= tpsi.hi; ++k) {
            double diff = 0.0;
            for (int j = 0; j < rep.w_dim(); ++j)
                diff = std::max(diff, std::abs(tpsi.at(k)[j] - lambda * psi.at(k)[j]));
            out.residual = std::max(out.residual, diff / psi_sup);
            if (max_abs(psi.at(k)) > 1e-8 * psi_sup)
                out.lambda_spread = std::max(
                    out.lambda_spread, std::abs(transfer_ratio_at(psi, tpsi, k) - lambda));
        }
    }
    return out;
}

} // namespace elliptika
