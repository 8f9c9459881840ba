#include "elliptika/rmatrix.hpp"

#include <cmath>
#include <string>

#include "elliptika/coeffs.hpp"
#include "elliptika/errors.hpp"

namespace elliptika {

namespace {

// One term c(q,u) * E_ab (x) E_cd.  Indices are 1-based as in the usual
// matrix-unit notation; sign carries the two explicit minus signs of the
// gamma terms on E21 (x) E23 and E23 (x) E21.
struct Term {
    int a, b, c, d;
    double sign;
    cx (*coeff)(cx q, cx u, const ModularParams& p);
    const char* name;
};

cx c_g(cx, cx u, const ModularParams& p) { return coeff_g(u, p); }
cx c_eps(cx q, cx u, const ModularParams& p) { return coeff_epsilon(q, u, p); }

cx c_alpha_eq(cx q, cx u, const ModularParams& p) { return coeff_alpha(p.eta, q, u, p); }
cx c_alpha_qe(cx q, cx u, const ModularParams& p) { return coeff_alpha(q, p.eta, u, p); }
cx c_alpha_mqe(cx q, cx u, const ModularParams& p) { return coeff_alpha(-q, p.eta, u, p); }
cx c_alpha_emq(cx q, cx u, const ModularParams& p) { return coeff_alpha(p.eta, -q, u, p); }

cx c_beta_eq(cx q, cx u, const ModularParams& p) { return coeff_beta(p.eta, q, u, p); }
cx c_beta_qe(cx q, cx u, const ModularParams& p) { return coeff_beta(q, p.eta, u, p); }
cx c_beta_mqe(cx q, cx u, const ModularParams& p) { return coeff_beta(-q, p.eta, u, p); }
cx c_beta_emq(cx q, cx u, const ModularParams& p) { return coeff_beta(p.eta, -q, u, p); }

cx c_gamma_mqq(cx q, cx u, const ModularParams& p) { return coeff_gamma(-q, q, u, p); }
cx c_gamma_mqe(cx q, cx u, const ModularParams& p) { return coeff_gamma(-q, p.eta, u, p); }
cx c_gamma_eq(cx q, cx u, const ModularParams& p) { return coeff_gamma(p.eta, q, u, p); }
cx c_gamma_qmq(cx q, cx u, const ModularParams& p) { return coeff_gamma(q, -q, u, p); }
cx c_gamma_qe(cx q, cx u, const ModularParams& p) { return coeff_gamma(q, p.eta, u, p); }
cx c_gamma_emq(cx q, cx u, const ModularParams& p) { return coeff_gamma(p.eta, -q, u, p); }

cx c_delta_q(cx q, cx u, const ModularParams& p) { return coeff_delta(q, u, p); }
cx c_delta_mq(cx q, cx u, const ModularParams& p) { return coeff_delta(-q, u, p); }

constexpr Term kTerms[] = {
    {1, 1, 1, 1, +1.0, c_g, "g(u) E11xE11"},
    {3, 3, 3, 3, +1.0, c_g, "g(u) E33xE33"},
    {2, 2, 2, 2, +1.0, c_eps, "epsilon(q,u) E22xE22"},
    {1, 2, 2, 1, +1.0, c_alpha_eq, "alpha(eta,q,u) E12xE21"},
    {2, 1, 1, 2, +1.0, c_alpha_qe, "alpha(q,eta,u) E21xE12"},
    {2, 3, 3, 2, +1.0, c_alpha_mqe, "alpha(-q,eta,u) E23xE32"},
    {3, 2, 2, 3, +1.0, c_alpha_emq, "alpha(eta,-q,u) E32xE23"},
    {1, 1, 2, 2, +1.0, c_beta_eq, "beta(eta,q,u) E11xE22"},
    {2, 2, 1, 1, +1.0, c_beta_qe, "beta(q,eta,u) E22xE11"},
    {2, 2, 3, 3, +1.0, c_beta_mqe, "beta(-q,eta,u) E22xE33"},
    {3, 3, 2, 2, +1.0, c_beta_emq, "beta(eta,-q,u) E33xE22"},
    {1, 1, 3, 3, +1.0, c_gamma_mqq, "gamma(-q,q,u) E11xE33"},
    {1, 2, 3, 2, +1.0, c_gamma_mqe, "gamma(-q,eta,u) E12xE32"},
    {2, 1, 2, 3, -1.0, c_gamma_eq, "gamma(eta,q,u) E21xE23"},
    {3, 3, 1, 1, +1.0, c_gamma_qmq, "gamma(q,-q,u) E33xE11"},
    {3, 2, 1, 2, +1.0, c_gamma_qe, "gamma(q,eta,u) E32xE12"},
    {2, 3, 2, 1, -1.0, c_gamma_emq, "gamma(eta,-q,u) E23xE21"},
    {3, 1, 1, 3, +1.0, c_delta_q, "delta(q,u) E31xE13"},
    {1, 3, 3, 1, +1.0, c_delta_mq, "delta(-q,u) E13xE31"},
};

} // namespace

RMatrix r_build(cx q, cx u, const ModularParams& p) {
    RMatrix r{q, u, CMat(9, 9)};
    for (const Term& t : kTerms) {
        cx v;
        try {
            v = t.coeff(q, u, p);
        } catch (const PoleProximity& e) {
            throw PoleProximity(std::string(t.name) + ": " + e.factor, e.arg, e.modulus);
        }
        r.m(pair_index(t.a - 1, t.c - 1), pair_index(t.b - 1, t.d - 1)) = t.sign * v;
    }
    return r;
}

RMatrix r_shifted(cx q, cx u, int weight_of_third, const ModularParams& p) {
    return r_build(q - p.step() * double(weight_of_third), u, p);
}

CMat permutation_vv() {
    CMat pm(9, 9);
    for (int i = 0; i < kVDim; ++i)
        for (int k = 0; k < kVDim; ++k) pm(pair_index(k, i), pair_index(i, k)) = 1.0;
    return pm;
}

bool zero_weight_pattern_ok(const CMat& m) {
    if (m.rows() != 9 || m.cols() != 9) return false;
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c) {
            const bool on_pattern = pair_weight(r) == pair_weight(c);
            if (!on_pattern && m(r, c) != cx(0.0)) return false;
        }
    return true;
}

CMat r_three_leg(int leg_a, int leg_b, int leg_c, bool shifted, cx q, cx u,
                 const ModularParams& p) {
    // Build the three 9x9 matrices once per spectator weight.
    std::array<CMat, 3> rs;
    for (int s = 0; s < kVDim; ++s)
        rs[s] = shifted ? r_shifted(q, u, kVWeights[s], p).m : r_build(q, u, p).m;

    const int dim = 27;
    CMat out(dim, dim);
    std::array<int, 3> row{}, col{};
    for (int r = 0; r < dim; ++r) {
        row = {r / 9, (r / 3) % 3, r % 3};
        for (int c = 0; c < dim; ++c) {
            col = {c / 9, (c / 3) % 3, c % 3};
            if (row[leg_c] != col[leg_c]) continue;
            const CMat& rm = rs[row[leg_c]];
            out(r, c) = rm(pair_index(row[leg_a], row[leg_b]), pair_index(col[leg_a], col[leg_b]));
        }
    }
    return out;
}

double unitarity_residual(cx q, cx u, const ModularParams& p) {
    const CMat r12 = r_build(q, u, p).m;
    const CMat pm = permutation_vv();
    const CMat r21 = pm * r_build(q, -u, p).m * pm;
    const cx scale = coeff_g(u, p) * coeff_g(-u, p);
    CMat lhs = r12 * r21;
    lhs -= scale * CMat::identity(9);
    return lhs.max_abs() / std::abs(scale);
}

double dybe_residual(cx q, cx u1, cx u2, const ModularParams& p) {
    const cx u12 = u1 - u2;
    const CMat lhs = r_three_leg(0, 1, 2, true, q, u12, p)
                   * r_three_leg(0, 2, 1, false, q, u1, p)
                   * r_three_leg(1, 2, 0, true, q, u2, p);
    const CMat rhs = r_three_leg(1, 2, 0, false, q, u2, p)
                   * r_three_leg(0, 2, 1, true, q, u1, p)
                   * r_three_leg(0, 1, 2, false, q, u12, p);
    return (lhs - rhs).max_abs();
}

} // namespace elliptika
