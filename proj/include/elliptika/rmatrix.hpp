#ifndef ELLIPTIKA_RMATRIX_HPP
#define ELLIPTIKA_RMATRIX_HPP

#include <array>

#include "elliptika/cmat.hpp"
#include "elliptika/modular.hpp"

namespace elliptika {

// The auxiliary space V is three-dimensional with basis (e1, e2, e3) and
// h = E11 - E33, so the basis weights are (1, 0, -1).
inline constexpr int kVDim = 3;
inline constexpr std::array<int, 3> kVWeights{1, 0, -1};

// Basis of V (x) V ordered (1,1),(1,2),(1,3),(2,1),...,(3,3); row index is
// the outgoing pair.  A term c * E_ab (x) E_cd of the R-matrix lands at
// row (a,c), column (b,d).
inline int pair_index(int a, int c) { return kVDim * a + c; }
inline int pair_weight(int idx) { return kVWeights[idx / kVDim] + kVWeights[idx % kVDim]; }

// Dynamical R-matrix on V (x) V at dynamical parameter q and spectral
// parameter u.  19 structurally nonzero entries; the pattern is exactly
// the zero-weight pattern: entry ((i,k),(j,l)) = 0 unless w_i + w_k = w_j + w_l.
struct RMatrix {
    cx q;
    cx u;
    CMat m; // 9 x 9
};

RMatrix r_build(cx q, cx u, const ModularParams& p);

// R with the dynamical shift of a spectator leg folded in:
// R(q - 2*eta*lambda, u) where lambda is the h-weight of the third factor.
RMatrix r_shifted(cx q, cx u, int weight_of_third, const ModularParams& p);

// Permutation operator P on V (x) V, P(v (x) w) = w (x) v.
CMat permutation_vv();

// Structural check of the zero-weight sparsity pattern (exact zeros off
// the pattern, all 19 on-pattern entries present).
bool zero_weight_pattern_ok(const CMat& m);

// Operator R_{ab}(q - 2*eta*h_c, u) on V (x) V (x) V, assembled block
// diagonally over the weight decomposition of the spectator leg c.
// legs a, b, c are a permutation of {0,1,2}; pass shifted=false for a
// plain embedding R_{ab}(q, u).
CMat r_three_leg(int leg_a, int leg_b, int leg_c, bool shifted, cx q, cx u, const ModularParams& p);

// Relative unitarity residual: max entry of
// R12(q,u) R21(q,-u) - g(u) g(-u) Id, divided by |g(u) g(-u)|.
double unitarity_residual(cx q, cx u, const ModularParams& p);

// Max-entry modulus of
//   R12(q-2eta h3, u1-u2) R13(q, u1) R23(q-2eta h1, u2)
// - R23(q, u2) R13(q-2eta h2, u1) R12(q, u1-u2)
// as a 27 x 27 matrix.
double dybe_residual(cx q, cx u1, cx u2, const ModularParams& p);

} // namespace elliptika

#endif
