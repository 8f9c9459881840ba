#ifndef ELLIPTIKA_REPSPACE_HPP
#define ELLIPTIKA_REPSPACE_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "elliptika/dynalg.hpp"
#include "elliptika/modular.hpp"
#include "elliptika/rmatrix.hpp"

namespace elliptika {

// A representation: a weight-graded space W together with the Lax operator
// L(q,u) in End(V (x) W).  Basis of V (x) W is indexed (a, i) -> a*w_dim + i
// with a the auxiliary index.  L is of zero weight and satisfies the
// dynamical exchange relation with the R-matrix; both are checked in tests,
// not assumed.
//
// Lax evaluations are memoized per (q,u) behind a mutex: identity sweeps
// hit the same sample points many times through coefficient closures.
class Rep {
public:
    Rep(int w_dim, std::vector<int> weights, std::vector<cx> sites, ModularParams params,
        std::function<CMat(cx, cx)> lax_raw);

    int w_dim() const { return w_dim_; }
    std::span<const int> weights() const { return weights_; }
    std::span<const cx> sites() const { return sites_; }
    const ModularParams& params() const { return params_; }

    CMat lax(cx q, cx u) const;

    // Block (a,b) of L(q,u), a w_dim x w_dim matrix on W.
    CMat lax_block(cx q, cx u, int a, int b) const;

private:
    int w_dim_;
    std::vector<int> weights_;
    std::vector<cx> sites_;
    ModularParams params_;
    std::function<CMat(cx, cx)> lax_raw_;

    struct Memo {
        std::mutex mu;
        std::map<std::pair<std::pair<double, double>, std::pair<double, double>>, CMat> map;
    };
    std::shared_ptr<Memo> memo_;
};

// Fundamental representation with evaluation point z: W = V,
// L(q,u) = R(q, u - z).
Rep fundamental_rep(cx z, const ModularParams& p);

// Tensor product: on X (x) Y the Lax operator is
// L_X(q - 2*eta*h_Y, u) L_Y(q, u), with the h_Y shift applied blockwise
// over the weight decomposition of Y.
Rep tensor_rep(const Rep& x, const Rep& y);

// Chain of fundamentals at the given evaluation points.
Rep chain_rep(std::span<const cx> sites, const ModularParams& p);

// The nine generators of the operator algebra, L(u) = L(q,u) e^{-2 eta h d/dq}:
//
//   A1 = L11  B1 = L12  B2 = L13
//   C1 = L21  A2 = L22  B3 = L23
//   C2 = L31  C3 = L32  A3 = L33
//
// Entry (i,j) carries the shift S^{w_j} with w = (1,0,-1).
enum class Gen { A1, B1, B2, C1, A2, B3, C2, C3, A3 };

DynOp lax_entry_op(const Rep& rep, int row, int col, cx u);
DynOp gen_op(const Rep& rep, Gen g, cx u);

// 3x3 matrix of DynOp, row-major, entry (i,j) = lax_entry_op(rep,i,j,u).
std::vector<DynOp> lax_to_dynops(const Rep& rep, cx u);

// Pseudovacuum |0> = e1 (x) ... (x) e1 with a gauge function f on the
// lattice: |Omega> = f(q) |0>.  The a_i are the vacuum eigenvalues of the
// diagonal Lax entries, extracted as matrix elements (shift folded out).
struct Vacuum {
    std::vector<cx> zero_vec;  // |0> in W
    int zero_index = 0;        // its basis index
    LatticeFn f;               // scalar (dim 1) lattice function
    std::function<cx(cx, cx)> a1, a2, a3; // (q, u)
};

// f defaults to the constant function 1 on the given window.
Vacuum pseudovacuum(const Rep& rep, cx q0, int window_k, const LatticeFn* f = nullptr);

// |Omega> as a W-valued lattice function.
LatticeFn vacuum_state(const Rep& rep, const Vacuum& vac);

// Max-entry residual of the defining exchange relation on V (x) V (x) W:
//   R12(q-2eta h_W, u12) L13(q,u1) L23(q-2eta h_1, u2)
// - L23(q,u2) L13(q-2eta h_2, u1) R12(q, u12).
double rll_residual(const Rep& rep, cx q, cx u1, cx u2);

// The same relation lifted to the operator algebra (a 9x9 identity of
// shift operators on Fun(W)):
//   R12(q-2eta h, u12) L1(u1) L2(u2) = L2(u2) L1(u1) Rtilde12(q, u12)
// where Rtilde's entry at row pair (i,k) is the R entry evaluated at
// q + 2eta(w_i + w_k).  Every coefficient function of the difference is
// sampled at the given q values; returns the max modulus seen.
double rll_tilde_residual(const Rep& rep, cx u1, cx u2, std::span<const cx> q_samples);

// Structural zero-weight check of L: entry ((a,i),(b,j)) must vanish
// identically unless w_a + w_i = w_b + w_j.
bool lax_zero_weight_ok(const Rep& rep, cx q, cx u);

} // namespace elliptika

#endif
