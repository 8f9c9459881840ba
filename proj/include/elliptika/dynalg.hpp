#ifndef ELLIPTIKA_DYNALG_HPP
#define ELLIPTIKA_DYNALG_HPP

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "elliptika/cmat.hpp"

namespace elliptika {

// End(W)-valued coefficient function of the dynamical parameter.
using CoeffFn = std::function<CMat(cx q)>;

// A finite formal sum  sum_k C_k(q) * S^k  of q-shift operators with
// endomorphism-valued coefficients, where S = exp(-2*eta*d/dq) acts on
// functions as (S f)(q) = f(q - 2*eta).  The product rule is
//
//   (F * S^a) (G * S^b) = [q -> F(q) G(q - 2*eta*a)] * S^(a+b).
//
// Coefficients are stored as callable closures; identities over these
// operators are checked by sampling q, never symbolically.
struct DynOp {
    int dim_w = 0;
    cx step;                     // 2*eta
    std::map<int, CoeffFn> terms;

    static DynOp zero(int dim_w, cx step) { return DynOp{dim_w, step, {}}; }
    static DynOp identity(int dim_w, cx step);
    // f(q) * Id_W at shift 0.
    static DynOp scalar(int dim_w, cx step, std::function<cx(cx)> f);
    static DynOp single(int dim_w, cx step, int shift, CoeffFn c);

    int min_shift() const { return terms.empty() ? 0 : terms.begin()->first; }
    int max_shift() const { return terms.empty() ? 0 : terms.rbegin()->first; }
};

inline constexpr int kDefaultShiftCap = 8;

DynOp dynop_add(const DynOp& a, const DynOp& b);
DynOp dynop_mul(const DynOp& a, const DynOp& b, int n_max = kDefaultShiftCap);
DynOp dynop_scale(cx s, const DynOp& a);
DynOp dynop_sub(const DynOp& a, const DynOp& b);

// W-valued function sampled on the lattice window q0 + 2*eta*k,
// k in [lo, hi].  Applying an operator with shifts in [s_min, s_max]
// shrinks the valid window to [lo + s_max, hi + s_min].
struct LatticeFn {
    cx q0;
    cx step;
    int dim_w = 0;
    int lo = 0, hi = -1;
    std::vector<std::vector<cx>> vals; // vals[k - lo]
    std::optional<int> weight;         // declared weight grading, if homogeneous

    static LatticeFn zeros(cx q0, cx step, int dim_w, int lo, int hi);

    cx point(int k) const { return q0 + step * double(k); }
    std::vector<cx>& at(int k) { return vals[size_t(k - lo)]; }
    const std::vector<cx>& at(int k) const { return vals[size_t(k - lo)]; }
    bool empty() const { return hi < lo; }

    double sup_norm() const;
};

LatticeFn dynop_apply(const DynOp& op, const LatticeFn& f);

// Weight of the operator under the grading of W: Delta such that op maps
// W[m] into W[m + Delta], tested structurally on sampled coefficients.
// nullopt means mixed weight.  `weights` gives the grading of the W basis.
std::optional<int> dynop_weight(const DynOp& op, std::span<const int> weights,
                                std::span<const cx> q_samples, double tol = 1e-12);

} // namespace elliptika

#endif
