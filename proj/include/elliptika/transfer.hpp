#ifndef ELLIPTIKA_TRANSFER_HPP
#define ELLIPTIKA_TRANSFER_HPP

#include <vector>

#include "elliptika/repspace.hpp"
#include "elliptika/rng.hpp"

namespace elliptika {

// Transfer matrix t(u) = A1(u) + A2(u) + A3(u), the trace of the Lax
// operator over the auxiliary space with the column shifts included.
// Zero weight as an operator; commutes with itself at different spectral
// parameters on functions valued in the zero weight subspace of W.
struct TransferOp {
    cx u;
    DynOp op;
};

TransferOp transfer_op(const Rep& rep, cx u);

// Basis indices / vectors of the zero weight subspace W[0].
std::vector<int> zero_weight_indices(const Rep& rep);
std::vector<std::vector<cx>> zero_weight_basis(const Rep& rep);

// Materialized t(u) on a lattice window: one Lax evaluation per point,
// reused across many applications.  Application of t(u) costs three dense
// block-vector products per point.
class TransferEvaluated {
public:
    TransferEvaluated(const Rep& rep, cx u, cx q0, int lo, int hi);
    LatticeFn apply(const LatticeFn& f) const;

private:
    int w_dim_;
    cx q0_, step_;
    int lo_, hi_;
    std::vector<std::array<CMat, 3>> blocks_; // L11, L22, L33 at each point
};

// Random W-valued lattice function; when `weight` is set only components
// of that weight are populated (and the grading tag is set).
LatticeFn random_lattice_fn(const Rep& rep, cx q0, int K, std::optional<int> weight, Rng& rng);

// sup over random zero-weight inputs of |(t(u)t(v) - t(v)t(u)) f| / |f|
// on the common window.
double commutator_residual(const Rep& rep, cx u, cx v, cx q0, int K, Rng& rng,
                           int n_inputs = 10);

// Same quantity on inputs of the given (not necessarily zero) weight;
// informative off the zero-weight subspace, where no commutation is claimed.
double commutator_residual_weighted(const Rep& rep, cx u, cx v, cx q0, int K, int weight,
                                    Rng& rng, int n_inputs = 3);

} // namespace elliptika

#endif
