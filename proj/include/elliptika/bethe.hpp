#ifndef ELLIPTIKA_BETHE_HPP
#define ELLIPTIKA_BETHE_HPP

#include <functional>
#include <span>
#include <vector>

#include "elliptika/coeffs.hpp"
#include "elliptika/repspace.hpp"
#include "elliptika/rng.hpp"

namespace elliptika {

// ---------------------------------------------------------------------------
// Exchange relations of the operator algebra in the {A1, B1, B2} sector.
// Five relations; `which` in 1..5:
//   1: B1(u1)B1(u2) reordering (the Phi_2 symmetry in disguise)
//   2: A1(u1)B1(u2) past each other
//   3: A1(u1)B2(u2)
//   4: B1(u2)B2(u1)
//   5: B2(u2)B1(u1)
// Returns sup norm of (LHS - RHS) applied to n_inputs random lattice
// functions, normalized by the input sup norm.
double commutation_relation_residual(int which, const Rep& rep, cx u1, cx u2, cx q0, int K,
                                     Rng& rng, int n_inputs = 10);

// ---------------------------------------------------------------------------
// Creation operators.
//
// Phi_n is a normal-ordered polynomial in A1, B1, B2 with q-dependent
// scalar coefficients, defined by the recurrence
//
//   Phi_n(u1..un) = B1(u1) Phi_{n-1}(u2..un)
//     - sum_{j=2}^n  [prod_{k=2}^{j-1} omega_jk] / y_1j(q)
//                    [prod_{k=2, k!=j}^n z_kj(q+2eta)]
//                    B2(u1) Phi_{n-2}(u2..^uj..un) A1(uj)
//
// with Phi_0 = 1, Phi_1 = B1(u1); omega_jk = omega(uj - uk) (closed form),
// y_1j(q) = y(q, u1 - uj), z_kj(q') = z(q', uk - uj).  Coefficients are
// stored as closures; pushing a scalar through B2 shifts its argument by
// +2eta, which the expansion tracks.  The string B1(u1)...B1(un) always
// carries coefficient 1, tracked symbolically.

struct ScalarFn {
    std::function<cx(cx)> f;
    bool is_const_one = false;

    static ScalarFn one() {
        return {[](cx) { return cx(1.0); }, true};
    }
};

enum class BGen { A1, B1, B2 };

struct BWord {
    std::vector<std::pair<BGen, int>> gens; // generator, index into spectral points
    ScalarFn coeff;
};

struct BethePoly {
    int n = 0;
    std::vector<cx> us;
    std::vector<BWord> words;
};

BethePoly phi_build(int n, std::vector<cx> us, const ModularParams& p);

DynOp phi_eval(const BethePoly& poly, const Rep& rep);

// Residual of Phi_n(.., u_i, u_{i+1}, ..) - omega(u_{i+1} - u_i) *
// Phi_n(.., u_{i+1}, u_i, ..) applied to random lattice functions;
// i is 1-based, 1 <= i <= n-1.
double phi_symmetry_residual(int n, std::span<const cx> us, int i, const Rep& rep, cx q0,
                             int K, Rng& rng, int n_inputs = 10);

// The two scalar theta-function identities behind the symmetry theorem:
// which = 1 takes three spectral points, which = 2 takes four.
double proof_identity_residual(int which, cx q, std::span<const cx> us,
                               const ModularParams& p);

// ---------------------------------------------------------------------------
// Gauge function on the lattice: f(q0) = 1 and f(q)/f(q - 2eta) = rhs(q)
// propagated along q0 + 2eta Z.
LatticeFn solve_f_lattice(const std::function<cx(cx)>& rhs, cx q0, cx step, int K);

// f-ratio choices that render the Bethe conditions q-independent for
// chains of fundamentals (see solver notes in bethe.cpp):
//   n=1:  f(q)/f(q-2eta) = z(q, u1 - z1)
//   n=2:  f(q)/f(q-2eta) = theta(q-eta)^2 / theta(q-3eta)^2
cx f_ratio_one_magnon(cx q, cx u1, cx z1, const ModularParams& p);
cx f_ratio_two_magnon(cx q, const ModularParams& p);

// ---------------------------------------------------------------------------
// Bethe roots.

struct BetheRoots {
    int n = 0;
    std::vector<cx> roots;
    double residual = 0.0;
};

// The two-magnon condition at lattice point k:
//   r_i = a1(u_i)/a2(u_i, q)
//       - theta(u_ij - eta)/theta(u_ij + eta)
//         * theta(q-3eta)^2 / (theta(q-eta) theta(q-5eta))
//         * f(q)/f(q-2eta)
// for (i,j) = (1,2) and (2,1), with q = the k-th lattice point of vac.f.
std::pair<cx, cx> bethe_residual_n2(cx u1, cx u2, int k, const Vacuum& vac,
                                    const ModularParams& p);

struct BetheSolution {
    BetheRoots roots;
    Vacuum vac; // the gauge actually used; feed this to eigencheck
};

// n = 1: Newton on the q-spread of the transfer eigenvalue (the one-magnon
// cancellation condition is not available in closed form).  n = 2: Newton
// with finite-difference Jacobian on (r1, r2) at the base lattice point.
// Empty guess triggers a coarse grid scan.
BetheSolution solve_bethe(int n, const Rep& rep, cx q0, int K,
                          std::span<const cx> guess = {});

// ---------------------------------------------------------------------------
// Eigenvector check: Psi = Phi_n(roots) |Omega>, Lambda(u) the Rayleigh
// quotient at the base point; residual = sup_{window, samples}
// |t(u) Psi - Lambda(u) Psi| / |Psi|; lambda_spread measures the
// q-dependence of the pointwise ratio across the lattice window.
struct EigencheckResult {
    std::vector<cx> lambdas;
    double residual = 0.0;
    double lambda_spread = 0.0;
};

EigencheckResult eigencheck(const Rep& rep, const Vacuum& vac, const BetheRoots& roots,
                            std::span<const cx> u_samples);

} // namespace elliptika

#endif
