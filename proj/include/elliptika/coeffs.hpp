#ifndef ELLIPTIKA_COEFFS_HPP
#define ELLIPTIKA_COEFFS_HPP

#include <complex>
#include <span>

#include "elliptika/modular.hpp"

namespace elliptika {

// Scalar coefficient functions of the R-matrix and of the exchange
// algebra.  In all of them u is the spectral argument; q-type arguments
// come first.  q12 below means q1 - q2.  Every theta factor sitting in a
// denominator is guarded: |theta| < guard_eps raises PoleProximity naming
// the factor.
//
//   g(u)           = th(u-eta) th(u-2eta) / (th(eta) th(2eta))
//   alpha(q1,q2,u) = th(eta-u) th(q12-u) / (th(eta) th(q12))
//   beta(q1,q2,u)  = th(eta-u) th(u) th(q12-2eta) / (th(-2eta) th(eta) th(q12))
//   epsilon(q,u)   = th(eta+u) th(2eta-u) / (th(eta) th(2eta))
//                    - th(u) th(eta-u) / (th(eta) th(2eta)) *
//                      [ th(q+eta) th(q-2eta) / (th(q-eta) th(q))
//                      + th(q-eta) th(q+2eta) / (th(q+eta) th(q)) ]
//   gamma(q1,q2,u) = th(u) th(q1+q2-eta-u) th(q1-2eta) th(q2+eta)
//                    / (th(eta) th(q1+q2-2eta) th(q1+eta) th(q2))
//   delta(q,u)     = th(u-q) th(u-q+eta) / (th(q) th(q-eta))
//
// and from the exchange relations:
//
//   y(q,u) = gamma(q,-q,u) / gamma(q,eta,u)
//   z(q,u) = g(u) / beta(q,eta,u)
//   omega(u) = th(u+eta) th(u-2eta) / (th(u-eta) th(u+2eta))
//
// omega in the form above is the closed q-free expression; the original
// q-dependent quotient is kept as omega_dynamical for cross-checking that
// it is indeed independent of q.

cx coeff_g(cx u, const ModularParams& p);
cx coeff_alpha(cx q1, cx q2, cx u, const ModularParams& p);
cx coeff_beta(cx q1, cx q2, cx u, const ModularParams& p);
cx coeff_epsilon(cx q, cx u, const ModularParams& p);
cx coeff_gamma(cx q1, cx q2, cx u, const ModularParams& p);
cx coeff_delta(cx q, cx u, const ModularParams& p);

cx omega_closed(cx u, const ModularParams& p);
cx omega_dynamical(cx q, cx u, const ModularParams& p);
cx coeff_y(cx q, cx u, const ModularParams& p);
cx coeff_z(cx q, cx u, const ModularParams& p);

enum class CoeffName { g, alpha, beta, epsilon, gamma, delta, omega, y, z };

// Arity of the q-type argument list: g and omega take none, epsilon/delta/y/z
// take one, alpha/beta/gamma take two.
int coeff_arity(CoeffName name);

cx coeff_eval(CoeffName name, std::span<const cx> args, cx u, const ModularParams& p);

} // namespace elliptika

#endif
