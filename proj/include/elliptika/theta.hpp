#ifndef ELLIPTIKA_THETA_HPP
#define ELLIPTIKA_THETA_HPP

#include <complex>

namespace elliptika {

using cx = std::complex<double>;

struct ModularParams;

// Jacobi theta function
//
//   theta(u) = -sum_{j in Z} exp( pi*i*(j+1/2)^2*tau + 2*pi*i*(j+1/2)*(u+1/2) )
//
// the odd theta with zeros on Z + tau*Z.  Satisfies
//   theta(u+1)   = -theta(u)
//   theta(u+tau) = -exp(-pi*i*tau - 2*pi*i*u) * theta(u)
// and the four-term product identity used throughout the R-matrix algebra.
//
// The series is truncated at j in [-J-1, J] with
//   J = ceil(sqrt(max(0, (ln(1/tol) + 2*pi*|Im u|) / (pi*Im tau)))) + 2,
// chosen so the first omitted term is below tol relative to the largest
// retained one (term modulus decays like exp(-pi*Im(tau)*(j+1/2)^2) times
// exp(-+2*pi*Im(u)*(j+1/2))).  Throws ThetaTruncationError when |Im u| is so
// large that J would be absurd, rather than silently losing precision.
cx theta_series(cx u, cx tau, double tol);

cx theta(cx u, const ModularParams& p);

} // namespace elliptika

#endif
