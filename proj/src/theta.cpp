#include "elliptika/theta.hpp"

#include <cmath>
#include <numbers>

#include "elliptika/errors.hpp"
#include "elliptika/modular.hpp"

namespace elliptika {

cx theta_series(cx u, cx tau, double tol) {
    constexpr double pi = std::numbers::pi;
    const double im_tau = tau.imag();
    const double im_u = std::abs(u.imag());
    const double log_tol = std::log(1.0 / tol);

    // Term modulus is exp(-pi*Im(tau)*(j+1/2)^2 + 2*pi*|Im u|*(j+1/2)) on the
    // growing side, peaking at j+1/2 = |Im u|/Im(tau).  Cutting at
    //   J >= |Im u|/Im(tau) + sqrt(log(1/tol)/(pi*Im(tau)))
    // puts the first omitted term below tol relative to the peak term.  The
    // sqrt((log(1/tol)+2*pi*|Im u|)/(pi*Im tau)) window is kept as a lower
    // bound; it is the tighter of the two for small |Im u|.
    const double j_safe = im_u / im_tau + std::sqrt(std::max(0.0, log_tol) / (pi * im_tau));
    const double j_window = std::sqrt(std::max(0.0, (log_tol + 2.0 * pi * im_u) / (pi * im_tau)));
    const long j_max = lround(std::ceil(std::max(j_safe, j_window))) + 2;
    if (j_max > 100000)
        throw ThetaTruncationError("theta series truncation window exceeds 1e5 terms; "
                                   "|Im u| too large for this tau");
    // Peak term exp(pi*Im(u)^2/Im(tau)) must stay representable.
    if (pi * im_u * im_u / im_tau > 700.0)
        throw ThetaTruncationError("theta series peak term overflows double precision");

    const cx i_pi(0.0, pi);
    cx sum = 0.0;
    for (long j = -j_max - 1; j <= j_max; ++j) {
        const double jh = double(j) + 0.5;
        sum += std::exp(i_pi * (jh * jh * tau + 2.0 * jh * (u + 0.5)));
    }
    return -sum;
}

cx theta(cx u, const ModularParams& p) { return theta_series(u, p.tau, p.theta_tol); }

} // namespace elliptika
