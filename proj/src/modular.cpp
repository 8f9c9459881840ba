#include "elliptika/modular.hpp"

#include <cmath>

#include "elliptika/errors.hpp"
#include "elliptika/theta.hpp"

namespace elliptika {

ModularParams::ModularParams(cx tau_, cx eta_, double theta_tol_, double guard_eps_)
    : tau(tau_), eta(eta_), theta_tol(theta_tol_), guard_eps(guard_eps_) {
    if (!(tau.imag() > 0.0)) throw ConfigError("Im(tau) > 0 required");
    if (!(theta_tol > 0.0)) throw ConfigError("theta_tol > 0 required");
    if (!(guard_eps > 0.0)) throw ConfigError("guard_eps > 0 required");
    for (cx v : {eta, 2.0 * eta}) {
        const double m = std::abs(theta_series(v, tau, theta_tol));
        if (m < guard_eps)
            throw ConfigError("eta invalid: theta(eta) or theta(2*eta) vanishes to within the guard");
    }
}

} // namespace elliptika
