#ifndef ELLIPTIKA_MODULAR_HPP
#define ELLIPTIKA_MODULAR_HPP

#include <complex>

namespace elliptika {

using cx = std::complex<double>;

// Global evaluation context: the modular parameter tau (Im tau > 0), the
// crossing/step parameter eta, the theta series truncation tolerance and
// the pole guard.  eta must not sit where theta(eta) or theta(2*eta)
// vanishes, since those appear in denominators everywhere; this is
// checked at construction.
struct ModularParams {
    cx tau;
    cx eta;
    double theta_tol = 1e-14;
    double guard_eps = 1e-8;

    ModularParams(cx tau, cx eta, double theta_tol = 1e-14, double guard_eps = 1e-8);

    // Lattice step of the dynamical parameter.
    cx step() const { return 2.0 * eta; }

    static ModularParams desk_defaults() { return ModularParams(cx(0.0, 1.1), cx(0.31, 0.0)); }
};

} // namespace elliptika

#endif
