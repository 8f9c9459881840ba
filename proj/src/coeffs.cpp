#include "elliptika/coeffs.hpp"

#include <cmath>

#include "elliptika/errors.hpp"
#include "elliptika/theta.hpp"

namespace elliptika {

namespace {

// Denominator factor: guard against pole proximity.
cx den(cx arg, const ModularParams& p, const char* what) {
    const cx v = theta(arg, p);
    const double m = std::abs(v);
    if (m < p.guard_eps) throw PoleProximity(what, arg, m);
    return v;
}

// Whole-function guard for quotients whose denominator is itself a
// coefficient function (y, z, omega_dynamical).
cx den_fn(cx v, cx arg, const ModularParams& p, const char* what) {
    const double m = std::abs(v);
    if (m < p.guard_eps) throw PoleProximity(what, arg, m);
    return v;
}

} // namespace

cx coeff_g(cx u, const ModularParams& p) {
    const cx e = p.eta;
    return theta(u - e, p) * theta(u - 2.0 * e, p) / (den(e, p, "theta(eta) in g") * den(2.0 * e, p, "theta(2eta) in g"));
}

cx coeff_alpha(cx q1, cx q2, cx u, const ModularParams& p) {
    const cx e = p.eta;
    const cx q12 = q1 - q2;
    return theta(e - u, p) * theta(q12 - u, p)
         / (den(e, p, "theta(eta) in alpha") * den(q12, p, "theta(q12) in alpha"));
}

cx coeff_beta(cx q1, cx q2, cx u, const ModularParams& p) {
    const cx e = p.eta;
    const cx q12 = q1 - q2;
    return theta(e - u, p) * theta(u, p) * theta(q12 - 2.0 * e, p)
         / (den(-2.0 * e, p, "theta(-2eta) in beta") * den(e, p, "theta(eta) in beta")
            * den(q12, p, "theta(q12) in beta"));
}

cx coeff_epsilon(cx q, cx u, const ModularParams& p) {
    const cx e = p.eta;
    const cx d0 = den(e, p, "theta(eta) in epsilon") * den(2.0 * e, p, "theta(2eta) in epsilon");
    const cx first = theta(e + u, p) * theta(2.0 * e - u, p) / d0;
    const cx bracket = theta(q + e, p) * theta(q - 2.0 * e, p)
                           / (den(q - e, p, "theta(q-eta) in epsilon") * den(q, p, "theta(q) in epsilon"))
                     + theta(q - e, p) * theta(q + 2.0 * e, p)
                           / (den(q + e, p, "theta(q+eta) in epsilon") * den(q, p, "theta(q) in epsilon"));
    return first - theta(u, p) * theta(e - u, p) / d0 * bracket;
}

cx coeff_gamma(cx q1, cx q2, cx u, const ModularParams& p) {
    const cx e = p.eta;
    return theta(u, p) * theta(q1 + q2 - e - u, p) * theta(q1 - 2.0 * e, p) * theta(q2 + e, p)
         / (den(e, p, "theta(eta) in gamma") * den(q1 + q2 - 2.0 * e, p, "theta(q1+q2-2eta) in gamma")
            * den(q1 + e, p, "theta(q1+eta) in gamma") * den(q2, p, "theta(q2) in gamma"));
}

cx coeff_delta(cx q, cx u, const ModularParams& p) {
    const cx e = p.eta;
    return theta(u - q, p) * theta(u - q + e, p)
         / (den(q, p, "theta(q) in delta") * den(q - e, p, "theta(q-eta) in delta"));
}

cx omega_closed(cx u, const ModularParams& p) {
    const cx e = p.eta;
    return theta(u + e, p) * theta(u - 2.0 * e, p)
         / (den(u - e, p, "theta(u-eta) in omega") * den(u + 2.0 * e, p, "theta(u+2eta) in omega"));
}

cx omega_dynamical(cx q, cx u, const ModularParams& p) {
    const cx num = coeff_epsilon(q, -u, p) * coeff_gamma(q, -q, -u, p)
                 + coeff_gamma(q, p.eta, -u, p) * coeff_gamma(p.eta, -q, -u, p);
    const cx d = den_fn(coeff_g(-u, p), -u, p, "g(-u) in omega_dynamical")
               * den_fn(coeff_gamma(q, -q, -u, p), -u, p, "gamma(q,-q,-u) in omega_dynamical");
    return num / d;
}

cx coeff_y(cx q, cx u, const ModularParams& p) {
    return coeff_gamma(q, -q, u, p) / den_fn(coeff_gamma(q, p.eta, u, p), u, p, "gamma(q,eta,u) in y");
}

cx coeff_z(cx q, cx u, const ModularParams& p) {
    return coeff_g(u, p) / den_fn(coeff_beta(q, p.eta, u, p), u, p, "beta(q,eta,u) in z");
}

int coeff_arity(CoeffName name) {
    switch (name) {
    case CoeffName::g:
    case CoeffName::omega: return 0;
    case CoeffName::epsilon:
    case CoeffName::delta:
    case CoeffName::y:
    case CoeffName::z: return 1;
    case CoeffName::alpha:
    case CoeffName::beta:
    case CoeffName::gamma: return 2;
    }
    return -1;
}

cx coeff_eval(CoeffName name, std::span<const cx> args, cx u, const ModularParams& p) {
    if (int(args.size()) != coeff_arity(name))
        throw DimensionMismatch("coeff_eval: wrong number of q-type arguments");
    switch (name) {
    case CoeffName::g: return coeff_g(u, p);
    case CoeffName::alpha: return coeff_alpha(args[0], args[1], u, p);
    case CoeffName::beta: return coeff_beta(args[0], args[1], u, p);
    case CoeffName::epsilon: return coeff_epsilon(args[0], u, p);
    case CoeffName::gamma: return coeff_gamma(args[0], args[1], u, p);
    case CoeffName::delta: return coeff_delta(args[0], u, p);
    case CoeffName::omega: return omega_closed(u, p);
    case CoeffName::y: return coeff_y(args[0], u, p);
    case CoeffName::z: return coeff_z(args[0], u, p);
    }
    throw DimensionMismatch("coeff_eval: unknown name");
}

} // namespace elliptika
