#ifndef ELLIPTIKA_ERRORS_HPP
#define ELLIPTIKA_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace elliptika {

// A theta factor in a denominator came closer to zero than guard_eps.
// `factor` names the offending factor, e.g. "theta(q12) in alpha".
class PoleProximity : public std::runtime_error {
public:
    PoleProximity(std::string factor, std::complex<double> arg, double modulus)
        : std::runtime_error("pole guard tripped: |" + factor + "| = " + std::to_string(modulus)
                             + " at arg = (" + std::to_string(arg.real()) + ","
                             + std::to_string(arg.imag()) + ")"),
          factor(std::move(factor)), arg(arg), modulus(modulus) {}
    std::string factor;
    std::complex<double> arg;
    double modulus;
};

class ThetaTruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShiftOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WindowUnderflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace elliptika

#endif
