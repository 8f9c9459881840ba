#ifndef ELLIPTIKA_CONFIG_HPP
#define ELLIPTIKA_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "elliptika/modular.hpp"

namespace elliptika {

// Run configuration.  File format is line-oriented `key = value` with `#`
// comments; complex numbers are written like `0.31`, `1.1i`, `0.37+0.21i`.
// Keys: tau, eta, theta_tol, guard_eps, sites (comma separated), lattice.q0,
// lattice.K, seed, suites (comma separated), tol.<suite>, gauge, gauge.file.
//
// `gauge` selects the vacuum gauge function f used when re-checking Bethe
// states: "functional-equation" (default; the propagated gauge the solvers
// use), "unit" (f == 1), or "lattice-file" (f samples from the JSON file
// named by gauge.file, format {"lo": k, "values": [[re, im], ...]}).
enum class GaugeChoice { unit, lattice_file, functional_equation };

struct Config {
    cx tau{0.0, 1.1};
    cx eta{0.31, 0.0};
    double theta_tol = 1e-14;
    double guard_eps = 1e-8;
    std::vector<cx> sites{cx(0.0), cx(0.17)};
    cx q0{0.37, 0.21};
    int window_k = 12;
    uint64_t seed = 42;
    std::vector<std::string> suites;          // empty = all
    std::map<std::string, double> tolerances; // per-suite overrides
    GaugeChoice gauge = GaugeChoice::functional_equation;
    std::string gauge_file;

    ModularParams params() const { return ModularParams(tau, eta, theta_tol, guard_eps); }
    double tolerance(const std::string& suite, double fallback) const;
    void validate() const;
};

cx parse_complex(const std::string& text);

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

} // namespace elliptika

#endif
