#ifndef ELLIPTIKA_SUITES_HPP
#define ELLIPTIKA_SUITES_HPP

#include <string>
#include <vector>

#include "elliptika/report.hpp"

namespace elliptika {

// Verification suites.  Each maps to one family of identities:
//   theta     theta-function identities and the omega cross-checks
//   rmatrix   permutation point, unitarity, zero-weight structure
//   ybe       dynamical Yang-Baxter sweep
//   rll       exchange relation, matrix and operator-algebra forms
//   commrels  the five A1/B1/B2 exchange relations
//   symmetry  creation-operator transposition symmetry + proof identities
//   transfer  commuting transfer matrices, weight preservation
//   bethe-n1  one-magnon solve + eigencheck
//   bethe-n2  two-magnon solve + eigencheck
// Residual sweeps draw from an RNG stream derived from (seed, suite name),
// so a report is a deterministic function of (config, seed).
const std::vector<std::string>& all_suites();

SuiteResult run_suite(const std::string& name, const Config& cfg);

} // namespace elliptika

#endif
