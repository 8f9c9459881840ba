#ifndef ELLIPTIKA_REPORT_HPP
#define ELLIPTIKA_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "elliptika/config.hpp"

namespace elliptika {

struct CaseResult {
    std::string name;
    nlohmann::json parameters;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string name;
    std::vector<CaseResult> cases;
    double wall_seconds = 0.0;

    bool passed() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
};

struct Report {
    Config config;
    std::vector<SuiteResult> suites;
};

nlohmann::json config_json(const Config& cfg);
nlohmann::json report_json(const Report& report);

// UTF-8 JSON document; keys in canonical (alphabetical) order, doubles in
// shortest round-trip form, so re-reading and re-emitting reproduces the
// bytes exactly.
void emit_report(const Report& report, const std::string& path);

} // namespace elliptika

#endif
