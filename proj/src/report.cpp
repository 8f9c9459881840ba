#include "elliptika/report.hpp"

#include <fstream>

#include "elliptika/errors.hpp"

namespace elliptika {

using nlohmann::json;

namespace {
json cxj(cx v) { return json::array({v.real(), v.imag()}); }
} // namespace

json config_json(const Config& cfg) {
    json sites = json::array();
    for (cx z : cfg.sites) sites.push_back(cxj(z));
    json tol = json::object();
    for (const auto& [k, v] : cfg.tolerances) tol[k] = v;
    return json{{"tau", cxj(cfg.tau)},
                {"eta", cxj(cfg.eta)},
                {"theta_tol", cfg.theta_tol},
                {"guard_eps", cfg.guard_eps},
                {"sites", sites},
                {"lattice", json{{"q0", cxj(cfg.q0)}, {"K", cfg.window_k}}},
                {"seed", cfg.seed},
                {"suites", cfg.suites},
                {"tolerances", tol}};
}

json report_json(const Report& report) {
    json suites = json::array();
    int cases_passed = 0, cases_failed = 0, suites_passed = 0, suites_failed = 0;
    for (const SuiteResult& s : report.suites) {
        json cases = json::array();
        for (const CaseResult& c : s.cases) {
            cases.push_back(json{{"name", c.name},
                                 {"parameters", c.parameters},
                                 {"residual", c.residual},
                                 {"tolerance", c.tolerance},
                                 {"pass", c.pass}});
            (c.pass ? cases_passed : cases_failed)++;
        }
        (s.passed() ? suites_passed : suites_failed)++;
        suites.push_back(json{{"name", s.name},
                              {"cases", cases},
                              {"pass", s.passed()},
                              {"wall_clock_sec", s.wall_seconds}});
    }
    return json{{"config", config_json(report.config)},
                {"suites", suites},
                {"summary", json{{"cases_passed", cases_passed},
                                 {"cases_failed", cases_failed},
                                 {"suites_passed", suites_passed},
                                 {"suites_failed", suites_failed}}}};
}

void emit_report(const Report& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open report path for writing: " + path);
    out << report_json(report).dump(2) << "\n";
    if (!out) throw ConfigError("write failure on report path: " + path);
}

} // namespace elliptika
