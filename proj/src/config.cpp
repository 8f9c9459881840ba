#include "elliptika/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "elliptika/errors.hpp"

namespace elliptika {

namespace {

std::string strip(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(strip(cur));
    return out;
}

double to_double(const std::string& s) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
}

} // namespace

cx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ConfigError("empty complex literal");

    if (s.back() != 'i' && s.back() != 'I') return {to_double(s), 0.0};

    s.pop_back(); // drop the i; what remains is [real +-] imag-coefficient
    // find the split sign: last '+'/'-' that is not leading and not part of
    // an exponent
    size_t split_at = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    if (split_at == std::string::npos) {
        if (s.empty() || s == "+") return {0.0, 1.0};
        if (s == "-") return {0.0, -1.0};
        return {0.0, to_double(s)};
    }
    const std::string re = s.substr(0, split_at);
    std::string im = s.substr(split_at);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return {to_double(re), to_double(im)};
}

double Config::tolerance(const std::string& suite, double fallback) const {
    auto it = tolerances.find(suite);
    return it == tolerances.end() ? fallback : it->second;
}

void Config::validate() const {
    if (!(tau.imag() > 0.0)) throw ConfigError("config: Im(tau) > 0 required");
    if (window_k < 8) throw ConfigError("config: lattice.K >= 8 required");
    if (!(theta_tol > 0.0) || !(guard_eps > 0.0))
        throw ConfigError("config: tolerances must be positive");
    for (const auto& [k, v] : tolerances)
        if (!(v > 0.0)) throw ConfigError("config: tol." + k + " must be positive");
    if (sites.empty()) throw ConfigError("config: at least one site required");
    if (gauge == GaugeChoice::lattice_file && gauge_file.empty())
        throw ConfigError("config: gauge = lattice-file requires gauge.file");
}

Config parse_config(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string val = strip(line.substr(eq + 1));
        try {
            if (key == "tau") cfg.tau = parse_complex(val);
            else if (key == "eta") cfg.eta = parse_complex(val);
            else if (key == "theta_tol") cfg.theta_tol = to_double(val);
            else if (key == "guard_eps") cfg.guard_eps = to_double(val);
            else if (key == "sites") {
                cfg.sites.clear();
                for (const std::string& part : split(val, ','))
                    if (!part.empty()) cfg.sites.push_back(parse_complex(part));
            } else if (key == "lattice.q0") cfg.q0 = parse_complex(val);
            else if (key == "lattice.K") cfg.window_k = int(to_double(val));
            else if (key == "seed") cfg.seed = uint64_t(to_double(val));
            else if (key == "suites") {
                cfg.suites.clear();
                for (const std::string& part : split(val, ','))
                    if (!part.empty()) cfg.suites.push_back(part);
            } else if (key.rfind("tol.", 0) == 0) {
                cfg.tolerances[key.substr(4)] = to_double(val);
            } else if (key == "gauge") {
                if (val == "unit") cfg.gauge = GaugeChoice::unit;
                else if (val == "lattice-file") cfg.gauge = GaugeChoice::lattice_file;
                else if (val == "functional-equation") cfg.gauge = GaugeChoice::functional_equation;
                else throw ConfigError("gauge must be unit, lattice-file or functional-equation");
            } else if (key == "gauge.file") {
                cfg.gauge_file = val;
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace elliptika
