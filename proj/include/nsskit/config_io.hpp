#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "csv.hpp"
#include "model.hpp"

namespace nsskit {

/// Reads the flat `key = value` config format. Blank lines and lines starting
/// with '#' are ignored. Unknown keys, duplicate keys and malformed values are
/// rejected with a ConfigError naming the key.
///
/// Recognised keys: potential.kind (zero|delta), potential.re_z,
/// potential.im_z, potential.a, gamma, profile.kind (kerr|power|constant),
/// profile.p, profile.c, ode_tol, max_steps.
inline ProblemConfig parse_config(std::istream& in) {
    static const char* known[] = {"potential.kind", "potential.re_z", "potential.im_z", "potential.a", "gamma",
                                  "profile.kind",   "profile.p",      "profile.c",      "ode_tol",     "max_steps"};
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown key '" + key + "' (line " + std::to_string(lineno) + ")");
        if (kv.count(key)) throw ConfigError("duplicate key '" + key + "' (line " + std::to_string(lineno) + ")");
        kv[key] = value;
    }

    auto number = [&](const std::string& key, double fallback) {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        auto v = csv::parse_double(it->second);
        if (!v) throw ConfigError("key '" + key + "': not a number: '" + it->second + "'");
        return *v;
    };

    ProblemConfig cfg;
    std::string pkind = kv.count("potential.kind") ? kv["potential.kind"] : "zero";
    if (pkind == "zero") {
        for (const char* k : {"potential.re_z", "potential.im_z", "potential.a"})
            if (kv.count(k)) throw ConfigError(std::string("key '") + k + "' requires potential.kind = delta");
        cfg.potential = PotentialSpec::zero();
    } else if (pkind == "delta") {
        if (!kv.count("potential.a")) throw ConfigError("key 'potential.a' is required for a delta potential");
        cfg.potential = PotentialSpec::delta({number("potential.re_z", 0.0), number("potential.im_z", 0.0)},
                                             number("potential.a", 0.5));
    } else {
        throw ConfigError("key 'potential.kind': expected zero or delta, got '" + pkind + "'");
    }

    cfg.gamma = number("gamma", 0.0);

    std::string fkind = kv.count("profile.kind") ? kv["profile.kind"] : "kerr";
    if (fkind == "kerr") {
        cfg.profile = NonlinearityProfile::kerr();
    } else if (fkind == "power") {
        if (!kv.count("profile.p")) throw ConfigError("key 'profile.p' is required for a power profile");
        cfg.profile = NonlinearityProfile::power(number("profile.p", 2.0));
    } else if (fkind == "constant") {
        if (!kv.count("profile.c")) throw ConfigError("key 'profile.c' is required for a constant profile");
        cfg.profile = NonlinearityProfile::constant(number("profile.c", 0.0));
    } else {
        throw ConfigError("key 'profile.kind': expected kerr, power or constant, got '" + fkind + "'");
    }
    if (kv.count("profile.p") && fkind != "power") throw ConfigError("key 'profile.p' only applies to power profiles");
    if (kv.count("profile.c") && fkind != "constant")
        throw ConfigError("key 'profile.c' only applies to constant profiles");

    cfg.ode_tol = number("ode_tol", default_ode_tol);
    double steps = number("max_steps", static_cast<double>(default_max_steps));
    if (steps != std::floor(steps) || steps > 1e15) throw ConfigError("key 'max_steps': must be an integer");
    cfg.max_steps = static_cast<long>(steps);

    auto violations = validate_config(cfg);
    if (!violations.empty()) throw ConfigError("invalid configuration: " + violations.front());
    return cfg;
}

inline ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

inline std::string to_config_text(const ProblemConfig& cfg) {
    std::ostringstream os;
    if (cfg.potential.is_delta()) {
        os << "potential.kind = delta\n"
           << "potential.re_z = " << csv::format(cfg.potential.strength.real()) << '\n'
           << "potential.im_z = " << csv::format(cfg.potential.strength.imag()) << '\n'
           << "potential.a = " << csv::format(cfg.potential.position) << '\n';
    } else {
        os << "potential.kind = zero\n";
    }
    os << "gamma = " << csv::format(cfg.gamma) << '\n';
    switch (cfg.profile.kind()) {
        case NonlinearityProfile::Kind::Power:
            os << "profile.kind = power\nprofile.p = " << csv::format(cfg.profile.parameter()) << '\n';
            break;
        case NonlinearityProfile::Kind::Constant:
            os << "profile.kind = constant\nprofile.c = " << csv::format(cfg.profile.parameter()) << '\n';
            break;
        case NonlinearityProfile::Kind::Kerr: os << "profile.kind = kerr\n"; break;
        case NonlinearityProfile::Kind::Custom:
            throw ConfigError("custom profiles cannot be written to a config file");
    }
    os << "ode_tol = " << csv::format(cfg.ode_tol) << '\n' << "max_steps = " << cfg.max_steps << '\n';
    return os.str();
}

}  // namespace nsskit
