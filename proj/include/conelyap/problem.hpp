#pragma once

/// Problem-file parsing and validation.
///
/// Problems are UTF-8 JSON: a dimension, a cone descriptor, named systems
/// with exact rational matrices, optional coupling templates whose entries
/// may be parameter names, and optional parameter ranges. Rationals parse
/// from integers or "p/q" strings; doubles are rejected so certificates
/// stay exact. Errors carry field-path context.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conelyap/coupling.hpp"

namespace conelyap {

struct ProblemFile {
    std::size_t dimension = 0;
    std::optional<ConeSpec> cone_;
    std::vector<std::string> system_names;
    std::vector<RationalMatrix> systems;
    bool has_coupling = false;
    CouplingTemplate coupling;
    std::map<std::string, ParamRange> params;
    std::string digest;

    const ConeSpec& cone() const { return *cone_; }

    std::size_t system_index(const std::string& name) const {
        for (std::size_t i = 0; i < system_names.size(); ++i) {
            if (system_names[i] == name) return i;
        }
        throw ParseError("unknown system '" + name + "'");
    }
};

namespace detail {

inline std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline Rational json_rational(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number()) {
        throw ParseError(where + ": floating literals are not exact; write the value as a \"p/q\" string");
    }
    throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

inline bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (const char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

inline ParamEntry json_param_entry(const nlohmann::json& j, const std::string& where) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (is_identifier(s)) return ParamEntry{s};
    }
    return ParamEntry{json_rational(j, where)};
}

inline RationalMatrix json_matrix(const nlohmann::json& j, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) {
        throw ParseError(where + ": expected " + std::to_string(n) + " rows");
    }
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != n) {
            throw ParseError(where + "[" + std::to_string(i) + "]: expected " + std::to_string(n) + " entries");
        }
        for (std::size_t k = 0; k < n; ++k) {
            m(i, k) = json_rational(row[k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
        }
    }
    return m;
}

inline ParamMatrix json_param_matrix(const nlohmann::json& j, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) {
        throw ParseError(where + ": expected " + std::to_string(n) + " rows");
    }
    ParamMatrix m;
    m.rows = m.cols = n;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != n) {
            throw ParseError(where + "[" + std::to_string(i) + "]: expected " + std::to_string(n) + " entries");
        }
        for (std::size_t k = 0; k < n; ++k) {
            m.entries.push_back(
                json_param_entry(row[k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        }
    }
    return m;
}

} // namespace detail

inline ProblemFile parse_problem_text(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(origin + ": top level must be an object");

    ProblemFile p;
    p.digest = detail::fnv1a_digest(text);

    if (!j.contains("dimension") || !j["dimension"].is_number_integer() || j["dimension"].get<int>() < 1) {
        throw ParseError("dimension: expected a positive integer");
    }
    p.dimension = j["dimension"].get<std::size_t>();
    const std::size_t n = p.dimension;

    if (!j.contains("cone") || !j["cone"].is_object() || !j["cone"].contains("kind")) {
        throw ParseError("cone: expected an object with a \"kind\"");
    }
    const auto kind = j["cone"]["kind"].get<std::string>();
    if (kind == "orthant") {
        p.cone_ = ConeSpec::orthant(n);
    } else if (kind == "icecream") {
        if (n < 2) throw ParseError("cone: the ice cream cone needs dimension >= 2");
        p.cone_ = ConeSpec::ice_cream(n);
    } else if (kind == "polyhedral") {
        if (!j["cone"].contains("generators") || !j["cone"]["generators"].is_array() ||
            j["cone"]["generators"].empty()) {
            throw ParseError("cone.generators: polyhedral cones need a nonempty generator list");
        }
        std::vector<RationalVector> gens;
        std::size_t gi = 0;
        for (const auto& g : j["cone"]["generators"]) {
            const std::string where = "cone.generators[" + std::to_string(gi++) + "]";
            if (!g.is_array() || g.size() != n) {
                throw ParseError(where + ": expected " + std::to_string(n) + " coordinates");
            }
            RationalVector v;
            for (std::size_t k = 0; k < n; ++k) {
                v.push_back(detail::json_rational(g[k], where + "[" + std::to_string(k) + "]"));
            }
            if (is_zero_vector(v)) throw ParseError(where + ": generators must be nonzero");
            gens.push_back(std::move(v));
        }
        p.cone_ = ConeSpec::polyhedral(n, gens);
    } else {
        throw ParseError("cone.kind: unknown kind '" + kind + "' (orthant, icecream, polyhedral)");
    }

    if (!j.contains("systems") || !j["systems"].is_array() || j["systems"].empty()) {
        throw ParseError("systems: expected a nonempty array");
    }
    std::size_t si = 0;
    for (const auto& sys : j["systems"]) {
        const std::string where = "systems[" + std::to_string(si++) + "]";
        if (!sys.is_object() || !sys.contains("name") || !sys["name"].is_string() || !sys.contains("matrix")) {
            throw ParseError(where + ": expected {\"name\", \"matrix\"}");
        }
        const auto name = sys["name"].get<std::string>();
        for (const auto& existing : p.system_names) {
            if (existing == name) throw ParseError(where + ": duplicate system name '" + name + "'");
        }
        p.system_names.push_back(name);
        p.systems.push_back(detail::json_matrix(sys["matrix"], n, where + ".matrix"));
    }

    if (j.contains("coupling")) {
        if (!j["coupling"].is_array()) throw ParseError("coupling: expected an array");
        p.has_coupling = true;
        p.coupling.m = p.systems.size();
        p.coupling.n = n;
        std::size_t ci = 0;
        for (const auto& c : j["coupling"]) {
            const std::string where = "coupling[" + std::to_string(ci++) + "]";
            if (!c.is_object() || !c.contains("between") || !c.contains("matrix") ||
                !c["between"].is_array() || c["between"].size() != 2) {
                throw ParseError(where + ": expected {\"between\": [a, b], \"matrix\": ...}");
            }
            std::size_t a, b;
            try {
                a = p.system_index(c["between"][0].get<std::string>());
                b = p.system_index(c["between"][1].get<std::string>());
            } catch (const ParseError& e) {
                throw ParseError(where + ".between: " + e.what());
            }
            if (a == b) throw ParseError(where + ".between: systems must be distinct");
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            if (p.coupling.entries.count(key)) {
                throw ParseError(where + ".between: duplicate coupling pair (entries are symmetric)");
            }
            p.coupling.entries.emplace(key, detail::json_param_matrix(c["matrix"], n, where + ".matrix"));
        }
    }

    if (j.contains("params")) {
        if (!j["params"].is_object()) throw ParseError("params: expected an object");
        for (const auto& [name, spec] : j["params"].items()) {
            const std::string where = "params." + name;
            if (!detail::is_identifier(name)) throw ParseError(where + ": invalid parameter name");
            if (!spec.is_object() || !spec.contains("min") || !spec.contains("max") || !spec.contains("steps")) {
                throw ParseError(where + ": expected {\"min\", \"max\", \"steps\"}");
            }
            ParamRange r;
            r.min = detail::json_rational(spec["min"], where + ".min");
            r.max = detail::json_rational(spec["max"], where + ".max");
            if (!spec["steps"].is_number_integer() || spec["steps"].get<int>() < 1) {
                throw ParseError(where + ".steps: expected a positive integer");
            }
            r.steps = spec["steps"].get<std::size_t>();
            if (r.min > r.max) throw ParseError(where + ": min exceeds max");
            if (r.steps == 1 && r.min != r.max) {
                throw ParseError(where + ": a single step needs min == max");
            }
            p.params.emplace(name, std::move(r));
        }
    }

    // every parameter name used by the coupling must be declared or
    // bindable later; undeclared names are legal (bound via --set)
    return p;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ProblemFile parse_problem(const std::string& path) {
    return parse_problem_text(read_file(path), path);
}

struct NamedSegment {
    std::string mode;
    double duration = 0.0;
};

/// Schedule files: JSON [{"mode": name, "duration": rat}, ...].
inline std::vector<NamedSegment> parse_schedule_text(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_array() || j.empty()) throw ParseError(origin + ": expected a nonempty array of segments");
    std::vector<NamedSegment> out;
    std::size_t i = 0;
    for (const auto& seg : j) {
        const std::string where = origin + "[" + std::to_string(i++) + "]";
        if (!seg.is_object() || !seg.contains("mode") || !seg["mode"].is_string() || !seg.contains("duration")) {
            throw ParseError(where + ": expected {\"mode\", \"duration\"}");
        }
        const Rational d = detail::json_rational(seg["duration"], where + ".duration");
        if (d <= 0) throw ParseError(where + ".duration: must be positive");
        out.push_back({seg["mode"].get<std::string>(), to_double(d)});
    }
    return out;
}

inline std::vector<NamedSegment> parse_schedule(const std::string& path) {
    return parse_schedule_text(read_file(path), path);
}

/// Certificate files: any JSON object with a top-level "certificate" array
/// of exact rationals (reports emitted by the tool qualify).
inline LinearFunctional parse_certificate(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("certificate") || !j["certificate"].is_array()) {
        throw ParseError(path + ": expected an object with a \"certificate\" array");
    }
    LinearFunctional lf;
    std::size_t i = 0;
    for (const auto& e : j["certificate"]) {
        lf.v.push_back(detail::json_rational(e, path + ": certificate[" + std::to_string(i++) + "]"));
    }
    if (lf.v.empty()) throw ParseError(path + ": empty certificate");
    return lf;
}

} // namespace conelyap
