#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "emset/eval.hpp"
#include "emset/model.hpp"
#include "emset/numeric.hpp"

namespace emset::io {

using nlohmann::json;

inline constexpr const char* kSchema = "emset-config/1";
inline constexpr const char* kToolVersion = "0.1.0";

// CLI exit codes; 0 is success.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kDomainError = 3,
    kPrecisionError = 4,
    kSizeError = 5,
};

/// Model input: an expansive spec or a raw weight vector (c_1..c_K held
/// exactly; decimal and p/q literals both round-trip).
struct SpecDocument {
    std::optional<model::ExpansiveSpec> spec;
    std::vector<Rational> raw;
    json echo;

    bool is_raw() const { return !spec.has_value(); }
    bool exact_eligible() const { return is_raw() ? true : spec->exact_eligible(); }
};

inline void require_keys(const json& j, std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional_keys,
                         const std::string& where) {
    for (const char* k : required)
        if (!j.contains(k)) throw ConfigError(where + ": missing key '" + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : required)
            if (it.key() == k) known = true;
        for (const char* k : optional_keys)
            if (it.key() == k) known = true;
        if (!known) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

inline Rational rational_field(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_string()) return num::parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) {
        // floats in configs are treated as their decimal text to stay exact
        std::ostringstream os;
        os << v;
        return num::parse_rational(os.str());
    }
    throw ConfigError(std::string("field '") + key + "' must be a number or numeric string");
}

inline model::SlowlyVarying parse_sv(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("h: expected {kind, ...}");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        require_keys(j, {"kind", "c"}, {}, "h.constant");
        return model::SlowlyVarying::constant(rational_field(j, "c"));
    }
    if (kind == "log_power") {
        require_keys(j, {"kind", "beta"}, {}, "h.log_power");
        return model::SlowlyVarying::log_power(j.at("beta").get<double>());
    }
    if (kind == "product") {
        require_keys(j, {"kind", "factors"}, {}, "h.product");
        std::vector<model::SlowlyVarying> fs;
        for (const auto& f : j.at("factors")) fs.push_back(parse_sv(f));
        if (fs.empty()) throw ConfigError("h.product: needs at least one factor");
        return model::SlowlyVarying::product(std::move(fs));
    }
    throw ConfigError("h: unknown kind '" + kind + "'");
}

inline json sv_to_json(const model::SlowlyVarying& h) {
    using K = model::SlowlyVarying::Kind;
    json j;
    switch (h.kind()) {
        case K::Constant:
            j["kind"] = "constant";
            j["c"] = h.param_q().get_str();
            break;
        case K::LogPower:
            j["kind"] = "log_power";
            j["beta"] = h.param();
            break;
        case K::Product: {
            j["kind"] = "product";
            j["factors"] = json::array();
            for (const auto& f : h.factors()) j["factors"].push_back(sv_to_json(f));
            break;
        }
    }
    return j;
}

inline SpecDocument parse_spec(const json& j) {
    SpecDocument doc;
    doc.echo = j;
    if (j.contains("raw")) {
        require_keys(j, {"raw"}, {}, "spec");
        for (const auto& v : j.at("raw")) {
            if (v.is_string())
                doc.raw.push_back(num::parse_rational(v.get<std::string>()));
            else if (v.is_number_integer())
                doc.raw.push_back(Rational(v.get<long>()));
            else
                throw ConfigError("spec.raw: entries must be integers or numeric strings");
        }
        if (doc.raw.empty()) throw ConfigError("spec.raw: empty weight vector");
        return doc;
    }
    require_keys(j, {"alpha", "rho", "m", "h"}, {}, "spec");
    doc.spec.emplace(rational_field(j, "alpha"), rational_field(j, "rho"), parse_sv(j.at("h")),
                     j.at("m").get<unsigned>());
    return doc;
}

inline json spec_to_json(const SpecDocument& doc) {
    json j;
    if (doc.is_raw()) {
        j["raw"] = json::array();
        for (const auto& q : doc.raw) j["raw"].push_back(q.get_str());
        return j;
    }
    j["alpha"] = doc.spec->alpha_q.get_str();
    j["rho"] = doc.spec->rho_q.get_str();
    j["m"] = doc.spec->m;
    j["h"] = sv_to_json(doc.spec->h);
    return j;
}

template <class T>
saddle::Evaluator<T> make_evaluator(const SpecDocument& doc) {
    if (doc.is_raw()) {
        std::vector<T> w;
        for (const auto& q : doc.raw) w.push_back(num::from_rational<T>(q));
        return saddle::Evaluator<T>(series::from_raw<T>(std::move(w)));
    }
    return saddle::Evaluator<T>(*doc.spec);
}

// ---- value formatting: full round-trip precision -------------------------

inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
inline std::string format_real(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.21Lg", v);
    return buf;
}
inline std::string format_real(const BigReal& v) { return v.str(); }
inline std::string format_real(const Rational& v) { return v.get_str(); }

/// Rows of named string fields, emitted as CSV or a JSON record array.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> r) { rows.push_back(std::move(r)); }

    std::string to_csv() const {
        std::ostringstream os;
        for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        }
        return os.str();
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& r : rows) {
            json rec;
            for (size_t i = 0; i < header.size() && i < r.size(); ++i) rec[header[i]] = r[i];
            arr.push_back(rec);
        }
        return arr;
    }
};

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + path);
    os << content;
}

/// Every run emits a manifest next to its outputs: config echo, tool
/// version, arithmetic mode, wall time, output digests. Replaying the same
/// manifest reproduces byte-identical outputs.
struct RunManifest {
    json config_echo;
    std::string arithmetic_mode;
    double wall_time_s = 0;
    std::vector<std::pair<std::string, std::uint64_t>> outputs;

    json to_json() const {
        json j;
        j["tool_version"] = kToolVersion;
        j["config"] = config_echo;
        j["arithmetic_mode"] = arithmetic_mode;
        j["wall_time_s"] = wall_time_s;
        j["outputs"] = json::array();
        for (const auto& [path, digest] : outputs) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
            j["outputs"].push_back({{"path", path}, {"fnv1a64", buf}});
        }
        return j;
    }
};

}  // namespace emset::io
