#ifndef SIP_JSON_IO_HPP
#define SIP_JSON_IO_HPP

// JSON output with a fixed field order and every float printed as %.17g.

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "sip/extensions.hpp"
#include "sip/families.hpp"
#include "sip/invariants.hpp"
#include "sip/verify.hpp"

namespace sip {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

namespace detail {

inline void write_json(const Json& j, std::string& out, int indent, int level) {
    const std::string pad = indent > 0 ? std::string(std::size_t(indent * (level + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(std::size_t(indent * level), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    const char* sep = indent > 0 ? ": " : ":";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad + Json(it.key()).dump() + sep;
                write_json(it.value(), out, indent, level + 1);
            }
            out += nl + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[";
            out += nl;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) {
                    out += ",";
                    out += nl;
                }
                out += pad;
                write_json(j[i], out, indent, level + 1);
            }
            out += nl + close_pad + "]";
            return;
        }
        case Json::value_t::number_float: out += format_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace detail

/// Serialize with %.17g floats; non-finite floats become null.
inline std::string to_json_text(const Json& j, int indent = 2) {
    std::string out;
    detail::write_json(j, out, indent, 0);
    return out;
}

inline Json to_json(const GridReport& r) {
    Json j;
    j["residual_max"] = r.max_residual;
    j["residual_mean"] = r.mean_residual;
    j["argmax_x"] = r.argmax_x;
    j["points_used"] = r.points_used;
    j["points_excluded"] = r.points_excluded;
    j["grid"] = Json{{"a", r.a}, {"b", r.b}, {"N", r.n}};
    return j;
}

inline Json to_json(const Violation& v) {
    Json j;
    j["expr"] = v.expr;
    j["m"] = Json::array();
    for (double x : v.m) j["m"].push_back(x);
    j["shift"] = v.shift;
    j["delta"] = v.delta;
    return j;
}

inline Json to_json(const FamilyParams& fp) {
    Json j;
    j["family"] = std::string(family_key(fp.id));
    if (fp.id == FamilyId::HarmOsc) j["beta"] = fp.beta;
    else j["eps"] = fp.eps;
    j["rho"] = fp.rho;
    j["alpha"] = fp.alpha;
    return j;
}

inline Json to_json(const ExtensionSpec& s) {
    Json j;
    j["extension"] = std::string(extension_key(s.case_id));
    j["eps"] = s.eps;
    j["rho"] = s.rho;
    if (extension_info(s.case_id).uses_ell) j["ell"] = s.ell;
    if (s.case_id == 11) j["imaginary_rho"] = s.imaginary_rho;
    return j;
}

}  // namespace sip

#endif  // SIP_JSON_IO_HPP
