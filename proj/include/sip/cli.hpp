#ifndef SIP_CLI_HPP
#define SIP_CLI_HPP

// Job configuration and the command implementations behind sipcli.
// Every command returns its text output and an exit code; nothing here touches argv.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "sip/extensions.hpp"
#include "sip/json_io.hpp"
#include "sip/spectra.hpp"
#include "sip/verify.hpp"

namespace sip::cli {

enum Exit : int { kPass = 0, kTolerance = 1, kConfig = 2, kNumerical = 3 };

struct GridSpec {
    double a = 0.0;
    double b = 1.0;
    std::size_t n = 0;
};

struct CouplingSource {
    std::string invariant;
    double beta = 0.0;
    double d = 0.0;
};

struct JobConfig {
    std::optional<std::string> family;
    std::optional<std::string> extension;
    std::vector<double> m;
    std::vector<CouplingSource> couplings;
    std::optional<std::string> rho_invariant;
    std::optional<double> eps;  ///< beta for harm-osc
    std::optional<double> rho;
    int ell = 0;
    bool imaginary_rho = false;
    std::optional<GridSpec> grid;
    std::optional<GridSpec> oracle;
    std::optional<int> kmax;
    std::optional<int> k;
    std::optional<double> tol;
};

struct Output {
    int code = kPass;
    std::string text;
};

namespace detail {

inline std::string num(double v) { return format_double(v); }

inline std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline double as_number(const Json& j, const std::string& what) {
    if (!j.is_number()) throw ConfigError("'" + what + "' must be a number");
    return j.get<double>();
}

inline int as_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ConfigError("'" + what + "' must be an integer");
    return j.get<int>();
}

inline std::string as_string(const Json& j, const std::string& what) {
    if (!j.is_string()) throw ConfigError("'" + what + "' must be a string");
    return j.get<std::string>();
}

inline GridSpec parse_grid_json(const Json& j, const std::string& what) {
    GridSpec g;
    if (j.is_array()) {
        if (j.size() != 3) throw ConfigError("'" + what + "' must be [a, b, N]");
        g.a = as_number(j[0], what + ".a");
        g.b = as_number(j[1], what + ".b");
        const int n = as_int(j[2], what + ".N");
        if (n < 2) throw ConfigError("'" + what + "' needs N >= 2");
        g.n = std::size_t(n);
        return g;
    }
    if (!j.is_object()) throw ConfigError("'" + what + "' must be an object {a, b, N} or an array [a, b, N]");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() != "a" && it.key() != "b" && it.key() != "N") {
            throw ConfigError("unknown key '" + what + "." + it.key() + "'");
        }
    }
    if (!j.contains("a") || !j.contains("b") || !j.contains("N")) throw ConfigError("'" + what + "' needs a, b and N");
    return parse_grid_json(Json::array({j["a"], j["b"], j["N"]}), what);
}

}  // namespace detail

/// Parse "a,b,N".
inline GridSpec parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("grid must be 'a,b,N', got '" + text + "'");
    try {
        std::size_t used = 0;
        GridSpec g;
        g.a = std::stod(parts[0], &used);
        g.b = std::stod(parts[1]);
        const long n = std::stol(parts[2], &used);
        if (used != parts[2].size() || n < 2) throw ConfigError("grid N must be an integer >= 2");
        g.n = std::size_t(n);
        return g;
    } catch (const std::logic_error&) {
        throw ConfigError("grid must be 'a,b,N', got '" + text + "'");
    }
}

/// Parse "EXPR,beta,d"; the invariant grammar has no commas, so the last two fields are split off.
inline CouplingSource parse_coupling(const std::string& text) {
    const auto c2 = text.rfind(',');
    const auto c1 = c2 == std::string::npos || c2 == 0 ? std::string::npos : text.rfind(',', c2 - 1);
    if (c1 == std::string::npos) throw ConfigError("coupling must be 'EXPR,beta,d', got '" + text + "'");
    try {
        return {text.substr(0, c1), std::stod(text.substr(c1 + 1, c2 - c1 - 1)), std::stod(text.substr(c2 + 1))};
    } catch (const std::logic_error&) {
        throw ConfigError("coupling must be 'EXPR,beta,d', got '" + text + "'");
    }
}

inline std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(p, &used));
            if (used != p.size()) throw std::invalid_argument(p);
        } catch (const std::logic_error&) {
            throw ConfigError("expected a comma-separated list of numbers, got '" + text + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty parameter list");
    return out;
}

/// Strict parse: unknown keys are configuration errors.
inline JobConfig parse_config(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    JobConfig c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const Json& v = it.value();
        if (key == "family") c.family = detail::as_string(v, key);
        else if (key == "extension") c.extension = detail::as_string(v, key);
        else if (key == "m") {
            if (!v.is_array()) throw ConfigError("'m' must be an array of numbers");
            for (const auto& x : v) c.m.push_back(detail::as_number(x, "m[]"));
        } else if (key == "couplings") {
            if (!v.is_array()) throw ConfigError("'couplings' must be an array");
            for (const auto& cj : v) {
                if (!cj.is_object()) throw ConfigError("each coupling must be an object {invariant, beta, d}");
                CouplingSource s;
                for (auto ct = cj.begin(); ct != cj.end(); ++ct) {
                    if (ct.key() == "invariant") s.invariant = detail::as_string(ct.value(), "invariant");
                    else if (ct.key() == "beta") s.beta = detail::as_number(ct.value(), "beta");
                    else if (ct.key() == "d") s.d = detail::as_number(ct.value(), "d");
                    else throw ConfigError("unknown coupling key '" + ct.key() + "'");
                }
                if (s.invariant.empty()) throw ConfigError("coupling is missing 'invariant'");
                c.couplings.push_back(s);
            }
        } else if (key == "rho_invariant") c.rho_invariant = detail::as_string(v, key);
        else if (key == "eps" || key == "beta") {
            if (c.eps) throw ConfigError("give only one of 'eps' and 'beta'");
            c.eps = detail::as_number(v, key);
        } else if (key == "rho") c.rho = detail::as_number(v, key);
        else if (key == "ell") c.ell = detail::as_int(v, key);
        else if (key == "imaginary_rho") {
            if (!v.is_boolean()) throw ConfigError("'imaginary_rho' must be true or false");
            c.imaginary_rho = v.get<bool>();
        } else if (key == "grid") c.grid = detail::parse_grid_json(v, key);
        else if (key == "oracle") c.oracle = detail::parse_grid_json(v, key);
        else if (key == "kmax") c.kmax = detail::as_int(v, key);
        else if (key == "k") c.k = detail::as_int(v, key);
        else if (key == "tol") c.tol = detail::as_number(v, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return c;
}

inline JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

/// A resolved job: a base family or an extension case.
using Target = std::variant<FamilyParams, ExtensionSpec>;

/// Checks every invariant before building anything.
inline Target resolve(const JobConfig& c) {
    if (c.family.has_value() == c.extension.has_value()) {
        throw ConfigError("give exactly one of 'family' and 'extension'");
    }
    const bool effective = c.eps.has_value() || c.rho.has_value();
    const bool constructed = !c.m.empty();
    if (effective && constructed) throw ConfigError("give either effective parameters (eps, rho) or 'm', not both");
    if (!effective && !constructed) throw ConfigError("no parameters: give 'm' with couplings, or eps and rho");
    if (effective && (!c.couplings.empty() || c.rho_invariant)) {
        throw ConfigError("couplings and rho_invariant need 'm'");
    }

    std::optional<ConstructionData> data;
    if (constructed) {
        ParamVector p(c.m);
        std::vector<Coupling> couplings;
        for (const auto& s : c.couplings) couplings.push_back({require_invariant(s.invariant, p.size()), s.beta, s.d});
        // bare "m" means the vanishing coupling I = 1, beta = d = 0, so eps = M and rho = 0
        if (couplings.empty()) couplings.push_back({require_invariant("1", p.size()), 0.0, 0.0});
        std::optional<InvariantExpr> rho_inv;
        if (c.rho_invariant) rho_inv = require_invariant(*c.rho_invariant, p.size());
        data = ConstructionData{p, std::move(couplings), std::move(rho_inv)};
    }

    if (c.family) {
        const FamilyId id = parse_family_id(*c.family);
        if (c.ell != 0 || c.imaginary_rho) throw ConfigError("'ell' and 'imaginary_rho' apply to extensions only");
        if (data) return build_family(id, *data);
        if (!c.eps) throw ConfigError(std::string(id == FamilyId::HarmOsc ? "beta" : "eps") + " is required");
        return effective_family(id, *c.eps, c.rho.value_or(0.0));
    }
    const int id = parse_extension_id(*c.extension);
    if (data) return build_extension(id, *data, c.ell, c.imaginary_rho);
    if (!c.eps) throw ConfigError("eps is required");
    return make_extension(id, *c.eps, c.rho.value_or(0.0), c.ell, c.imaginary_rho);
}

inline const FamilyParams& require_family(const Target& t, const std::string& command) {
    if (const auto* fp = std::get_if<FamilyParams>(&t)) return *fp;
    throw ConfigError(command + " needs a family, not an extension");
}

inline const ExtensionSpec& require_extension(const Target& t, const std::string& command) {
    if (const auto* s = std::get_if<ExtensionSpec>(&t)) return *s;
    throw ConfigError(command + " needs an extension (ext-1 .. ext-11), not a family");
}

inline Json target_json(const Target& t) {
    return std::visit([](const auto& x) { return to_json(x); }, t);
}

inline std::string target_label(const Target& t) {
    if (const auto* fp = std::get_if<FamilyParams>(&t)) {
        const std::string first = fp->id == FamilyId::HarmOsc ? "beta" : "eps";
        return std::string(family_key(fp->id)) + " (" + first + " = " +
               detail::short_num(fp->id == FamilyId::HarmOsc ? fp->beta : fp->eps) +
               ", rho = " + detail::short_num(fp->rho) + ")";
    }
    const auto& s = std::get<ExtensionSpec>(t);
    std::string out = std::string(extension_key(s.case_id)) + " (eps = " + detail::short_num(s.eps) +
                      ", rho = " + (s.imaginary_rho ? "i*" : "") + detail::short_num(s.rho);
    if (s.ell) out += ", l = " + std::to_string(s.ell);
    return out + ")";
}

// ---- families list ----

inline Output cmd_list(bool extensions, bool json) {
    Json rows = Json::array();
    std::string text;
    char line[200];
    for (std::size_t i = 0; i < kFamilies.size(); ++i) {
        const auto& f = kFamilies[i];
        Json r;
        r["id"] = std::string(f.key);
        r["kind"] = "family";
        r["case"] = int(i) + 1;
        r["name"] = std::string(f.name);
        r["superpotential"] = std::string(f.superpotential);
        r["generalized"] = f.generalized;
        rows.push_back(r);
        std::snprintf(line, sizeof line, "%-18s %s (case %zu)  k = %s\n", std::string(f.key).c_str(),
                      std::string(f.name).c_str(), i + 1, std::string(f.superpotential).c_str());
        text += line;
    }
    if (extensions) {
        for (const auto& e : kExtensions) {
            Json r;
            r["id"] = std::string(e.key);
            r["kind"] = "extension";
            r["case"] = e.id;
            r["name"] = std::string(e.name);
            r["base"] = std::string(e.w0);
            r["uses_ell"] = e.uses_ell;
            rows.push_back(r);
            std::snprintf(line, sizeof line, "%-18s %s  W0 = %s%s\n", std::string(e.key).c_str(),
                          std::string(e.name).c_str(), std::string(e.w0).c_str(), e.uses_ell ? "  (takes l)" : "");
            text += line;
        }
    }
    return {kPass, json ? to_json_text(rows) + "\n" : text};
}

// ---- spectrum and oracle compare ----

inline OracleSpec oracle_for(const FamilyParams& fp, const JobConfig& c) {
    OracleSpec spec = default_oracle(fp, c.oracle ? c.oracle->n : 3000);
    if (c.oracle) {
        spec.singular_a = spec.singular_a && c.oracle->a == spec.a;
        spec.singular_b = spec.singular_b && c.oracle->b == spec.b;
        spec.a = c.oracle->a;
        spec.b = c.oracle->b;
    }
    return spec;
}

inline Output spectrum_table(const Target& t, const JobConfig& c, bool with_oracle, int default_kmax, bool json,
                             const std::string& command) {
    const FamilyParams& fp = require_family(t, command);
    const int kmax = c.kmax.value_or(default_kmax);
    if (kmax < 0) throw ConfigError("--kmax must be non-negative");
    const auto range = admissible_range(fp);
    const int rows = range.unbounded ? kmax + 1 : std::min(kmax + 1, range.count);
    if (rows < 1) throw RangeError(target_label(t) + " has no admissible state");
    const double tol = c.tol.value_or(5e-3);

    std::vector<double> gaps;
    OracleSpec spec;
    if (with_oracle) {
        spec = oracle_for(fp, c);
        const auto ev = fd_spectrum(fp, spec, std::size_t(rows));
        for (double e : ev) gaps.push_back(e - ev[0]);
    }

    Json j = target_json(t);
    Json states = Json::array();
    double worst = 0.0;
    std::string text = target_label(t) + "\n";
    text += with_oracle ? " k  E_k                   oracle gap            |deviation|\n" : " k  E_k\n";
    char line[160];
    for (int k = 0; k < rows; ++k) {
        const double e = eigenenergy(fp, k) + 0.0;  // no "-0" in tables
        Json s;
        s["k"] = k;
        s["energy"] = e;
        if (with_oracle) {
            const double dev = std::abs(gaps[std::size_t(k)] - e);
            worst = std::max(worst, dev);
            s["oracle_gap"] = gaps[std::size_t(k)];
            s["deviation"] = dev;
            std::snprintf(line, sizeof line, "%2d  %-20.12g  %-20.12g  %.3e\n", k, e, gaps[std::size_t(k)], dev);
        } else {
            std::snprintf(line, sizeof line, "%2d  %.15g\n", k, e);
        }
        text += line;
        states.push_back(s);
    }
    j["admissible"] = range.unbounded ? Json("unbounded") : Json(range.count);
    j["states"] = states;
    int code = kPass;
    if (with_oracle) {
        const bool ok = worst <= tol;
        code = ok ? kPass : kTolerance;
        j["oracle"] = Json{{"a", spec.a}, {"b", spec.b}, {"N", spec.n}};
        j["max_deviation"] = worst;
        j["tol"] = tol;
        j["passed"] = ok;
        std::snprintf(line, sizeof line, "max deviation %.3e (tol %.3g) %s\n", worst, tol, ok ? "PASS" : "FAIL");
        text += line;
    }
    return {code, json ? to_json_text(j) + "\n" : text};
}

inline Output cmd_spectrum(const Target& t, const JobConfig& c, bool oracle, bool json) {
    return spectrum_table(t, c, oracle, 5, json, "spectrum");
}

inline Output cmd_oracle_compare(const Target& t, const JobConfig& c, bool json) {
    return spectrum_table(t, c, true, 2, json, "oracle compare");
}

// ---- wavefunction ----

inline Output cmd_wavefunction(const Target& t, const JobConfig& c, bool json) {
    const FamilyParams& fp = require_family(t, "wavefunction");
    const int k = c.k.value_or(0);
    const EigenState s(fp, k);
    GridSpec g;
    if (c.grid) {
        g = *c.grid;
    } else {
        const Window w = state_window(s);
        g = {w.a, w.b, 201};
    }
    if (!(g.b > g.a)) throw ConfigError("grid needs a < b");
    const double norm = overlap(s, s);
    const double imag = s.complex_path() ? imaginary_residue(s, g.a, g.b, g.n) : 0.0;

    Json j = target_json(t);
    j["k"] = k;
    j["energy"] = s.energy();
    j["norm"] = norm;
    j["imag_residue"] = imag;
    j["grid"] = Json{{"a", g.a}, {"b", g.b}, {"N", g.n}};
    Json pts = Json::array();
    std::string csv = "# " + target_label(t) + ", k = " + std::to_string(k) + "\n";
    csv += "# energy = " + detail::num(s.energy()) + ", norm = " + detail::num(norm) +
           ", imag_residue = " + detail::num(imag) + "\n";
    csv += "x,zeta,V\n";
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.a + (g.b - g.a) * double(i) / double(g.n - 1);
        const double z = s(x);
        const double v = partner_potentials(fp, x).V;
        pts.push_back(Json::array({x, z, v}));
        csv += detail::num(x) + "," + detail::num(z) + "," + detail::num(v) + "\n";
    }
    j["columns"] = Json::array({"x", "zeta", "V"});
    j["points"] = pts;
    return {kPass, json ? to_json_text(j) + "\n" : csv};
}

// ---- verify ----

inline Output finish_verify(const std::string& check, const Target& t, Json body, double value, double tol,
                            bool json) {
    const bool ok = value <= tol;
    Json j;
    j["check"] = check;
    const Json head = target_json(t);
    for (auto it = head.begin(); it != head.end(); ++it) j[it.key()] = it.value();
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    j["tol"] = tol;
    j["passed"] = ok;
    char line[200];
    std::snprintf(line, sizeof line, "%s %s: max residual %.3e (tol %.3g) %s\n", check.c_str(),
                  target_label(t).c_str(), value, tol, ok ? "PASS" : "FAIL");
    return {ok ? kPass : kTolerance, json ? to_json_text(j) + "\n" : std::string(line)};
}

inline Output cmd_verify(const Target& t, const JobConfig& c, const std::string& which, bool json) {
    const auto& g = c.grid;
    if (g && !(g->b > g->a)) throw ConfigError("grid needs a < b");
    if (which == "si") {
        const FamilyParams& fp = require_family(t, "verify si");
        const GridReport r = g ? si_residual(fp, g->a, g->b, g->n) : si_residual(fp);
        return finish_verify(which, t, to_json(r), r.max_residual, c.tol.value_or(1e-9), json);
    }
    if (which == "ladder") {
        const FamilyParams& fp = require_family(t, "verify ladder");
        const auto range = admissible_range(fp);
        const int top = range.unbounded ? c.kmax.value_or(2) : std::min(c.kmax.value_or(2), range.count - 1);
        if (top < 1) throw RangeError(target_label(t) + " has fewer than two admissible states");
        Json states = Json::array();
        double worst = 0.0;
        for (int k = 1; k <= top; ++k) {
            const LadderReport r = g ? ladder_check(fp, k, g->a, g->b, g->n) : ladder_check(fp, k);
            Json s;
            s["k"] = k;
            s["sign"] = r.sign;
            const Json grid = to_json(r.grid);
            for (auto it = grid.begin(); it != grid.end(); ++it) s[it.key()] = it.value();
            states.push_back(s);
            worst = std::max(worst, r.grid.max_residual);
        }
        Json body;
        body["residual_max"] = worst;
        body["states"] = states;
        return finish_verify(which, t, body, worst, c.tol.value_or(1e-5), json);
    }
    if (which == "orthonormal") {
        const FamilyParams& fp = require_family(t, "verify orthonormal");
        const auto range = admissible_range(fp);
        const int kmax = c.kmax.value_or(3);
        const int count = range.unbounded ? kmax + 1 : std::min(kmax + 1, range.count);
        if (count < 1) throw RangeError(target_label(t) + " has no admissible state");
        const auto gm = gram_matrix(fp, count);
        double worst = 0.0;
        Json rows = Json::array();
        for (int i = 0; i < count; ++i) {
            Json row = Json::array();
            for (int jj = 0; jj < count; ++jj) {
                row.push_back(gm[std::size_t(i)][std::size_t(jj)]);
                worst = std::max(worst, std::abs(gm[std::size_t(i)][std::size_t(jj)] - (i == jj ? 1.0 : 0.0)));
            }
            rows.push_back(row);
        }
        Json body;
        body["states"] = count;
        body["residual_max"] = worst;
        body["gram"] = rows;
        return finish_verify(which, t, body, worst, c.tol.value_or(1e-6), json);
    }
    if (which == "cond1" || which == "cond2" || which == "ext-si") {
        const ExtensionSpec& s = require_extension(t, "verify " + which);
        GridReport r;
        double tol = 0.0;
        if (which == "cond1") {
            r = g ? check_cond1(s, g->a, g->b, g->n) : check_cond1(s);
            tol = 1e-8;
        } else if (which == "cond2") {
            r = g ? check_cond2(s, g->a, g->b, g->n) : check_cond2(s);
            tol = 1e-10;
        } else {
            r = g ? extended_si_check(s, g->a, g->b, g->n) : extended_si_check(s);
            tol = 1e-7;
        }
        return finish_verify(which, t, to_json(r), r.max_residual, c.tol.value_or(tol), json);
    }
    throw ConfigError("unknown check '" + which + "' (si, cond1, cond2, ext-si, ladder, orthonormal)");
}

/// Run a command body and map library errors to exit codes.
template <class F>
Output guarded(F&& body) {
    try {
        return body();
    } catch (const NumericalError& e) {
        return {kNumerical, std::string("numerical failure: ") + e.what() + "\n"};
    } catch (const Error& e) {
        return {kConfig, std::string("error: ") + e.what() + "\n"};
    }
}

}  // namespace sip::cli

#endif  // SIP_CLI_HPP
