#ifndef SIP_FAMILIES_HPP
#define SIP_FAMILIES_HPP

// The thirteen analytic superpotential families k(x) = sum_j I_j v_j(x) + M G(x)
// (eight base families) and k(x) = eps G(x) + rho/eps (five generalized ones),
// with their effective parameters, partner potentials and remainders.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sip/error.hpp"
#include "sip/invariants.hpp"

namespace sip {

enum class FamilyId {
    Scarf2,
    PoschlTeller,
    Morse,
    MorseMirror,
    RadialOsc,
    HarmOsc,
    Scarf1,
    Scarf1Cot,
    RosenMorse2,
    Eckart,
    Coulomb,
    RosenMorse1,
    RosenMorse1Cot,
};

struct FamilyInfo {
    FamilyId id;
    std::string_view key;
    std::string_view name;
    std::string_view superpotential;
    double alpha;      ///< right-hand side of G' + G^2 = alpha
    bool generalized;  ///< k = eps G + rho/eps rather than the linear combination
};

inline constexpr std::array<FamilyInfo, 13> kFamilies = {{
    {FamilyId::Scarf2, "scarf2", "Scarf II type", "eps tanh(x) + rho sech(x)", 1.0, false},
    {FamilyId::PoschlTeller, "poschl-teller", "Poschl-Teller type", "eps coth(x) - rho csch(x)", 1.0, false},
    {FamilyId::Morse, "morse", "Morse type", "eps - rho exp(-x)", 1.0, false},
    {FamilyId::MorseMirror, "morse-mirror", "mirrored Morse type", "-eps - rho exp(x)", 1.0, false},
    {FamilyId::RadialOsc, "radial-osc", "radial oscillator type", "eps/x + rho x", 0.0, false},
    {FamilyId::HarmOsc, "harm-osc", "harmonic oscillator type", "beta x + rho", 0.0, false},
    {FamilyId::Scarf1, "scarf1", "Scarf I type", "-eps tan(x) - rho sec(x)", -1.0, false},
    {FamilyId::Scarf1Cot, "scarf1-cot", "Scarf I type, cot form", "eps cot(x) + rho csc(x)", -1.0, false},
    {FamilyId::RosenMorse2, "rosen-morse2", "Rosen-Morse II type", "eps tanh(x) + rho/eps", 1.0, true},
    {FamilyId::Eckart, "eckart", "Eckart type", "eps coth(x) + rho/eps", 1.0, true},
    {FamilyId::Coulomb, "coulomb", "Coulomb type", "eps/x + rho/eps", 0.0, true},
    {FamilyId::RosenMorse1, "rosen-morse1", "Rosen-Morse I type", "-eps tan(x) + rho/eps", -1.0, true},
    {FamilyId::RosenMorse1Cot, "rosen-morse1-cot", "Rosen-Morse I type, cot form", "eps cot(x) + rho/eps", -1.0,
     true},
}};

inline const FamilyInfo& family_info(FamilyId id) { return kFamilies[static_cast<std::size_t>(id)]; }
inline std::string_view family_key(FamilyId id) { return family_info(id).key; }

inline FamilyId parse_family_id(std::string_view key) {
    for (const auto& f : kFamilies) {
        if (f.key == key) return f.id;
    }
    throw ConfigError("unknown family '" + std::string(key) + "'");
}

/// Open interval (lo, hi); `delta` is the margin kept from finite (singular) endpoints.
struct Domain {
    double lo;
    double hi;
    double delta;

    bool contains(double x) const { return x > lo && x < hi; }
    bool finite_lo() const { return std::isfinite(lo); }
    bool finite_hi() const { return std::isfinite(hi); }
};

inline Domain family_domain(FamilyId id) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr double pi = std::numbers::pi;
    switch (id) {
        case FamilyId::Scarf2:
        case FamilyId::Morse:
        case FamilyId::MorseMirror:
        case FamilyId::HarmOsc:
        case FamilyId::RosenMorse2: return {-inf, inf, 1e-3};
        case FamilyId::PoschlTeller:
        case FamilyId::RadialOsc:
        case FamilyId::Eckart:
        case FamilyId::Coulomb: return {0.0, inf, 1e-3};
        case FamilyId::Scarf1:
        case FamilyId::RosenMorse1: return {-pi / 2, pi / 2, 1e-3 * pi};
        case FamilyId::Scarf1Cot:
        case FamilyId::RosenMorse1Cot: return {0.0, pi, 1e-3 * pi};
    }
    return {-inf, inf, 1e-3};
}

/// A finite sampling window: infinite ends cut at +-8 (20 for Coulomb), finite ends moved in by delta.
struct Window {
    double a;
    double b;
};

inline Window default_window(FamilyId id) {
    const Domain d = family_domain(id);
    const double far = id == FamilyId::Coulomb ? 20.0 : 8.0;
    return {d.finite_lo() ? d.lo + d.delta : -far, d.finite_hi() ? d.hi - d.delta : far};
}

/// One term I_j v_j of the superpotential: the invariant with its constants beta_j, d_j.
struct Coupling {
    InvariantExpr invariant;
    double beta = 0.0;
    double d = 0.0;
};

/// Raw construction input: parameters, couplings and (generalized families only) the rho invariant.
struct ConstructionData {
    ParamVector p;
    std::vector<Coupling> couplings;
    std::optional<InvariantExpr> rho_invariant;
};

/// Effective parameters of one family. `eps` is unused for HarmOsc, `beta` only used there.
struct FamilyParams {
    FamilyId id = FamilyId::Scarf2;
    double eps = 0.0;
    double rho = 0.0;
    double beta = 0.0;
    double alpha = 1.0;
    std::optional<ConstructionData> provenance;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

inline void require(bool ok, FamilyId id, const std::string& inequality, const std::string& values) {
    if (!ok) {
        throw RangeError(std::string(family_key(id)) + ": requires " + inequality + " (" + values + ")");
    }
}

}  // namespace detail

/// Check the family's parameter range; throws RangeError naming the violated inequality.
inline void validate_range(const FamilyParams& fp) {
    const double e = fp.eps, r = fp.rho;
    const auto id = fp.id;
    const std::string er = "eps=" + detail::fmt(e) + ", rho=" + detail::fmt(r);
    if (!std::isfinite(e) || !std::isfinite(r) || !std::isfinite(fp.beta)) {
        throw RangeError(std::string(family_key(id)) + ": parameters must be finite");
    }
    if (family_info(id).generalized) detail::require(e != 0.0, id, "eps != 0", er);
    switch (id) {
        case FamilyId::Scarf2: detail::require(e > 0.0, id, "eps > 0", er); break;
        case FamilyId::PoschlTeller:
            detail::require(e - r < 0.5, id, "eps - rho < 1/2", er);
            detail::require(e > 0.0, id, "eps > 0", er);
            break;
        case FamilyId::Morse:
            detail::require(e > 0.0, id, "eps > 0", er);
            detail::require(r > 0.0, id, "rho > 0", er);
            break;
        case FamilyId::MorseMirror:
            detail::require(e > 0.0, id, "eps > 0", er);
            detail::require(r < 0.0, id, "rho < 0", er);
            break;
        case FamilyId::RadialOsc:
            detail::require(e < 0.5, id, "eps < 1/2", er);
            detail::require(r > 0.0, id, "rho > 0", er);
            break;
        case FamilyId::HarmOsc:
            detail::require(fp.beta > 0.0, id, "beta > 0", "beta=" + detail::fmt(fp.beta));
            break;
        case FamilyId::Scarf1:
        case FamilyId::Scarf1Cot:
            detail::require(e < 0.5, id, "eps < 1/2", er);
            detail::require((2 * e - 1) / 2 < r && r < (1 - 2 * e) / 2, id, "(2 eps - 1)/2 < rho < (1 - 2 eps)/2", er);
            break;
        case FamilyId::RosenMorse2:
            detail::require(e > r / e, id, "eps > rho/eps", er);
            detail::require(e + r / e > 0.0, id, "eps + rho/eps > 0", er);
            break;
        case FamilyId::Eckart:
            detail::require(e < 0.5, id, "eps < 1/2", er);
            detail::require(e + r / e > 0.0, id, "eps + rho/eps > 0", er);
            break;
        case FamilyId::Coulomb:
            detail::require(e < 0.5, id, "eps < 1/2", er);
            detail::require(r / e > 0.0, id, "rho/eps > 0", er);
            break;
        case FamilyId::RosenMorse1:
        case FamilyId::RosenMorse1Cot: detail::require(e < 0.5, id, "eps < 1/2", er); break;
    }
}

/// Build directly from effective parameters. For HarmOsc `first` is beta, otherwise eps.
inline FamilyParams effective_family(FamilyId id, double first, double rho) {
    FamilyParams fp;
    fp.id = id;
    fp.alpha = family_info(id).alpha;
    if (id == FamilyId::HarmOsc) fp.beta = first;
    else fp.eps = first;
    fp.rho = rho;
    validate_range(fp);
    return fp;
}

namespace detail {

// Folding without the range check; the extension cases reuse it.
inline FamilyParams fold(FamilyId id, const ConstructionData& data) {
    if (data.couplings.empty()) throw ConfigError("at least one coupling (I_j, beta_j, d_j) is required");
    const bool gen = family_info(id).generalized;
    if (gen && !data.rho_invariant) throw ConfigError(std::string(family_key(id)) + " needs a rho invariant");
    if (!gen && data.rho_invariant) {
        throw ConfigError("a rho invariant only applies to the generalized families, not " +
                          std::string(family_key(id)));
    }
    auto check_expr = [&](const InvariantExpr& e) {
        if (!e.verified()) throw ConfigError("invariant '" + e.source() + "' has not been verified");
        if (std::size_t(e.max_index()) > data.p.size()) {
            throw RangeError("invariant '" + e.source() + "' references m" + std::to_string(e.max_index()) +
                             " but only " + std::to_string(data.p.size()) + " parameters are given");
        }
    };
    double sum_beta = 0.0, sum_d = 0.0;
    for (const auto& c : data.couplings) {
        check_expr(c.invariant);
        if (!std::isfinite(c.beta) || !std::isfinite(c.d)) throw RangeError("coupling constants must be finite");
        const double I = c.invariant(data.p);
        if (!std::isfinite(I)) throw NumericalError("invariant '" + c.invariant.source() + "' is not finite");
        sum_beta += c.beta * I;
        sum_d += c.d * I;
    }
    const double M = data.p.mean();
    FamilyParams fp;
    fp.id = id;
    fp.alpha = family_info(id).alpha;
    switch (id) {
        case FamilyId::Scarf2:
        case FamilyId::PoschlTeller:
        case FamilyId::Morse:
        case FamilyId::MorseMirror:
            fp.eps = M + sum_beta;
            fp.rho = sum_d;
            break;
        case FamilyId::RadialOsc:
            fp.eps = M + sum_d;
            fp.rho = 0.5 * sum_beta;
            break;
        case FamilyId::HarmOsc:
            fp.beta = sum_beta;
            fp.rho = sum_d;
            break;
        case FamilyId::Scarf1:
        case FamilyId::Scarf1Cot:
            fp.eps = M - sum_beta;
            fp.rho = sum_d;
            break;
        default:
            check_expr(*data.rho_invariant);
            fp.eps = M + sum_d;
            fp.rho = (*data.rho_invariant)(data.p);
            break;
    }
    fp.provenance = data;
    return fp;
}

}  // namespace detail

/// Fold (M, I_j, beta_j, d_j) into the family's effective parameters, summing over j.
inline FamilyParams build_family(FamilyId id, const ConstructionData& data) {
    FamilyParams fp = detail::fold(id, data);
    validate_range(fp);
    return fp;
}

/// Shift every m_i by -t and rebuild; without provenance eps simply drops by t.
inline FamilyParams translate_family(const FamilyParams& fp, int t) {
    if (t < 1) throw RangeError("translation step must be a positive integer");
    if (fp.provenance) {
        ConstructionData moved = *fp.provenance;
        moved.p = moved.p.translate(double(t));
        return build_family(fp.id, moved);
    }
    FamilyParams out = fp;
    if (fp.id != FamilyId::HarmOsc) out.eps = fp.eps - t;
    validate_range(out);
    return out;
}

struct KValue {
    double value;
    double derivative;
};

namespace detail {

inline void check_inside(const FamilyParams& fp, double x) {
    const Domain d = family_domain(fp.id);
    if (!std::isfinite(x) || !d.contains(x)) {
        throw DomainError("x = " + fmt(x) + " is outside the domain of " + std::string(family_key(fp.id)));
    }
}

}  // namespace detail

/// k(x) and k'(x) in closed form.
inline KValue superpotential(const FamilyParams& fp, double x) {
    detail::check_inside(fp, x);
    const double e = fp.eps, r = fp.rho;
    switch (fp.id) {
        case FamilyId::Scarf2: {
            const double t = std::tanh(x), s = 1.0 / std::cosh(x);
            return {e * t + r * s, e * s * s - r * s * t};
        }
        case FamilyId::PoschlTeller: {
            const double c = 1.0 / std::tanh(x), s = 1.0 / std::sinh(x);
            return {e * c - r * s, -e * s * s + r * s * c};
        }
        case FamilyId::Morse: {
            const double ex = std::exp(-x);
            return {e - r * ex, r * ex};
        }
        case FamilyId::MorseMirror: {
            const double ex = std::exp(x);
            return {-e - r * ex, -r * ex};
        }
        case FamilyId::RadialOsc: return {e / x + r * x, -e / (x * x) + r};
        case FamilyId::HarmOsc: return {fp.beta * x + r, fp.beta};
        case FamilyId::Scarf1: {
            const double t = std::tan(x), s = 1.0 / std::cos(x);
            return {-e * t - r * s, -e * s * s - r * s * t};
        }
        case FamilyId::Scarf1Cot: {
            const double c = 1.0 / std::tan(x), s = 1.0 / std::sin(x);
            return {e * c + r * s, -e * s * s - r * s * c};
        }
        case FamilyId::RosenMorse2: {
            const double t = std::tanh(x), s = 1.0 / std::cosh(x);
            return {e * t + r / e, e * s * s};
        }
        case FamilyId::Eckart: {
            const double s = 1.0 / std::sinh(x);
            return {e / std::tanh(x) + r / e, -e * s * s};
        }
        case FamilyId::Coulomb: return {e / x + r / e, -e / (x * x)};
        case FamilyId::RosenMorse1: {
            const double s = 1.0 / std::cos(x);
            return {-e * std::tan(x) + r / e, -e * s * s};
        }
        case FamilyId::RosenMorse1Cot: {
            const double s = 1.0 / std::sin(x);
            return {e / std::tan(x) + r / e, -e * s * s};
        }
    }
    return {0.0, 0.0};
}

struct Partners {
    double V;       ///< k^2 - k'
    double Vtilde;  ///< k^2 + k'
};

inline Partners partner_potentials(const FamilyParams& fp, double x) {
    const KValue k = superpotential(fp, x);
    return {k.value * k.value - k.derivative, k.value * k.value + k.derivative};
}

/// The family's remainder R(eps, rho) so that Vtilde(x; eps) = V(x; eps - 1) + R(eps - 1).
inline double remainder(const FamilyParams& fp) {
    const double e = fp.eps, r = fp.rho;
    const double gen = (2 * e + 1) * r * r / (e * e * (e + 1) * (e + 1));
    switch (fp.id) {
        case FamilyId::Scarf2:
        case FamilyId::PoschlTeller:
        case FamilyId::Morse:
        case FamilyId::MorseMirror: return 2 * e + 1;
        case FamilyId::RadialOsc: return 4 * r;
        case FamilyId::HarmOsc: return 2 * fp.beta;
        case FamilyId::Scarf1:
        case FamilyId::Scarf1Cot: return -2 * e - 1;
        case FamilyId::RosenMorse2:
        case FamilyId::Eckart: return 1 + 2 * e - gen;
        case FamilyId::Coulomb: return -gen;
        case FamilyId::RosenMorse1:
        case FamilyId::RosenMorse1Cot: return -1 - 2 * e - gen;
    }
    return 0.0;
}

/// (2M + 1) alpha + 2 sum_j beta_j I_j, defined for the base families built from construction data.
inline double remainder_from_construction(const FamilyParams& fp) {
    if (family_info(fp.id).generalized) {
        throw ConfigError("the construction remainder applies to the base families only");
    }
    if (!fp.provenance) throw ConfigError("family was not built from construction data");
    const auto& data = *fp.provenance;
    double s = 0.0;
    for (const auto& c : data.couplings) s += c.beta * c.invariant(data.p);
    return (2 * data.p.mean() + 1) * fp.alpha + 2 * s;
}

/// G, v_beta, v_d and their derivatives, so that v_j = beta_j v_beta + d_j v_d.
/// Generalized families only carry G (their v terms are absent).
struct RiccatiBasis {
    double G, dG;
    double vb, dvb;
    double vd, dvd;
    double alpha;
};

inline RiccatiBasis riccati_basis(FamilyId id, double x) {
    const double a = family_info(id).alpha;
    switch (id) {
        case FamilyId::Scarf2:
        case FamilyId::RosenMorse2: {
            const double t = std::tanh(x), s = 1.0 / std::cosh(x);
            return {t, s * s, t, s * s, s, -s * t, a};
        }
        case FamilyId::PoschlTeller:
        case FamilyId::Eckart: {
            const double c = 1.0 / std::tanh(x), s = 1.0 / std::sinh(x);
            return {c, -s * s, c, -s * s, -s, s * c, a};
        }
        case FamilyId::Morse: {
            const double ex = std::exp(-x);
            return {1.0, 0.0, 1.0, 0.0, -ex, ex, a};
        }
        case FamilyId::MorseMirror: {
            const double ex = std::exp(x);
            return {-1.0, 0.0, -1.0, 0.0, -ex, -ex, a};
        }
        case FamilyId::RadialOsc:
        case FamilyId::Coulomb: return {1.0 / x, -1.0 / (x * x), 0.5 * x, 0.5, 1.0 / x, -1.0 / (x * x), a};
        case FamilyId::HarmOsc: return {0.0, 0.0, x, 1.0, 1.0, 0.0, a};
        case FamilyId::Scarf1:
        case FamilyId::RosenMorse1: {
            const double t = std::tan(x), s = 1.0 / std::cos(x);
            return {-t, -s * s, t, s * s, -s, -s * t, a};
        }
        case FamilyId::Scarf1Cot:
        case FamilyId::RosenMorse1Cot: {
            const double c = 1.0 / std::tan(x), s = 1.0 / std::sin(x);
            return {c, -s * s, -c, s * s, s, -s * c, a};
        }
    }
    return {};
}

enum class Classic { PT1, PT2 };

struct Reconstruction {
    double lhs;  ///< M G(x) + I_1 v_1(x)
    double rhs;  ///< the two-parameter closed form
};

/// Two-parameter Poschl-Teller superpotentials rebuilt from M = (m1+m2)/2, I_1 = (m2-m1)/2
/// with G = 2 coth 2x, v_1 = 2 csch 2x (PT2) or G = 2 cot 2x, v_1 = 2 csc 2x (PT1).
inline Reconstruction classic_reconstruction(Classic which, double m1, double m2, double x) {
    const double M = 0.5 * (m1 + m2), I1 = 0.5 * (m2 - m1);
    if (which == Classic::PT2) {
        if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("PT2 reconstruction needs x > 0");
        const double G = 2.0 / std::tanh(2 * x), v = 2.0 / std::sinh(2 * x);
        return {M * G + I1 * v, m1 * std::tanh(x) + m2 / std::tanh(x)};
    }
    if (!(x > 0.0 && x < std::numbers::pi / 2)) throw DomainError("PT1 reconstruction needs 0 < x < pi/2");
    const double G = 2.0 / std::tan(2 * x), v = 2.0 / std::sin(2 * x);
    return {M * G + I1 * v, -m1 * std::tan(x) + m2 / std::tan(x)};
}

}  // namespace sip

#endif  // SIP_FAMILIES_HPP
