#ifndef SIP_EXTENSIONS_HPP
#define SIP_EXTENSIONS_HPP

// Rational extensions W = W0 + W1+ - W1- of the base superpotentials, with the gauge
// function f fixed to zero. Everything is evaluated in complex forward-mode arithmetic;
// only ext-11 produces complex values.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sip/dual.hpp"
#include "sip/error.hpp"
#include "sip/families.hpp"
#include "sip/specfun.hpp"
#include "sip/verify.hpp"

namespace sip {

struct ExtensionInfo {
    int id;
    std::string_view key;
    std::string_view name;
    std::string_view w0;
    FamilyId fold;  ///< base family whose parameter folding supplies (eps, rho)
    bool uses_rho;
    bool uses_ell;
};

inline constexpr int kExtensionCount = 11;
inline constexpr int kMaxEll = 8;

inline constexpr std::array<ExtensionInfo, kExtensionCount> kExtensions = {{
    {1, "ext-1", "Poschl-Teller type, rational", "eps coth(x) - rho csch(x)", FamilyId::PoschlTeller, true, false},
    {2, "ext-2", "Poschl-Teller type, Jacobi ratio", "eps coth(x) - rho csch(x)", FamilyId::PoschlTeller, true, true},
    {3, "ext-3", "Poschl-Teller type in 2x, Jacobi ratio", "2(eps+l) coth(2x) + 2 rho csch(2x)",
     FamilyId::PoschlTeller, true, true},
    {4, "ext-4", "radial oscillator type, rational", "eps/x + rho x", FamilyId::RadialOsc, true, false},
    {5, "ext-5", "radial oscillator type, Laguerre ratio", "eps/x + rho x", FamilyId::RadialOsc, true, true},
    {6, "ext-6", "radial oscillator type, Laguerre ratio in -x^2", "(eps+l)/x - x", FamilyId::RadialOsc, false,
     true},
    {7, "ext-7", "radial oscillator type, 1F1 ratio", "(eps+l)/x - x", FamilyId::RadialOsc, false, true},
    {8, "ext-8", "Scarf I type, rational", "-eps tan(x) - rho sec(x)", FamilyId::Scarf1, true, false},
    {9, "ext-9", "trigonometric Poschl-Teller type, Jacobi ratio", "2(eps+l) cot(2x) - 2 rho csc(2x)",
     FamilyId::Scarf1Cot, true, true},
    {10, "ext-10", "trigonometric Poschl-Teller type, 2F1 ratio", "2 eps cot(2x) + 2 rho csc(2x)",
     FamilyId::Scarf1Cot, true, true},
    {11, "ext-11", "Scarf II type, complex Jacobi ratio", "eps tanh(x) + i rho sech(x)", FamilyId::Scarf2, true,
     true},
}};

inline const ExtensionInfo& extension_info(int id) {
    if (id < 1 || id > kExtensionCount) throw ConfigError("extension case must be 1..11, got " + std::to_string(id));
    return kExtensions[std::size_t(id - 1)];
}

inline std::string_view extension_key(int id) { return extension_info(id).key; }

inline int parse_extension_id(std::string_view key) {
    for (const auto& e : kExtensions) {
        if (e.key == key) return e.id;
    }
    throw ConfigError("unknown extension '" + std::string(key) + "'");
}

inline Domain extension_domain(int id) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr double pi = std::numbers::pi;
    extension_info(id);
    if (id <= 7) return {0.0, inf, 1e-3};
    if (id == 8) return {-pi / 2, pi / 2, 1e-3 * pi};
    if (id <= 10) return {0.0, pi / 2, 1e-3 * pi};
    return {-inf, inf, 1e-3};
}

inline Window extension_window(int id) {
    const Domain d = extension_domain(id);
    return {d.finite_lo() ? d.lo + d.delta : -8.0, d.finite_hi() ? d.hi - d.delta : 8.0};
}

struct ExtensionSpec {
    int case_id = 1;
    double eps = 0.0;
    double rho = 0.0;
    int ell = 0;                 ///< 0 for the cases without a degree
    bool imaginary_rho = false;  ///< ext-11 only: use i*rho in place of rho
    std::optional<ConstructionData> provenance;
};

/// W0, W1+, W1- with derivatives, and the two denominators checked for roots.
struct ExtensionParts {
    Dual<Complex> w0, wp, wm;
    Complex den_p, den_m;
};

namespace detail {

using CD = Dual<Complex>;

inline CD cd(double v) { return CD(Complex(v, 0.0)); }

inline ExtensionParts extension_parts(const ExtensionSpec& s, double xr) {
    const CD x = CD::variable(Complex(xr, 0.0));
    const double e = s.eps;
    const int l = s.ell;
    const double L = l;
    ExtensionParts out;
    auto jac = [](int k, double a, double b, const CD& z) { return jacobi_p(k, cd(a), cd(b), z); };
    switch (s.case_id) {
        case 1: {
            const double r = s.rho;
            const CD sh = sinh(x), ch = cosh(x);
            out.w0 = e * cosh(x) / sh - r / sh;
            const CD dp = (2 * e + 1) - 2 * r * ch, dm = (2 * e - 1) - 2 * r * ch;
            out.wp = -2 * r * sh / dp;
            out.wm = -2 * r * sh / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 2: {
            const double r = s.rho;
            const CD sh = sinh(x), ch = cosh(x);
            out.w0 = e * ch / sh - r / sh;
            const CD dp = jac(l, -0.5 + e - r, -1.5 - e - r, ch), dm = jac(l, -1.5 + e - r, -0.5 - e - r, ch);
            const double c = 0.5 * (L - 2 * r - 1);
            out.wp = c * sh * jac(l - 1, 0.5 + e - r, -0.5 - e - r, ch) / dp;
            out.wm = c * sh * jac(l - 1, -0.5 + e - r, 0.5 - e - r, ch) / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 3: {
            const double r = s.rho;
            const CD sh = sinh(2 * x), ch = cosh(2 * x);
            out.w0 = 2 * (L + e) * ch / sh + 2 * r / sh;
            const CD dp = jac(l, -1.5 - L - e - r, -0.5 + L + e - r, ch);
            const CD dm = jac(l, -0.5 - L - e - r, -1.5 + L + e - r, ch);
            const double c = -(2 * r - L + 1);
            out.wp = c * sh * jac(l - 1, -0.5 - L - e - r, 0.5 + L + e - r, ch) / dp;
            out.wm = c * sh * jac(l - 1, 0.5 - L - e - r, -0.5 + L + e - r, ch) / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 4: {
            const double r = s.rho;
            out.w0 = e / x + r * x;
            const CD dp = (2 * e + 1) - 2 * r * x * x, dm = (2 * e - 1) - 2 * r * x * x;
            out.wp = -4 * r * x / dp;
            out.wm = -4 * r * x / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 5: {
            const double r = s.rho;
            out.w0 = e / x + r * x;
            const CD z = -r * x * x;
            const CD dp = laguerre_l(l, cd(-1.5 - e), z), dm = laguerre_l(l, cd(-0.5 - e), z);
            out.wp = 2 * r * x * laguerre_l(l - 1, cd(-0.5 - e), z) / dp;
            out.wm = 2 * r * x * laguerre_l(l - 1, cd(0.5 - e), z) / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 6: {
            out.w0 = (e + L) / x - x;
            const CD z = -(x * x);
            const CD dp = laguerre_l(l, cd(-0.5 + L + e), z), dm = laguerre_l(l, cd(-1.5 + L + e), z);
            out.wp = 2 * x * laguerre_l(l - 1, cd(0.5 + L + e), z) / dp;
            out.wm = 2 * x * laguerre_l(l - 1, cd(-0.5 + L + e), z) / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 7: {
            out.w0 = (e + L) / x - x;
            const CD z = -(x * x);
            const CD dp = (0.5 + L + e) * hyp1f1_terminating(-l, 0.5 + L + e, z);
            const CD dm = (-0.5 + L + e) * hyp1f1_terminating(-l, -0.5 + L + e, z);
            out.wp = 2 * L * x * hyp1f1_terminating(1 - l, 1.5 + L + e, z) / dp;
            out.wm = 2 * L * x * hyp1f1_terminating(1 - l, 0.5 + L + e, z) / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 8: {
            const double r = s.rho;
            const CD sn = sin(x), cs = cos(x);
            out.w0 = -e * sn / cs - r / cs;
            const CD dp = (2 * e + 1) + 2 * r * sn, dm = (2 * e - 1) + 2 * r * sn;
            out.wp = 2 * r * cs / dp;
            out.wm = 2 * r * cs / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 9: {
            const double r = s.rho;
            const CD sn = sin(2 * x), cs = cos(2 * x);
            out.w0 = 2 * (e + L) * cs / sn - 2 * r / sn;
            const CD dp = jac(l, -1.5 - L - e + r, -0.5 + L + e + r, cs);
            const CD dm = jac(l, -0.5 - L - e + r, -1.5 + L + e + r, cs);
            const double c = -(2 * r + L - 1);
            out.wp = c * sn * jac(l - 1, -0.5 - L - e + r, 0.5 + L + e + r, cs) / dp;
            out.wm = c * sn * jac(l - 1, 0.5 - L - e + r, -0.5 + L + e + r, cs) / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 10: {
            // Gamma(c)/Gamma(c+1) = 1/c in both ratios
            const double r = s.rho;
            const CD sn = sin(2 * x), cs = cos(2 * x);
            out.w0 = 2 * e * cs / sn + 2 * r / sn;
            const CD s2 = sin(x) * sin(x);
            const CD dp = (0.5 + e + r) * hyp2f1_terminating(-L, L - 1 + 2 * r, 0.5 + e + r, s2);
            const CD dm = (-0.5 + e + r) * hyp2f1_terminating(-L, L - 1 + 2 * r, -0.5 + e + r, s2);
            const double c = -L * (2 * r + L - 1);
            out.wp = c * sn * hyp2f1_terminating(1 - L, L + 2 * r, 1.5 + e + r, s2) / dp;
            out.wm = c * sn * hyp2f1_terminating(1 - L, L + 2 * r, 0.5 + e + r, s2) / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        case 11: {
            // Jacobi parameters stay complex when rho is imaginary.
            const Complex I(0.0, 1.0);
            const Complex r = s.imaginary_rho ? I * s.rho : Complex(s.rho, 0.0);
            const CD sh = sinh(x), ch = cosh(x);
            out.w0 = e * sh / ch + CD(I * r) / ch;
            const CD z = CD(I) * sh;
            auto cj = [&](int k, Complex a, Complex b) { return jacobi_p(k, CD(a), CD(b), z); };
            const CD dp = cj(l, -r + e - 0.5, -r - e - 1.5), dm = cj(l, -r + e - 1.5, -r - e - 0.5);
            const CD c = CD(0.5 * I * (L - 2.0 * r - 1.0));
            out.wp = c * ch * cj(l - 1, -r + e + 0.5, -r - e - 0.5) / dp;
            out.wm = c * ch * cj(l - 1, -r + e - 0.5, -r - e + 0.5) / dm;
            out.den_p = dp.v;
            out.den_m = dm.v;
            break;
        }
        default: throw ConfigError("extension case must be 1..11");
    }
    return out;
}

inline std::string ext_label(const ExtensionSpec& s) {
    std::string out = std::string(extension_key(s.case_id)) + " (eps=" + fmt(s.eps);
    if (extension_info(s.case_id).uses_rho) out += ", rho=" + fmt(s.rho) + (s.imaginary_rho ? "i" : "");
    if (extension_info(s.case_id).uses_ell) out += ", l=" + std::to_string(s.ell);
    return out + ")";
}

}  // namespace detail

/// All parts at x; DomainError outside the open domain.
inline ExtensionParts extension_parts(const ExtensionSpec& s, double x) {
    if (!std::isfinite(x) || !extension_domain(s.case_id).contains(x)) {
        throw DomainError("x = " + detail::fmt(x) + " is outside the domain of " +
                          std::string(extension_key(s.case_id)));
    }
    return detail::extension_parts(s, x);
}

/// Scan both denominators on [a, b] and throw PoleError at the first root found.
inline void require_no_poles(const ExtensionSpec& s, double a, double b, std::size_t n = 4001) {
    auto dens = [&](double x) {
        const ExtensionParts p = detail::extension_parts(s, x);
        return std::array<Complex, 2>{p.den_p, p.den_m};
    };
    std::vector<double> xs(n);
    std::vector<std::array<Complex, 2>> vals(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = i + 1 == n ? b : a + (b - a) * double(i) / double(n - 1);
        vals[i] = dens(xs[i]);
        for (const Complex& v : vals[i]) {
            if (std::isfinite(std::abs(v))) scale = std::max(scale, std::abs(v));
        }
    }
    const char* names[2] = {"W1+", "W1-"};
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Complex cur = vals[i][j];
            double root = std::numeric_limits<double>::quiet_NaN();
            if (!std::isfinite(std::abs(cur)) || std::abs(cur) <= 1e-14 * scale) {
                root = xs[i];
            } else if (i > 0 && cur.imag() == 0.0 && vals[i - 1][j].imag() == 0.0 &&
                       (cur.real() > 0) != (vals[i - 1][j].real() > 0)) {
                double lo = xs[i - 1], hi = xs[i];
                const bool lo_pos = vals[i - 1][j].real() > 0;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if ((dens(mid)[j].real() > 0) == lo_pos) lo = mid;
                    else hi = mid;
                }
                root = 0.5 * (lo + hi);
            }
            if (std::isfinite(root)) {
                throw PoleError("denominator of " + std::string(names[j]) + " vanishes at x = " + detail::fmt(root) +
                                    " for " + detail::ext_label(s),
                                root);
            }
        }
    }
}

/// Validate directly given effective parameters; with `scan`, also reject poles inside that window.
inline ExtensionSpec make_extension(int case_id, double eps, double rho, int ell, bool imaginary_rho = false,
                                    std::optional<Window> scan = std::nullopt) {
    const ExtensionInfo& info = extension_info(case_id);
    ExtensionSpec s;
    s.case_id = case_id;
    s.eps = eps;
    s.rho = info.uses_rho ? rho : 0.0;
    s.ell = ell;
    s.imaginary_rho = imaginary_rho;
    if (!std::isfinite(eps) || !std::isfinite(rho)) throw RangeError(detail::ext_label(s) + ": parameters must be finite");
    if (info.uses_ell) {
        if (ell < 1 || ell > kMaxEll) {
            throw RangeError(std::string(info.key) + ": degree l must be in 1.." + std::to_string(kMaxEll) +
                             ", got " + std::to_string(ell));
        }
    } else if (ell != 0) {
        throw ConfigError(std::string(info.key) + " takes no degree l");
    }
    if (imaginary_rho && case_id != 11) throw ConfigError("imaginary rho applies to ext-11 only");
    if (case_id == 7 || case_id == 10) {
        // 1F1 and 2F1 lower parameters must avoid the non-positive integers
        const double c = case_id == 7 ? -0.5 + ell + eps : -0.5 + eps + rho;
        for (double v : {c, c + 1.0, c + 2.0}) {
            if (v <= 0.0 && v == std::floor(v)) {
                throw NumericalError(detail::ext_label(s) + ": hypergeometric lower parameter is a non-positive integer");
            }
        }
    }
    if (scan) require_no_poles(s, scan->a, scan->b);
    return s;
}

/// Fold construction data through the case's base family, then validate.
inline ExtensionSpec build_extension(int case_id, const ConstructionData& data, int ell, bool imaginary_rho = false,
                                     std::optional<Window> scan = std::nullopt) {
    const FamilyParams fp = detail::fold(extension_info(case_id).fold, data);
    ExtensionSpec s = make_extension(case_id, fp.eps, fp.rho, ell, imaginary_rho, scan);
    s.provenance = data;
    return s;
}

/// Parameters m -> m - t; without provenance eps drops by t.
inline ExtensionSpec translate_extension(const ExtensionSpec& s, int t) {
    if (t < 1) throw RangeError("translation step must be a positive integer");
    if (s.provenance) {
        ConstructionData moved = *s.provenance;
        moved.p = moved.p.translate(double(t));
        return build_extension(s.case_id, moved, s.ell, s.imaginary_rho);
    }
    return make_extension(s.case_id, s.eps - t, s.rho, s.ell, s.imaginary_rho);
}

/// R(eps) of the extended family: Vtilde_W(x; eps) = V_W(x; eps - 1) + R(eps - 1).
inline Complex extension_remainder(const ExtensionSpec& s) {
    const double e = s.eps, L = s.ell;
    switch (s.case_id) {
        case 1:
        case 2:
        case 11: return 2 * e + 1;
        case 3: return 4 * (2 * (e + L) + 1);
        case 4:
        case 5: return 4 * s.rho;
        case 6:
        case 7: return -4.0;
        case 8: return -(2 * e + 1);
        case 9: return -4 * (2 * (e + L) + 1);
        case 10: return -4 * (2 * e + 1);
        default: throw ConfigError("extension case must be 1..11");
    }
}

/// W = W0 + W1+ - W1- and W' at x (complex for ext-11).
struct ExtendedValue {
    Complex value;
    Complex derivative;
};

inline ExtendedValue extended_superpotential(const ExtensionSpec& s, double x) {
    const ExtensionParts p = extension_parts(s, x);
    const Dual<Complex> w = p.w0 + p.wp - p.wm;
    return {w.v, w.d};
}

/// Real W; NumericalError when the imaginary part is not negligible.
inline KValue extended_superpotential_real(const ExtensionSpec& s, double x) {
    const ExtendedValue w = extended_superpotential(s, x);
    if (std::abs(w.value.imag()) > 1e-9 * (1.0 + std::abs(w.value)) ||
        std::abs(w.derivative.imag()) > 1e-9 * (1.0 + std::abs(w.derivative))) {
        throw NumericalError(detail::ext_label(s) + " is not real at x = " + detail::fmt(x));
    }
    return {w.value.real(), w.derivative.real()};
}

/// |W1-(x; eps) - W1+(x; eps - 1)| / (1 + |W1+(x; eps - 1)|).
inline GridReport check_cond2(const ExtensionSpec& s, double a, double b, std::size_t n) {
    const ExtensionSpec down = translate_extension(s, 1);
    require_no_poles(s, a, b);
    require_no_poles(down, a, b);
    return grid_report(
        [&](double x) {
            const Complex wm = extension_parts(s, x).wm.v;
            const Complex wp = extension_parts(down, x).wp.v;
            return std::abs(wm - wp) / (1.0 + std::abs(wp));
        },
        a, b, n);
}

namespace detail {

inline Complex cond1_l(const ExtensionParts& p) {
    const Complex wp = p.wp.v, wm = p.wm.v, w0 = p.w0.v;
    return wp * wp + p.wp.d + wm * wm + p.wm.d + 2.0 * w0 * wp - 2.0 * w0 * wm - 2.0 * wp * wm;
}

}  // namespace detail

/// L = W1+^2 + W1+' + W1-^2 + W1-' + 2 W0 W1+ - 2 W0 W1- - 2 W1+ W1-, which must vanish for f = 0.
/// Per point: the larger of |L(eps)|, |L(eps - 1)| and |L(eps) - L(eps - 1)|, each over 1 + W0^2.
inline GridReport check_cond1(const ExtensionSpec& s, double a, double b, std::size_t n) {
    const ExtensionSpec down = translate_extension(s, 1);
    require_no_poles(s, a, b);
    require_no_poles(down, a, b);
    return grid_report(
        [&](double x) {
            const ExtensionParts p = extension_parts(s, x), q = extension_parts(down, x);
            const Complex l1 = detail::cond1_l(p), l0 = detail::cond1_l(q);
            const double s1 = 1.0 + std::norm(p.w0.v), s0 = 1.0 + std::norm(q.w0.v);
            return std::max({std::abs(l1) / s1, std::abs(l0) / s0, std::abs(l1 - l0) / std::max(s1, s0)});
        },
        a, b, n);
}

/// |Vtilde_W(x; eps) - V_W(x; eps - 1) - R(eps - 1)| / (1 + |V_W(x; eps - 1)|).
inline GridReport extended_si_check(const ExtensionSpec& s, double a, double b, std::size_t n) {
    const ExtensionSpec down = translate_extension(s, 1);
    require_no_poles(s, a, b);
    require_no_poles(down, a, b);
    const Complex R = extension_remainder(down);
    return grid_report(
        [&](double x) {
            const ExtendedValue w1 = extended_superpotential(s, x), w0 = extended_superpotential(down, x);
            const Complex vt = w1.value * w1.value + w1.derivative;
            const Complex v = w0.value * w0.value - w0.derivative;
            return std::abs(vt - v - R) / (1.0 + std::abs(v));
        },
        a, b, n);
}

/// Largest |Im W| / (1 + |W|) on the grid.
inline GridReport extension_imaginary_residue(const ExtensionSpec& s, double a, double b, std::size_t n) {
    return grid_report(
        [&](double x) {
            const ExtendedValue w = extended_superpotential(s, x);
            return std::abs(w.value.imag()) / (1.0 + std::abs(w.value));
        },
        a, b, n);
}

inline GridReport check_cond2(const ExtensionSpec& s, std::size_t n = 501) {
    const Window w = extension_window(s.case_id);
    return check_cond2(s, w.a, w.b, n);
}

inline GridReport check_cond1(const ExtensionSpec& s, std::size_t n = 501) {
    const Window w = extension_window(s.case_id);
    return check_cond1(s, w.a, w.b, n);
}

inline GridReport extended_si_check(const ExtensionSpec& s, std::size_t n = 501) {
    const Window w = extension_window(s.case_id);
    return extended_si_check(s, w.a, w.b, n);
}

inline GridReport extension_imaginary_residue(const ExtensionSpec& s, std::size_t n = 501) {
    const Window w = extension_window(s.case_id);
    return extension_imaginary_residue(s, w.a, w.b, n);
}

}  // namespace sip

#endif  // SIP_EXTENSIONS_HPP
