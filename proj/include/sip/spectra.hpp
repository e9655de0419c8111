#ifndef SIP_SPECTRA_HPP
#define SIP_SPECTRA_HPP

// Bound-state energies, normalization recursions and closed-form eigenfunctions.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "sip/error.hpp"
#include "sip/families.hpp"
#include "sip/specfun.hpp"

namespace sip {

/// Which normalization recursion a family uses. HarmOsc needs none.
enum class NormKind { a, b, c, d, e, p, u, none };

inline NormKind norm_kind(FamilyId id) {
    switch (id) {
        case FamilyId::Scarf2:
        case FamilyId::Morse:
        case FamilyId::MorseMirror: return NormKind::a;
        case FamilyId::PoschlTeller: return NormKind::b;
        case FamilyId::RadialOsc: return NormKind::c;
        case FamilyId::HarmOsc: return NormKind::none;
        case FamilyId::Scarf1:
        case FamilyId::Scarf1Cot: return NormKind::d;
        case FamilyId::RosenMorse2:
        case FamilyId::Eckart: return NormKind::e;
        case FamilyId::Coulomb: return NormKind::p;
        case FamilyId::RosenMorse1:
        case FamilyId::RosenMorse1Cot: return NormKind::u;
    }
    return NormKind::none;
}

inline char norm_kind_name(NormKind k) {
    constexpr char names[] = "abcdepu-";
    return names[static_cast<int>(k)];
}

/// Recursive normalization coefficient, unrolled from k down to 0 with eps -> eps - 1 per step.
/// Throws RangeError on a vanishing or negative radicand anywhere in the chain.
inline double norm_coefficient(NormKind kind, int k, double eps, double rho) {
    if (k < 0) throw RangeError("state index must be non-negative");
    double value = 1.0;
    for (int j = k; j >= 1; --j) {
        const double e = eps - (k - j);  // parameter seen at level j
        auto root = [&](double radicand) {
            if (!(radicand > 0.0) || !std::isfinite(radicand)) {
                throw RangeError(std::string("norm coefficient ") + norm_kind_name(kind) + "_" + std::to_string(k) +
                                 ": non-positive radicand at level " + std::to_string(j));
            }
            return std::sqrt(radicand);
        };
        const double ke2 = (j - e) * (j - e);
        switch (kind) {
            case NormKind::a:
            case NormKind::b: value /= root((2 * e - j) * j); break;
            case NormKind::c: value /= root(4 * rho * j); break;
            case NormKind::d: value /= root(j * (j - 2 * e)); break;
            case NormKind::e:
                value *= (2 * e - j) / (e * root(j * (2 * e - j) - rho * rho / ke2 + rho * rho / (e * e)));
                break;
            case NormKind::p: value *= (2 * e - j) / e * root(ke2 * e * e / (j * (j - 2 * e) * rho * rho)); break;
            case NormKind::u:
                value *= (2 * e - j) / (e * root(j * (j - 2 * e) - rho * rho / ke2 + rho * rho / (e * e)));
                break;
            case NormKind::none: break;
        }
    }
    if (!std::isfinite(value)) throw NumericalError("norm coefficient is not finite");
    return value;
}

inline double norm_coefficient(NormKind kind, int k, const FamilyParams& fp) {
    return norm_coefficient(kind, k, fp.eps, fp.rho);
}

/// The b recursion with b_{k-1}(eps + 1) in place of b_{k-1}(eps - 1). Kept only so the
/// two variants can be compared; eigenfunctions use the eps - 1 chain.
inline double norm_coefficient_b_plus(int k, double eps) {
    double value = 1.0;
    for (int j = k; j >= 1; --j) {
        const double e = eps + (k - j);
        const double r = (2 * e - j) * j;
        if (!(r > 0.0)) throw RangeError("b+ chain: non-positive radicand");
        value /= std::sqrt(r);
    }
    return value;
}

namespace detail {

inline double energy_formula(const FamilyParams& fp, int k) {
    const double e = fp.eps, r = fp.rho;
    const double kk = k;
    switch (fp.id) {
        case FamilyId::Scarf2:
        case FamilyId::Morse:
        case FamilyId::MorseMirror: return (2 * e - kk) * kk;
        case FamilyId::PoschlTeller: return -kk * (kk - 2 * e);
        case FamilyId::RadialOsc: return 4 * r * kk;
        case FamilyId::HarmOsc: return 2 * fp.beta * kk;
        case FamilyId::Scarf1:
        case FamilyId::Scarf1Cot: return (kk - 2 * e) * kk;
        default: break;
    }
    if (k == 0) return 0.0;
    const double g = r * r / ((kk - e) * (kk - e) * e * e);
    switch (fp.id) {
        case FamilyId::RosenMorse2:
        case FamilyId::Eckart: return kk * (kk - 2 * e) * (g - 1);
        case FamilyId::Coulomb: return kk * (kk - 2 * e) * g;
        default: return kk * (kk - 2 * e) * (g + 1);
    }
}

inline bool gamma_arg_ok(double x) { return x > 0.0 && std::isfinite(x); }

/// Every finiteness/positivity condition the closed form of state k needs.
inline bool state_conditions(const FamilyParams& fp, int k) {
    const double e = fp.eps, r = fp.rho;
    switch (fp.id) {
        case FamilyId::Scarf2:
        case FamilyId::Morse:
        case FamilyId::MorseMirror: return k < e;
        case FamilyId::PoschlTeller: return k < e && gamma_arg_ok(0.5 - k + e + r) && gamma_arg_ok(0.5 + k - e + r);
        case FamilyId::RadialOsc:
        case FamilyId::HarmOsc:
        case FamilyId::Scarf1:
        case FamilyId::Scarf1Cot: return true;
        case FamilyId::RosenMorse2: {
            if (e == k) return false;
            const double q = r / (e - k);
            return gamma_arg_ok(2 * e - 2 * k) && gamma_arg_ok(e - k - q) && gamma_arg_ok(e - k + q);
        }
        case FamilyId::Eckart: {
            if (e == k) return false;
            const double q = r / (e - k);
            return gamma_arg_ok(1 + k - e + q) && gamma_arg_ok(1 + 2 * k - 2 * e) && gamma_arg_ok(e - k + q);
        }
        case FamilyId::Coulomb: {
            if (e == k) return false;
            const double base = r / (e - k);  // also the decay condition rho/(k - eps) < 0
            const double g = 2 * k - 2 * e;
            if (!(base > 0.0)) return false;
            if (g <= 0.0 && g == std::floor(g)) return false;
            int sign = 1;
            log_gamma_signed(g, sign);
            return (-1.0 / r) * sign > 0.0;
        }
        case FamilyId::RosenMorse1:
        case FamilyId::RosenMorse1Cot: return gamma_arg_ok(1 + 2 * k - 2 * e);
    }
    return false;
}

inline bool admissible_index(const FamilyParams& fp, int k) {
    if (!state_conditions(fp, k)) return false;
    const NormKind kind = norm_kind(fp.id);
    if (kind != NormKind::none) {
        try {
            norm_coefficient(kind, k, fp);
        } catch (const Error&) {
            return false;
        }
    }
    if (k >= 1 && (fp.id == FamilyId::RosenMorse2 || fp.id == FamilyId::Eckart)) {
        if (!(energy_formula(fp, k) > energy_formula(fp, k - 1))) return false;
    }
    return true;
}

}  // namespace detail

/// Admissible indices 0 .. count-1. `unbounded` families are cut at the polynomial degree cap.
struct IndexRange {
    int count = 0;
    bool unbounded = false;
    bool contains(int k) const { return k >= 0 && k < count; }
};

inline IndexRange admissible_range(const FamilyParams& fp) {
    IndexRange out;
    switch (fp.id) {
        case FamilyId::RadialOsc:
        case FamilyId::HarmOsc:
        case FamilyId::Scarf1:
        case FamilyId::Scarf1Cot:
        case FamilyId::RosenMorse1:
        case FamilyId::RosenMorse1Cot: out.unbounded = true; break;
        default: break;
    }
    int k = 0;
    while (k <= kMaxDegree && detail::admissible_index(fp, k)) ++k;
    out.count = k;
    return out;
}

inline void require_admissible(const FamilyParams& fp, int k) {
    if (k < 0 || k > kMaxDegree || !detail::admissible_index(fp, k)) {
        throw RangeError("state k = " + std::to_string(k) + " is not admissible for " +
                         std::string(family_key(fp.id)) + " (non-normalizable or pole in the closed form)");
    }
    for (int j = 0; j < k; ++j) {
        if (!detail::admissible_index(fp, j)) {
            throw RangeError("state k = " + std::to_string(k) + " lies above the admissible range of " +
                             std::string(family_key(fp.id)));
        }
    }
}

inline double eigenenergy(const FamilyParams& fp, int k) {
    require_admissible(fp, k);
    return detail::energy_formula(fp, k);
}

namespace detail {

/// ln cosh x without overflow.
inline double log_cosh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2 * a)) - std::numbers::ln2;
}

/// ln sinh x for x > 0.
inline double log_sinh(double x) {
    if (x < 1.0) return std::log(std::sinh(x));
    return x + std::log1p(-std::exp(-2 * x)) - std::numbers::ln2;
}

}  // namespace detail

/// A normalized bound state zeta_k of one family.
class EigenState {
public:
    EigenState(const FamilyParams& fp, int k) : fp_(fp), k_(k) {
        require_admissible(fp, k);
        energy_ = detail::energy_formula(fp, k);
        setup();
    }

    const FamilyParams& family() const noexcept { return fp_; }
    int k() const noexcept { return k_; }
    double energy() const noexcept { return energy_; }

    /// True for the families whose closed form runs through complex Jacobi polynomials.
    bool complex_path() const noexcept {
        return fp_.id == FamilyId::Scarf2 || fp_.id == FamilyId::RosenMorse1 || fp_.id == FamilyId::RosenMorse1Cot;
    }

    /// The closed form as evaluated, before discarding the imaginary part.
    Complex complex_value(double x) const {
        const Domain d = family_domain(fp_.id);
        if (!std::isfinite(x) || !d.contains(x)) {
            throw DomainError("x outside the domain of " + std::string(family_key(fp_.id)));
        }
        double env_log = 0.0;
        Complex poly = 1.0;
        double poly_arg = 0.0, scale = 0.0;
        evaluate_parts(x, env_log, poly, poly_arg, scale);
        const double env = std::exp(log_const_ + env_log + scale);
        return sign_ * env * phase_ * poly;
    }

    /// Real value of zeta_k(x). Complex-path families must have a negligible imaginary residue.
    double operator()(double x) const {
        double env_log = 0.0;
        Complex poly = 1.0;
        double poly_arg = 0.0, scale = 0.0;
        const Domain d = family_domain(fp_.id);
        if (!std::isfinite(x) || !d.contains(x)) {
            throw DomainError("x outside the domain of " + std::string(family_key(fp_.id)));
        }
        evaluate_parts(x, env_log, poly, poly_arg, scale);
        const double env = std::exp(log_const_ + env_log + scale);
        const Complex z = sign_ * env * phase_ * poly;
        if (complex_path()) {
            const double floor = 1e-12 * std::exp(log_const_ + env_log + k_ * std::log1p(std::abs(poly_arg)));
            if (std::abs(z.imag()) > 1e-9 * std::abs(z) + floor) {
                throw NumericalError("imaginary residue " + detail::fmt(z.imag()) + " at x = " + detail::fmt(x));
            }
        }
        return z.real();
    }

private:
    void setup() {
        const double e = fp_.eps, r = fp_.rho;
        const int k = k_;
        const double lk = std::lgamma(k + 1.0);
        const NormKind kind = norm_kind(fp_.id);
        const double nc = kind == NormKind::none ? 1.0 : norm_coefficient(kind, k, fp_);
        const double lnc = std::log(std::abs(nc));
        sign_ = nc < 0 ? -1.0 : 1.0;
        const double odd = (k % 2) ? -1.0 : 1.0;
        const double ln2 = std::numbers::ln2, lnpi = std::log(std::numbers::pi);
        const Complex I(0.0, 1.0);
        switch (fp_.id) {
            case FamilyId::Scarf2:
                log_const_ = (e - 0.5) * ln2 + log_gamma_abs_complex(Complex(0.5 + e - k, -r)) - 0.5 * lnpi -
                             0.5 * log_gamma(2 * (e - k)) + lk + lnc;
                phase_ = std::pow(I, k);
                ja_ = Complex(-0.5 - e, r);
                jb_ = Complex(-0.5 - e, -r);
                break;
            case FamilyId::PoschlTeller:
                log_const_ = e * ln2 +
                             0.5 * (log_gamma(0.5 - k + e + r) - log_gamma(2 * (e - k)) - log_gamma(0.5 + k - e + r)) +
                             lk + lnc;
                ja_ = -0.5 - e - r;
                jb_ = -0.5 - e + r;
                break;
            case FamilyId::Morse:
                log_const_ = (e - k) * ln2 + (e - k) * std::log(r) + lnc + lk - 0.5 * log_gamma(2 * e - 2 * k);
                sign_ *= odd;
                break;
            case FamilyId::MorseMirror:
                log_const_ = (e - k) * ln2 + (e - k) * std::log(-r) + lnc + lk - 0.5 * log_gamma(2 * e - 2 * k);
                sign_ *= odd;
                break;
            case FamilyId::RadialOsc:
                log_const_ = 0.5 * (ln2 + (0.5 + k - e) * std::log(r) - log_gamma(0.5 + k - e)) + lk + k * ln2 + lnc;
                sign_ *= odd;
                break;
            case FamilyId::HarmOsc:
                log_const_ = 0.25 * std::log(fp_.beta / std::numbers::pi) - 0.5 * (k * ln2 + lk);
                break;
            case FamilyId::Scarf1:
            case FamilyId::Scarf1Cot:
                log_const_ = e * ln2 + lk +
                             0.5 * (log_gamma(1 + 2 * k - 2 * e) - log_gamma(0.5 + k - e - r) - log_gamma(0.5 + k - e + r)) +
                             lnc;
                ja_ = -0.5 - e - r;
                jb_ = -0.5 - e + r;
                break;
            case FamilyId::RosenMorse2: {
                const double q = r / (e - k);
                log_const_ = (0.5 + k - e) * ln2 + lk +
                             0.5 * (log_gamma(2 * e - 2 * k) - log_gamma(e - k - q) - log_gamma(e - k + q)) + lnc;
                ja_ = e - k + q;
                jb_ = e - k - q;
                break;
            }
            case FamilyId::Eckart: {
                const double q = r / (e - k);
                log_const_ = (0.5 + k - e) * ln2 + lk +
                             0.5 * (log_gamma(1 + k - e + q) - log_gamma(1 + 2 * k - 2 * e) - log_gamma(e - k + q)) + lnc;
                ja_ = e - k + q;
                jb_ = e - k - q;
                break;
            }
            case FamilyId::Coulomb: {
                // 1/N^2 = -(k-eps)^2/rho (rho/(eps-k))^(2eps-2k) Gamma(2k-2eps)
                int gs = 1;
                const double lg = log_gamma_signed(2.0 * k - 2 * e, gs);
                const double base = r / (e - k);
                if (!(base > 0.0) || (-1.0 / r) * gs <= 0.0) {
                    throw RangeError("coulomb: normalization radicand is not positive");
                }
                const double log_inv_n2 = std::log((k - e) * (k - e)) - std::log(std::abs(r)) +
                                          (2 * e - 2 * k) * std::log(base) + lg;
                log_const_ = lk - 0.5 * log_inv_n2 + lnc;
                sign_ *= odd;
                break;
            }
            case FamilyId::RosenMorse1:
            case FamilyId::RosenMorse1Cot: {
                log_const_ = lk + log_gamma_abs_complex(Complex(1.0 + k - e, r / (k - e))) -
                             0.5 * (lnpi + log_gamma(1 + 2 * k - 2 * e)) + lnc;
                phase_ = std::pow(-I, k);
                ja_ = Complex(e - k, r / (e - k));
                jb_ = Complex(e - k, -r / (e - k));
                break;
            }
        }
        if (!std::isfinite(log_const_)) throw NumericalError("normalization constant is not finite");
    }

    /// Log of the real envelope, the polynomial factor and the polynomial argument magnitude.
    void evaluate_parts(double x, double& env_log, Complex& poly, double& poly_arg, double& scale) const {
        const double e = fp_.eps, r = fp_.rho;
        const int k = k_;
        const double kk = k;
        constexpr double pi = std::numbers::pi;
        const double ln2 = std::numbers::ln2;
        const Complex I(0.0, 1.0);
        switch (fp_.id) {
            case FamilyId::Scarf2: {
                const double s = std::sinh(x);
                env_log = -r * std::atan(s) - e * detail::log_cosh(x);
                poly = jacobi_p(k, ja_, jb_, Complex(0.0, -s), &scale);
                poly_arg = s;
                break;
            }
            case FamilyId::PoschlTeller: {
                const double sh = std::sinh(0.5 * x), ch = std::cosh(0.5 * x);
                env_log = 0.5 * (r - e) * (ln2 + 2 * std::log(sh)) - 0.5 * (e + r) * (ln2 + 2 * std::log(ch));
                const double c = std::cosh(x);
                poly = jacobi_p(k, ja_.real(), jb_.real(), -c, &scale);
                poly_arg = c;
                break;
            }
            case FamilyId::Morse: {
                const double ex = std::exp(-x);
                env_log = kk * x - r * ex - e * x;
                poly = laguerre_l(k, 2 * e - 2 * kk, 2 * r * ex, &scale);
                poly_arg = 2 * r * ex;
                break;
            }
            case FamilyId::MorseMirror: {
                const double ex = std::exp(x);
                env_log = -kk * x + r * ex + e * x;
                poly = laguerre_l(k, 2 * e - 2 * kk, -2 * r * ex, &scale);
                poly_arg = -2 * r * ex;
                break;
            }
            case FamilyId::RadialOsc:
                env_log = -0.5 * r * x * x - e * std::log(x);
                poly = laguerre_l(k, -0.5 - e, r * x * x, &scale);
                poly_arg = r * x * x;
                break;
            case FamilyId::HarmOsc: {
                const double y = x + r / fp_.beta;
                env_log = -0.5 * fp_.beta * y * y;
                poly = hermite_h(k, std::sqrt(fp_.beta) * y, &scale);
                poly_arg = std::sqrt(fp_.beta) * y;
                break;
            }
            case FamilyId::Scarf1: {
                // 1 - sin x = 2 sin^2(pi/4 - x/2), 1 + sin x = 2 cos^2(pi/4 - x/2)
                const double u = 0.25 * pi - 0.5 * x;
                env_log = -0.5 * (e + r) * (ln2 + 2 * std::log(std::abs(std::sin(u)))) -
                          0.5 * (e - r) * (ln2 + 2 * std::log(std::abs(std::cos(u))));
                poly = jacobi_p(k, ja_.real(), jb_.real(), std::sin(x), &scale);
                poly_arg = 1.0;
                break;
            }
            case FamilyId::Scarf1Cot: {
                env_log = -0.5 * (e + r) * (ln2 + 2 * std::log(std::abs(std::sin(0.5 * x)))) -
                          0.5 * (e - r) * (ln2 + 2 * std::log(std::abs(std::cos(0.5 * x))));
                poly = jacobi_p(k, ja_.real(), jb_.real(), std::cos(x), &scale);
                poly_arg = 1.0;
                break;
            }
            case FamilyId::RosenMorse2: {
                // 1 -+ tanh x = exp(-+x) / cosh x
                const double lc = detail::log_cosh(x);
                env_log = 0.5 * ja_.real() * (-x - lc) + 0.5 * jb_.real() * (x - lc);
                poly = jacobi_p(k, ja_.real(), jb_.real(), std::tanh(x), &scale);
                poly_arg = 1.0;
                break;
            }
            case FamilyId::Eckart: {
                // coth x -+ 1 = exp(-+x) / sinh x
                const double ls = detail::log_sinh(x);
                env_log = 0.5 * ja_.real() * (-x - ls) + 0.5 * jb_.real() * (x - ls);
                const double c = 1.0 / std::tanh(x);
                poly = jacobi_p(k, ja_.real(), jb_.real(), c, &scale);
                poly_arg = c;
                break;
            }
            case FamilyId::Coulomb:
                env_log = -e * std::log(2 * x) + r * x / (kk - e);
                poly = laguerre_l(k, -1 - 2 * e, 2 * r * x / (e - kk), &scale);
                poly_arg = 2 * r * x / (e - kk);
                break;
            case FamilyId::RosenMorse1: {
                const double c = std::sin(0.5 * pi - std::abs(x));  // cos x, accurate near the ends
                env_log = (kk - e) * std::log(2 * c) + r * x / (kk - e);
                const double t = std::tan(x);
                poly = jacobi_p(k, ja_, jb_, Complex(0.0, -t), &scale);
                poly_arg = t;
                break;
            }
            case FamilyId::RosenMorse1Cot: {
                const double s = std::sin(x);
                env_log = (kk - e) * std::log(2 * s) + r * (2 * x - pi) / (2 * (kk - e));
                const double ct = 1.0 / std::tan(x);
                poly = jacobi_p(k, ja_, jb_, Complex(0.0, ct), &scale);
                poly_arg = ct;
                break;
            }
        }
        (void)I;
    }

    FamilyParams fp_;
    int k_;
    double energy_ = 0.0;
    double log_const_ = 0.0;
    double sign_ = 1.0;
    Complex phase_ = 1.0;
    Complex ja_ = 0.0, jb_ = 0.0;
};

inline EigenState wavefunction(const FamilyParams& fp, int k) { return EigenState(fp, k); }

}  // namespace sip

#endif  // SIP_SPECTRA_HPP
