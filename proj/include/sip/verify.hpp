#ifndef SIP_VERIFY_HPP
#define SIP_VERIFY_HPP

// Numerical oracles: grid residuals, adaptive quadrature, a finite-difference
// Schrodinger eigensolver and the SUSY ladder check.

#include <algorithm>
#include <array>
#include <concepts>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sip/error.hpp"
#include "sip/families.hpp"
#include "sip/spectra.hpp"

namespace sip {

/// Residual statistics of one identity over a sampling grid.
struct GridReport {
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double argmax_x = 0.0;
    std::size_t points_used = 0;
    std::size_t points_excluded = 0;
    double a = 0.0;
    double b = 0.0;
    std::size_t n = 0;
};

/// Evaluate `residual` on n evenly spaced points of [a, b]. Points where the residual throws a
/// DomainError or is not finite are counted as excluded; other errors propagate.
template <class F>
GridReport grid_report(F&& residual, double a, double b, std::size_t n) {
    if (n < 2) throw RangeError("grid needs at least two points");
    if (!(b > a)) throw RangeError("grid needs a < b");
    GridReport rep;
    rep.a = a;
    rep.b = b;
    rep.n = n;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i + 1 == n ? b : a + (b - a) * double(i) / double(n - 1);
        double r = 0.0;
        try {
            r = residual(x);
        } catch (const DomainError&) {
            ++rep.points_excluded;
            continue;
        }
        if (!std::isfinite(r)) {
            ++rep.points_excluded;
            continue;
        }
        r = std::abs(r);
        ++rep.points_used;
        sum += r;
        if (r > rep.max_residual || rep.points_used == 1) {
            rep.max_residual = r;
            rep.argmax_x = x;
        }
    }
    if (rep.points_used == 0) throw NumericalError("every grid point was excluded");
    rep.mean_residual = sum / double(rep.points_used);
    return rep;
}

/// |Vtilde(x; fp) - V(x; fp shifted) - R(fp shifted)| / (1 + |V(x; fp shifted)|).
inline GridReport si_residual(const FamilyParams& fp, double a, double b, std::size_t n) {
    const FamilyParams down = translate_family(fp, 1);
    const double R = remainder(down);
    return grid_report(
        [&](double x) {
            const double vt = partner_potentials(fp, x).Vtilde;
            const double v = partner_potentials(down, x).V;
            return (vt - v - R) / (1.0 + std::abs(v));
        },
        a, b, n);
}

inline GridReport si_residual(const FamilyParams& fp, std::size_t n = 2001) {
    const Window w = default_window(fp.id);
    return si_residual(fp, w.a, w.b, n);
}

// ---------------------------------------------------------------------------
// Quadrature

namespace detail {

// 10-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<double, 5> kGLx = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                               0.8650633666889845, 0.9739065285171717};
inline constexpr std::array<double, 5> kGLw = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                               0.1494513491505806, 0.0666713443086881};

template <class F>
double gl10(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < kGLx.size(); ++i) s += kGLw[i] * (f(c - h * kGLx[i]) + f(c + h * kGLx[i]));
    return s * h;
}

template <class F>
double adaptive_gl(F& f, double a, double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl10(f, a, m), right = gl10(f, m, b);
    const double both = left + right;
    if (std::abs(both - whole) <= tol || std::abs(both - whole) <= 1e-15 * std::abs(both)) return both;
    if (depth >= 30) throw NumericalError("quadrature did not converge within depth 30");
    return adaptive_gl(f, a, m, left, 0.5 * tol, depth + 1) + adaptive_gl(f, m, b, right, 0.5 * tol, depth + 1);
}

template <class F>
double integrate_panels(F& f, double a, double b, int panels, double tol) {
    double total = 0.0;
    const double w = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * w, hi = i + 1 == panels ? b : a + (i + 1) * w;
        total += adaptive_gl(f, lo, hi, gl10(f, lo, hi), tol / panels, 0);
    }
    return total;
}

/// Outer edge beyond which |f| stays below rel * peak, scanning from `start` in direction `dir`.
template <class F>
double tail_cutoff(F& f, double start, int dir, double rel) {
    constexpr double step = 0.25;
    double peak = 0.0;
    double last_big = start;
    double reach = 256.0;
    for (int pass = 0; pass < 16; ++pass) {
        const int n = int(reach / step);
        for (int i = 1; i <= n; ++i) {
            const double x = start + dir * step * i;
            double v = 0.0;
            try {
                v = std::abs(f(x));
            } catch (const DomainError&) {
                continue;
            }
            if (!std::isfinite(v)) continue;
            peak = std::max(peak, v);
            if (v >= rel * peak && v > 0.0) last_big = x;
        }
        if (std::abs(last_big - start) < reach - 4 * step) return last_big + dir * 2 * step;
        reach *= 2.0;
    }
    throw NumericalError("integrand tail does not decay");
}

/// Integral over (l, h) under x = l + (h - l) / (1 + exp(-2u)), u = (pi/2) sinh t, which
/// clusters nodes double-exponentially at both ends.
template <class F>
double de_integrate(F& f, double l, double h, double tol) {
    const double width = h - l;
    auto mapped = [&](double t) -> double {
        const double u = 0.5 * std::numbers::pi * std::sinh(t);
        const double du = 0.5 * std::numbers::pi * std::cosh(t);
        const double x = t < 0 ? l + width / (1.0 + std::exp(-2 * u)) : h - width / (1.0 + std::exp(2 * u));
        if (!(x > l && x < h)) return 0.0;
        const double ch = std::cosh(u);
        const double jac = width * du / (2 * ch * ch);
        return jac == 0.0 ? 0.0 : f(x) * jac;
    };
    return integrate_panels(mapped, -4.0, 4.0, 16, tol);
}

}  // namespace detail

/// Integral of f over (lo, hi); either end may be infinite. Finite ends go through a
/// double-exponential map so integrable endpoint singularities are handled; infinite ends
/// are truncated where |f| drops below 1e-16 of its peak.
template <class F>
double quadrature(F&& f, double lo, double hi, double tol = 1e-10) {
    if (!(hi > lo)) throw RangeError("quadrature needs lo < hi");
    auto safe = [&](double x) -> double {
        if (!(x > lo && x < hi)) return 0.0;
        const double v = f(x);
        if (!std::isfinite(v)) throw NumericalError("integrand is not finite at x = " + std::to_string(x));
        return v;
    };
    double a = lo, b = hi;
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        double center = 0.0;
        if (std::isfinite(lo)) center = lo;
        else if (std::isfinite(hi)) center = hi;
        if (!std::isfinite(lo)) a = detail::tail_cutoff(safe, center, -1, 1e-16);
        if (!std::isfinite(hi)) b = detail::tail_cutoff(safe, center, +1, 1e-16);
        if (!std::isfinite(lo) && !std::isfinite(hi)) {
            // the mass may sit far from 0; re-centre and rescan both sides
            a = std::min(a, detail::tail_cutoff(safe, b, -1, 1e-16));
            b = std::max(b, detail::tail_cutoff(safe, a, +1, 1e-16));
        }
    }
    const bool sing_a = std::isfinite(lo), sing_b = std::isfinite(hi);
    if (!sing_a && !sing_b) return detail::integrate_panels(safe, a, b, 32, tol);
    if (sing_a && sing_b) return detail::de_integrate(safe, a, b, tol);
    // one finite (possibly singular) end: map a unit strip next to it, integrate the rest plainly
    const double strip = std::min(1.0, 0.5 * (b - a));
    if (sing_a) return detail::de_integrate(safe, a, a + strip, 0.5 * tol) +
                       detail::integrate_panels(safe, a + strip, b, 32, 0.5 * tol);
    return detail::integrate_panels(safe, a, b - strip, 32, 0.5 * tol) +
           detail::de_integrate(safe, b - strip, b, 0.5 * tol);
}

/// Overlap <zeta_i | zeta_j> over the family domain.
inline double overlap(const EigenState& s1, const EigenState& s2, double tol = 1e-11) {
    const Domain d = family_domain(s1.family().id);
    return quadrature([&](double x) { return s1(x) * s2(x); }, d.lo, d.hi, tol);
}

// ---------------------------------------------------------------------------
// Finite-difference oracle

/// Truncation [a, b] and grid size for the tridiagonal discretization (Dirichlet at both ends).
/// `singular_a` / `singular_b` mark ends that sit on a true domain endpoint where V ~ c / s^2.
struct OracleSpec {
    double a = 0.0;
    double b = 1.0;
    std::size_t n = 3000;
    bool singular_a = false;
    bool singular_b = false;
};

namespace detail {

/// Number of eigenvalues below lambda (Sturm sequence of the LDL^T pivots).
inline std::size_t sturm_count(const std::vector<double>& d, double off2, double lambda) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        q = d[i] - lambda - (i ? off2 / q : 0.0);
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

/// lim s^2 V(end + dir s) by Richardson extrapolation of s^2 V at s and 2s.
template <class F>
double inverse_square_strength(F& V, double end, int dir, double h) {
    const double s = std::min(1e-5, 1e-2 * h);
    const double c1 = s * s * V(end + dir * s);
    const double c2 = 4 * s * s * V(end + dir * 2 * s);
    return 2 * c1 - c2;
}

}  // namespace detail

/// Lowest `count` eigenvalues of -d^2/dx^2 + V on the grid of `spec`, ascending.
/// At a singular end the first cell is corrected so the discrete operator is exact on the
/// indicial solution s^sigma, sigma (sigma - 1) = c.
template <class F>
    requires std::invocable<F&, double>
std::vector<double> fd_spectrum(F&& V, const OracleSpec& spec, std::size_t count) {
    if (spec.n < 500) throw RangeError("oracle grid needs N >= 500");
    if (!(spec.b > spec.a)) throw RangeError("oracle needs a < b");
    const std::size_t m = spec.n - 2;
    if (count == 0 || count > m) throw RangeError("requested eigenvalue count out of range");
    const double h = (spec.b - spec.a) / double(spec.n - 1);
    const double ih2 = 1.0 / (h * h);
    std::vector<double> d(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = spec.a + h * double(i + 1);
        const double v = V(x);
        if (!std::isfinite(v)) throw NumericalError("potential is not finite at x = " + std::to_string(x));
        d[i] = 2 * ih2 + v;
    }
    auto correct = [&](std::size_t idx, double end, int dir) {
        const double c = detail::inverse_square_strength(V, end, dir, h);
        if (c < -0.25) throw NumericalError("potential falls faster than the critical -1/(4 s^2) at the boundary");
        const double sigma = 0.5 * (1 + std::sqrt(1 + 4 * c));
        d[idx] += -c * ih2 + (std::pow(2.0, sigma) - 2) * ih2;
    };
    if (spec.singular_a) correct(0, spec.a, +1);
    if (spec.singular_b) correct(m - 1, spec.b, -1);
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < m; ++i) {
        lo = std::min(lo, d[i] - 2 * ih2);
        hi = std::max(hi, d[i] + 2 * ih2);
    }
    const double off2 = ih2 * ih2;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        double l = lo, r = hi;
        for (int it = 0; it < 200 && r - l > 1e-13 * std::max(1.0, std::abs(l) + std::abs(r)); ++it) {
            const double mid = 0.5 * (l + r);
            if (detail::sturm_count(d, off2, mid) > j) r = mid;
            else l = mid;
        }
        out.push_back(0.5 * (l + r));
        lo = out.back();
    }
    return out;
}

/// Default oracle window: infinite ends where the ground state drops below 1e-12 of its peak,
/// never closer than |x| = 8 (25 on the slow side of the Morse types); finite ends exact.
inline OracleSpec default_oracle(const FamilyParams& fp, std::size_t n = 3000) {
    const Domain dom = family_domain(fp.id);
    const EigenState g(fp, 0);
    auto amp = [&](double x) { return g(x); };
    OracleSpec spec;
    spec.n = n;
    double far_lo = 8.0, far_hi = 8.0;
    if (fp.id == FamilyId::Morse) far_hi = 25.0;
    if (fp.id == FamilyId::MorseMirror) far_lo = 25.0;
    if (dom.finite_lo()) {
        spec.a = dom.lo;
        spec.singular_a = true;
    } else {
        spec.a = std::min(-far_lo, detail::tail_cutoff(amp, 0.0, -1, 1e-12));
    }
    if (dom.finite_hi()) {
        spec.b = dom.hi;
        spec.singular_b = true;
    } else {
        spec.b = std::max(far_hi, detail::tail_cutoff(amp, dom.finite_lo() ? dom.lo + dom.delta : 0.0, +1, 1e-12));
    }
    return spec;
}

inline std::vector<double> fd_spectrum(const FamilyParams& fp, const OracleSpec& spec, std::size_t count) {
    return fd_spectrum([&](double x) { return partner_potentials(fp, x).V; }, spec, count);
}

// ---------------------------------------------------------------------------
// State checks

/// Five-point central second derivative.
template <class F>
double second_derivative(F& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

template <class F>
double first_derivative(F& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

namespace detail {

struct Derivs {
    double d1 = 0.0, d2 = 0.0;
};

/// Five-point derivatives of f at x. Within distance 1 of a finite endpoint e the stencil
/// runs in u = ln|x - e|, which keeps it inside the domain and resolves power-law behaviour.
template <class F>
Derivs derivatives(F& f, const Domain& d, double x) {
    double dist = std::numeric_limits<double>::infinity(), end = 0.0, dir = 1.0;
    if (d.finite_lo() && x - d.lo < dist) { dist = x - d.lo; end = d.lo; dir = 1.0; }
    if (d.finite_hi() && d.hi - x < dist) { dist = d.hi - x; end = d.hi; dir = -1.0; }
    if (dist >= 1.0) return {first_derivative(f, x, 1e-3), second_derivative(f, x, 1e-3)};
    const double u0 = std::log(dist);
    auto g = [&](double u) { return f(end + dir * std::exp(u)); };
    constexpr double H = 2e-3;
    const double gu = first_derivative(g, u0, H), guu = second_derivative(g, u0, H);
    return {dir * gu / dist, (guu - gu) / (dist * dist)};
}

inline double max_abs_on_grid(const EigenState& s, double a, double b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(s(a + (b - a) * double(i) / double(n - 1))));
    return m;
}

}  // namespace detail

/// max |-zeta'' + (V - E) zeta| / max |zeta| over a grid.
inline GridReport schrodinger_residual(const EigenState& s, double a, double b, std::size_t n) {
    const Domain dom = family_domain(s.family().id);
    const double scale = detail::max_abs_on_grid(s, a, b, n);
    const double E = s.energy();
    auto f = [&](double x) { return s(x); };
    return grid_report(
        [&](double x) {
            const double z = s(x);
            return (-detail::derivatives(f, dom, x).d2 + (partner_potentials(s.family(), x).V - E) * z) / scale;
        },
        a, b, n);
}

inline GridReport schrodinger_residual(const EigenState& s, std::size_t n = 2001) {
    const Window w = default_window(s.family().id);
    return schrodinger_residual(s, w.a, w.b, n);
}

/// Sign changes of zeta on a grid, ignoring values below 1e-8 of the peak.
inline int node_count(const EigenState& s, double a, double b, std::size_t n = 20001) {
    const double peak = detail::max_abs_on_grid(s, a, b, n);
    int nodes = 0, last = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = s(a + (b - a) * double(i) / double(n - 1));
        if (std::abs(v) < 1e-8 * peak) continue;
        const int sg = v > 0 ? 1 : -1;
        if (last != 0 && sg != last) ++nodes;
        last = sg;
    }
    return nodes;
}

/// Window holding the support of a state: delta-clipped finite ends, infinite ends cut
/// where |zeta| drops below `rel` of its peak.
inline Window state_window(const EigenState& s, double rel = 1e-10) {
    const Domain d = family_domain(s.family().id);
    Window w = default_window(s.family().id);
    auto amp = [&](double x) { return s(x); };
    const double mid = 0.5 * (w.a + w.b);
    if (!d.finite_lo()) w.a = std::min(w.a, detail::tail_cutoff(amp, mid, -1, rel));
    if (!d.finite_hi()) w.b = std::max(w.b, detail::tail_cutoff(amp, d.finite_lo() ? w.a : mid, +1, rel));
    return w;
}

inline int node_count(const EigenState& s) {
    const Window w = state_window(s);
    return node_count(s, w.a, w.b);
}

/// Largest |Im zeta| / max |zeta| on a grid (0 for real-path families).
inline double imaginary_residue(const EigenState& s, double a, double b, std::size_t n = 2001) {
    double im = 0.0, re = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex z = s.complex_value(a + (b - a) * double(i) / double(n - 1));
        im = std::max(im, std::abs(z.imag()));
        re = std::max(re, std::abs(z));
    }
    return re > 0 ? im / re : 0.0;
}

struct LadderReport {
    GridReport grid;
    int sign = 1;  ///< global sign relating A+ zeta_{k-1} to sqrt(E_k) zeta_k
};

/// A+ = -d/dx + k(x; fp) applied to zeta_{k-1} of the translated family, compared with
/// sign * sqrt(E_k) zeta_k(fp). Residual relative to sqrt(E_k) max |zeta_k|.
inline LadderReport ladder_check(const FamilyParams& fp, int k, double a, double b, std::size_t n) {
    if (k < 1) throw RangeError("ladder check needs k >= 1");
    const EigenState upper(fp, k);
    const FamilyParams down = translate_family(fp, 1);
    const EigenState lower(down, k - 1);
    const Domain dom = family_domain(fp.id);
    const double E = upper.energy();
    if (!(E > 0.0)) throw NumericalError("E_k must be positive for the ladder check");
    const double root = std::sqrt(E);
    const double scale = root * detail::max_abs_on_grid(upper, a, b, n);
    auto g = [&](double x) { return lower(x); };
    auto apply = [&](double x) {
        return -detail::derivatives(g, dom, x).d1 + superpotential(fp, x).value * lower(x);
    };
    LadderReport best;
    for (int sg : {1, -1}) {
        GridReport rep = grid_report([&](double x) { return (apply(x) - sg * root * upper(x)) / scale; }, a, b, n);
        if (sg == 1 || rep.max_residual < best.grid.max_residual) {
            best.grid = rep;
            best.sign = sg;
        }
    }
    return best;
}

inline LadderReport ladder_check(const FamilyParams& fp, int k, std::size_t n = 2001) {
    const Window w = default_window(fp.id);
    return ladder_check(fp, k, w.a, w.b, n);
}

/// Gram matrix of the first `count` states by quadrature.
inline std::vector<std::vector<double>> gram_matrix(const FamilyParams& fp, int count, double tol = 1e-11) {
    std::vector<EigenState> states;
    for (int k = 0; k < count; ++k) states.emplace_back(fp, k);
    std::vector<std::vector<double>> g(count, std::vector<double>(count, 0.0));
    for (int i = 0; i < count; ++i) {
        for (int j = i; j < count; ++j) g[i][j] = g[j][i] = overlap(states[i], states[j], tol);
    }
    return g;
}

}  // namespace sip

#endif  // SIP_VERIFY_HPP
