#ifndef SIP_SPECFUN_HPP
#define SIP_SPECFUN_HPP

// Classical orthogonal polynomials, terminating hypergeometric series and
// Gamma-function helpers. The polynomial evaluators are templates over the
// scalar type so the same code runs in real, complex and dual arithmetic.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "sip/dual.hpp"
#include "sip/error.hpp"

namespace sip {

using Complex = std::complex<double>;

/// Highest polynomial degree accepted by the evaluators.
inline constexpr int kMaxDegree = 64;

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }
template <class T> double magnitude(const Dual<T>& x) { return magnitude(x.v); }

inline void check_degree(int k) {
    if (k < 0) throw RangeError("polynomial degree must be non-negative");
    if (k > kMaxDegree) throw RangeError("polynomial degree exceeds cap of " + std::to_string(kMaxDegree));
}

// Generalized binomial C(top, j) for integer j >= 0.
template <class T>
T binomial(const T& top, int j) {
    T r(1.0);
    for (int i = 0; i < j; ++i) r = r * (top - T(double(i))) / T(double(i + 1));
    return r;
}

// Explicit finite sum; used when a recurrence denominator vanishes for
// special (a, b), where the polynomial itself stays well defined.
template <class T>
T jacobi_binomial_sum(int k, const T& a, const T& b, const T& z) {
    const T lo = (z - T(1.0)) / T(2.0);
    const T hi = (z + T(1.0)) / T(2.0);
    T sum(0.0);
    for (int m = 0; m <= k; ++m) {
        T term = binomial(T(double(k)) + a, k - m) * binomial(T(double(k)) + b, m);
        for (int i = 0; i < m; ++i) term = term * lo;
        for (int i = 0; i < k - m; ++i) term = term * hi;
        sum = sum + term;
    }
    return sum;
}

// Keeps a two-term recurrence inside double range: rescales both carried values and
// accumulates the natural log of the removed factor.
template <class T>
void rescale(T& p, T& p_prev, double* log_scale) {
    constexpr double big = 1e150;
    if (log_scale && magnitude(p) > big) {
        p = p / T(big);
        p_prev = p_prev / T(big);
        *log_scale += std::log(big);
    }
}

}  // namespace detail

/// Jacobi polynomial P_k^{(a,b)}(z) by the three-term recurrence. With `log_scale` the
/// result is P / exp(*log_scale), so far-tail arguments do not overflow.
template <class T>
T jacobi_p(int k, const T& a, const T& b, const T& z, double* log_scale = nullptr) {
    if (log_scale) *log_scale = 0.0;
    detail::check_degree(k);
    const T one(1.0), two(2.0);
    if (k == 0) return one;
    const T ab = a + b;
    T p_prev = one;
    T p = (a - b) / two + (ab + two) * z / two;
    for (int n = 2; n <= k; ++n) {
        const T nn{static_cast<double>(n)};
        const T c = two * nn + ab;
        const T denom = two * nn * (nn + ab) * (c - two);
        if (detail::magnitude(denom) < 1e-12 * (1.0 + detail::magnitude(c) * detail::magnitude(c))) {
            if (log_scale) *log_scale = 0.0;
            return detail::jacobi_binomial_sum(k, a, b, z);
        }
        const T next = ((c - one) * (c * (c - two) * z + a * a - b * b) * p
                        - two * (nn + a - one) * (nn + b - one) * c * p_prev) / denom;
        p_prev = p;
        p = next;
        detail::rescale(p, p_prev, log_scale);
    }
    return p;
}

/// Generalized Laguerre polynomial L_k^{(a)}(z).
template <class T>
T laguerre_l(int k, const T& a, const T& z, double* log_scale = nullptr) {
    if (log_scale) *log_scale = 0.0;
    detail::check_degree(k);
    const T one(1.0);
    if (k == 0) return one;
    T l_prev = one;
    T l = one + a - z;
    for (int n = 1; n < k; ++n) {
        const T nn{static_cast<double>(n)};
        const T next = ((T(2.0) * nn + one + a - z) * l - (nn + a) * l_prev) / (nn + one);
        l_prev = l;
        l = next;
        detail::rescale(l, l_prev, log_scale);
    }
    return l;
}

/// Physicists' Hermite polynomial H_k(z).
template <class T>
T hermite_h(int k, const T& z, double* log_scale = nullptr) {
    if (log_scale) *log_scale = 0.0;
    detail::check_degree(k);
    const T one(1.0), two(2.0);
    if (k == 0) return one;
    T h_prev = one;
    T h = two * z;
    for (int n = 1; n < k; ++n) {
        const T next = two * z * h - two * T(double(n)) * h_prev;
        h_prev = h;
        h = next;
        detail::rescale(h, h_prev, log_scale);
    }
    return h;
}

/// 1F1(upper; lower; z) for a non-positive integer `upper`; sums exactly |upper|+1 terms.
template <class T>
T hyp1f1_terminating(int upper, double lower, const T& z) {
    if (upper > 0) throw RangeError("1F1 upper parameter must be a non-positive integer");
    if (-upper > kMaxDegree) throw RangeError("1F1 series length exceeds degree cap");
    T sum(1.0), term(1.0);
    for (int j = 0; j < -upper; ++j) {
        const double den = lower + j;
        if (den == 0.0) throw NumericalError("1F1 lower parameter hits a pole inside the series");
        term = term * z * ((upper + j) / (den * (j + 1)));
        sum = sum + term;
    }
    return sum;
}

/// 2F1(upperA, upperB; lower; z), terminating because one upper parameter is a non-positive integer.
template <class T>
T hyp2f1_terminating(double upper_a, double upper_b, double lower, const T& z) {
    auto is_stop = [](double u) { return u <= 0.0 && u == std::floor(u); };
    int terms = -1;
    if (is_stop(upper_a)) terms = int(-upper_a);
    if (is_stop(upper_b) && (terms < 0 || int(-upper_b) < terms)) terms = int(-upper_b);
    if (terms < 0) throw RangeError("2F1 needs a non-positive integer upper parameter to terminate");
    if (terms > kMaxDegree) throw RangeError("2F1 series length exceeds degree cap");
    T sum(1.0), term(1.0);
    for (int j = 0; j < terms; ++j) {
        const double den = (lower + j) * (j + 1);
        if (lower + j == 0.0) throw NumericalError("2F1 lower parameter hits a pole inside the series");
        term = term * z * ((upper_a + j) * (upper_b + j) / den);
        sum = sum + term;
    }
    return sum;
}

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw NumericalError("log_gamma requires a positive argument");
    return std::lgamma(x);
}

/// ln |Gamma(x)| for any real x off the poles; `sign` receives the sign of Gamma(x).
inline double log_gamma_signed(double x, int& sign) {
    if (x <= 0.0 && x == std::floor(x)) throw NumericalError("Gamma pole at a non-positive integer");
    sign = (x > 0.0 || static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
    return std::lgamma(x);
}

/// ln |Gamma(z)| by the Lanczos approximation (g = 7, 9 terms), reflected for Re z < 1/2.
inline double log_gamma_abs_complex(Complex z) {
    constexpr double pi = std::numbers::pi;
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        throw NumericalError("Gamma pole at a non-positive integer");
    }
    if (z.real() < 0.5) {
        // |Gamma(z)| |Gamma(1-z)| = pi / |sin(pi z)|
        return std::log(pi) - std::log(std::abs(std::sin(pi * z))) - log_gamma_abs_complex(1.0 - z);
    }
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    Complex series = c[0];
    for (int i = 1; i < 9; ++i) series += c[i] / (z + double(i));
    const Complex t = z + 7.5;
    const Complex lg = 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(series);
    return lg.real();
}

/// |Gamma(z)|.
inline double gamma_abs_complex(Complex z) { return std::exp(log_gamma_abs_complex(z)); }

}  // namespace sip

#endif  // SIP_SPECFUN_HPP
