#pragma once
// Independent reference evaluations used by the unit and acceptance tests.
// These deliberately avoid the library's recurrences: every polynomial is a
// closed finite sum, every Pochhammer symbol is rebuilt from scratch.

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using Complex = std::complex<double>;

template <class T>
T pochhammer(const T& a, int n) {
    T r(1.0);
    for (int i = 0; i < n; ++i) r *= a + T(double(i));
    return r;
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// P_k^{(a,b)}(z) = (a+1)_k / k! * sum_m (-k)_m (k+a+b+1)_m / ((a+1)_m m!) ((1-z)/2)^m
template <class T>
T jacobi(int k, const T& a, const T& b, const T& z) {
    const T one(1.0);
    T sum(0.0);
    const T w = (one - z) / T(2.0);
    for (int m = 0; m <= k; ++m) {
        T term = pochhammer(T(double(-k)), m) * pochhammer(T(double(k)) + a + b + one, m) /
                 (pochhammer(a + one, m) * T(factorial(m)));
        T wp(1.0);
        for (int i = 0; i < m; ++i) wp *= w;
        sum += term * wp;
    }
    return pochhammer(a + one, k) / T(factorial(k)) * sum;
}

/// Magnitude of the largest term in the Jacobi sum above, a scale for cancellation.
template <class T>
double jacobi_scale(int k, const T& a, const T& b, const T& z) {
    const T one(1.0);
    const T w = (one - z) / T(2.0);
    double s = 0.0;
    for (int m = 0; m <= k; ++m) {
        T term = pochhammer(T(double(-k)), m) * pochhammer(T(double(k)) + a + b + one, m) /
                 (pochhammer(a + one, m) * T(factorial(m)));
        T wp(1.0);
        for (int i = 0; i < m; ++i) wp *= w;
        s += std::abs(pochhammer(a + one, k) / T(factorial(k)) * term * wp);
    }
    return s;
}

/// L_k^{(a)}(z) = sum_m (-1)^m binom(k+a, k-m) z^m / m!
inline double laguerre(int k, double a, double z, double* scale = nullptr) {
    double sum = 0.0, sc = 0.0;
    for (int m = 0; m <= k; ++m) {
        // binom(k+a, k-m) = (a+m+1)_{k-m} / (k-m)!
        const double bin = pochhammer(a + m + 1.0, k - m) / factorial(k - m);
        const double term = (m % 2 ? -1.0 : 1.0) * bin * std::pow(z, m) / factorial(m);
        sum += term;
        sc += std::abs(term);
    }
    if (scale) *scale = sc;
    return sum;
}

/// H_n(z) = n! sum_m (-1)^m (2z)^{n-2m} / (m! (n-2m)!)
inline double hermite(int n, double z, double* scale = nullptr) {
    double sum = 0.0, sc = 0.0;
    for (int m = 0; 2 * m <= n; ++m) {
        const double term = (m % 2 ? -1.0 : 1.0) * factorial(n) * std::pow(2.0 * z, n - 2 * m) /
                            (factorial(m) * factorial(n - 2 * m));
        sum += term;
        sc += std::abs(term);
    }
    if (scale) *scale = sc;
    return sum;
}

/// Terminating 1F1(-n; b; z), each term rebuilt from its Pochhammer definition.
inline double hyp1f1(int n, double b, double z) {
    long double sum = 0.0L;
    for (int j = 0; j <= n; ++j) {
        sum += static_cast<long double>(pochhammer(double(-n), j)) / pochhammer(b, j) *
               std::pow(static_cast<long double>(z), j) / factorial(j);
    }
    return static_cast<double>(sum);
}

/// Terminating 2F1(-n, b; c; z).
inline double hyp2f1(int n, double b, double c, double z) {
    long double sum = 0.0L;
    for (int j = 0; j <= n; ++j) {
        sum += static_cast<long double>(pochhammer(double(-n), j)) * pochhammer(b, j) / pochhammer(c, j) *
               std::pow(static_cast<long double>(z), j) / factorial(j);
    }
    return static_cast<double>(sum);
}

/// |Gamma(1/2 + i y)| = sqrt(pi / cosh(pi y)).
inline double gamma_abs_half_line(double y) { return std::sqrt(std::numbers::pi / std::cosh(std::numbers::pi * y)); }

}  // namespace oracle
